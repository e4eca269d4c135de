#include <catch_amalgamated.hpp>

#include "lchsft/format.hpp"
#include "lchsft/oracle.hpp"

using namespace lchsft;

namespace {

Workspace fixture(const std::string& name) { return load_workspace(std::string(LCHSFT_FIXTURE_DIR) + "/" + name); }

}  // namespace

TEST_CASE("SFT differential of the unknot vanishes")
{
    const auto ws = fixture("unknot.lch");
    const auto v = build_sft(ws.dga, enumerate_augmentations(ws.dga).front());
    CHECK(v.complex.boundary().is_zero());
    CHECK(Homology(v.complex).ranks() == std::map<int, std::size_t>{{1, 1}});
}

TEST_CASE("a single linear term transposes")
{
    const auto dga = parse_workspace("ambient n 2\ngen c deg 1 action 2\ngen b deg 0 action 1\nd c = 1 + b\n").dga;
    const Augmentation e{{false, true}};
    const auto v = build_sft(dga, e);
    // d^f b = c and d^f c = 0
    CHECK(v.complex.boundary().get(0, 1));
    CHECK(v.complex.boundary().nnz() == 1);
}

TEST_CASE("SFT cohomology equals the cohomology of the dual linearized complex")
{
    for (const char* name : {"unknot.lch", "trefoil.lch", "unknot_disk.lch"}) {
        const auto ws = fixture(name);
        for (const auto& e : enumerate_augmentations(ws.dga)) {
            const auto v = build_sft(ws.dga, e);
            CHECK(oracle::homology_ranks(v.complex) == oracle::homology_ranks(dualize(linearized_complex(ws.dga, e))));
        }
    }
}

TEST_CASE("action truncation")
{
    const auto ws = fixture("trefoil.lch");
    const auto e = enumerate_augmentations(ws.dga).front();
    const auto v = build_sft(ws.dga, e);
    CHECK(truncate(v, Rational(1, 2)).complex.size() == 0);
    CHECK(truncate(v, Rational(100)).complex == v.complex);

    // keep only the degree-0 chords, deleting rows and columns by hand
    const auto t = truncate(v, Rational(2));
    std::vector<int> degrees;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < v.complex.size(); ++i) {
        if (v.action[i] < 2) {
            keep.push_back(i);
            degrees.push_back(v.complex.cell(i).degree);
        }
    }
    Gf2Matrix m(keep.size(), keep.size());
    for (std::size_t r = 0; r < keep.size(); ++r) {
        for (std::size_t c = 0; c < keep.size(); ++c) {
            m.set(r, c, v.complex.boundary().get(keep[r], keep[c]));
        }
    }
    CHECK(Homology(t.complex).ranks() == oracle::homology_ranks(+1, degrees, m));
    CHECK_THROWS_AS(truncate(v, Rational(0)), InputError);
}

TEST_CASE("truncation towers are inverse systems of chain maps")
{
    const auto ws = fixture("trefoil.lch");
    const auto v = build_sft(ws.dga, enumerate_augmentations(ws.dga).front());
    const auto tower = build_tower(v, {Rational(5), Rational(1, 2), Rational(2), Rational(2)});
    CHECK(tower.thresholds == std::vector<Rational>{Rational(1, 2), Rational(2), Rational(5)});
    CHECK(tower.chain_maps);
    CHECK(tower.functorial);
    CHECK(tower.projections.size() == 2);
}

TEST_CASE("unknot E_1 rank stabilizes above (r + 1 - C0) / C1")
{
    const auto ws = fixture("unknot.lch");
    const auto e = enumerate_augmentations(ws.dga).front();
    const auto v = build_sft(ws.dga, e);
    const auto r = e1_limit(ws.dga, v, {Rational(0), Rational(1)}, 1, 1);
    REQUIRE(r.degrees.size() == 1);
    CHECK(r.degrees[0].rank == 1);
    CHECK(r.degrees[0].threshold == Rational(2));
    CHECK(r.degrees[0].certified);
    const auto ranks = tower_ranks(v, {Rational(1, 4), Rational(3)});
    CHECK(ranks.at(Rational(1, 4)).empty());
    CHECK(ranks.at(Rational(3)) == Poincare{{1, 1}});
}

TEST_CASE("the theorem check passes on every bundled DGA with its constants")
{
    struct Case {
        const char* file;
        MonotonicityConstants mono;
    };
    for (const auto& c : {Case{"unknot.lch", {0, 1}}, Case{"trefoil.lch", {-1, Rational(1, 10)}},
                          Case{"unknot_disk.lch", {0, 1}}}) {
        const auto ws = fixture(c.file);
        for (const auto& e : enumerate_augmentations(ws.dga)) {
            const auto rep = theorem1_check(ws.dga, e, c.mono, -1, 2);
            CHECK(rep.intertwines);
            CHECK(rep.ranks_match);
            CHECK(rep.certified);
        }
    }
}

TEST_CASE("monotonicity failures are refused")
{
    const auto ws = fixture("trefoil.lch");
    const auto e = enumerate_augmentations(ws.dga).front();
    const auto v = build_sft(ws.dga, e);
    try {
        e1_limit(ws.dga, v, {0, 1}, -1, 2);
        FAIL("monotonicity violation accepted");
    } catch (const MonotonicityRefusal& r) {
        CHECK(r.chords() == std::vector<std::string>{"b1", "b2", "b3", "a1", "a2"});
    }
    CHECK_THROWS_AS(e1_limit(ws.dga, v, {0, 0}, -1, 2), InputError);
}

TEST_CASE("a non-augmentation propagates the conjugation error")
{
    const auto ws = fixture("trefoil.lch");
    const Augmentation zero{std::vector<bool>(ws.dga.size(), false)};
    CHECK_THROWS_AS(theorem1_check(ws.dga, zero, {-1, Rational(1, 10)}, -1, 2), MathError);
}
