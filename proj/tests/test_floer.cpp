#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "lchsft/oracle.hpp"
#include "lchsft/selftest.hpp"

using namespace lchsft;

namespace {

std::string fixture_text(const std::string& name)
{
    std::ifstream in(std::string(LCHSFT_FIXTURE_DIR) + "/" + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string replace(std::string s, const std::string& from, const std::string& to)
{
    const auto at = s.find(from);
    REQUIRE(at != std::string::npos);
    return s.replace(at, from.size(), to);
}

TwoCopyComplex two_copy_of(const std::string& text)
{
    const auto ws = parse_workspace(text);
    return build_two_copy(ws, enumerate_augmentations(ws.dga).front());
}

ChainComplex cochain(std::vector<Cell> cells, const std::vector<std::pair<std::size_t, std::size_t>>& entries)
{
    const auto n = cells.size();
    return ChainComplex(+1, std::move(cells), Gf2Matrix::from_entries(n, n, entries));
}

}  // namespace

TEST_CASE("the unknot with its disk assembles into an acyclic complex")
{
    const auto tc = two_copy_of(fixture_text("unknot_disk.lch"));
    CHECK(tc.n_long == 1);
    CHECK(tc.n_short == 2);
    CHECK(tc.n_int == 1);
    CHECK(oracle::homology_ranks(tc.total).empty());
    const auto rep = conjecture_sequence(tc);
    CHECK(rep.exact);
    CHECK(rep.acyclic);
    CHECK(rep.delta_iso);
    CHECK(rep.delta_matches_block);
    CHECK(rep.sub_ranks == Poincare{{1, 1}});
    CHECK(rep.quotient_ranks == Poincare{{0, 1}});
    CHECK(implied_filling_ranks(rep, 2) == Poincare{{0, 1}});
    CHECK_FALSE(tc.assumptions.empty());
}

TEST_CASE("zero glue gives a block diagonal complex")
{
    SftComplex longs{cochain({{"a", 1}}, {}), {Rational(1)}};
    MorseData lambda{cochain({{"m0", 0}, {"m1", 1}}, {}), {std::nullopt, std::nullopt}};
    MorseData filling{cochain({{"x", 0}}, {}), {std::nullopt}};
    const auto tc = assemble_two_copy(longs, lambda, filling, Gf2Matrix(1, 2), Gf2Matrix(3, 1));
    CHECK(tc.total.boundary().is_zero());
    const auto rep = conjecture_sequence(tc);
    CHECK(rep.exact);
    CHECK(rep.sequence.connecting.is_zero());
    CHECK(Homology(tc.total).total_rank() == 4);
}

TEST_CASE("two-copy block identities are enforced")
{
    SftComplex longs{cochain({{"a", 1}}, {}), {Rational(1)}};
    MorseData lambda{cochain({{"m0", 0}, {"m1", 1}}, {}), {std::nullopt, std::nullopt}};
    MorseData filling{cochain({{"x", 0}}, {}), {std::nullopt}};

    SECTION("mixed identity")
    {
        // d m0 = m1 forces the intersection point hitting m0 to reach m1 as well
        MorseData circle{cochain({{"m0", 0}, {"m1", 1}}, {{1, 0}}), {std::nullopt, std::nullopt}};
        MorseData point{cochain({{"x", -1}}, {}), {std::nullopt}};
        Gf2Matrix rho(3, 1);
        rho.set(1, 0, true);
        try {
            assemble_two_copy(longs, circle, point, Gf2Matrix(1, 2), rho);
            FAIL("accepted a broken mixed identity");
        } catch (const ComplexError& e) {
            CHECK(e.code() == "mixed_identity");
        }
    }
    SECTION("shapes")
    {
        CHECK_THROWS_AS(assemble_two_copy(longs, lambda, filling, Gf2Matrix(2, 2), Gf2Matrix(3, 1)), ComplexError);
        CHECK_THROWS_AS(assemble_two_copy(longs, lambda, filling, Gf2Matrix(1, 2), Gf2Matrix(2, 1)), ComplexError);
    }
    SECTION("direction")
    {
        MorseData down{ChainComplex(-1, {{"x", 0}}, Gf2Matrix(1, 1)), {std::nullopt}};
        CHECK_THROWS_AS(assemble_two_copy(longs, lambda, down, Gf2Matrix(1, 2), Gf2Matrix(3, 1)), ComplexError);
    }
}

TEST_CASE("corrupting the intersection-point data is detected")
{
    const auto text = fixture_text("unknot_disk.lch");
    SECTION("dropping the entry leaves homology")
    {
        const auto tc = two_copy_of(replace(text, "row x = m1", "row x = 0"));
        CHECK_FALSE(Homology(tc.total).acyclic());
        CHECK_FALSE(conjecture_sequence(tc).delta_iso);
    }
    SECTION("an entry of the wrong degree is rejected")
    {
        CHECK_THROWS_AS(two_copy_of(replace(text, "row x = m1", "row x = m1 + m0")), InputError);
    }
}

TEST_CASE("fillability verdicts")
{
    const auto unknot = load_workspace(std::string(LCHSFT_FIXTURE_DIR) + "/unknot.lch");
    const auto e = enumerate_augmentations(unknot.dga).front();
    CHECK(fillability_check(unknot.dga, e, {{0, 1}}).verdict == "consistent");
    const auto genus_one = fillability_check(unknot.dga, e, {{0, 1}, {1, 2}});
    CHECK(genus_one.verdict == "obstructed");
    CHECK(genus_one.degree == 1);

    const auto trefoil = load_workspace(std::string(LCHSFT_FIXTURE_DIR) + "/trefoil.lch");
    for (const auto& t : enumerate_augmentations(trefoil.dga)) {
        CHECK(fillability_check(trefoil.dga, t, {{0, 1}, {1, 2}}).verdict == "consistent");
    }

    const auto stabilized = load_workspace(std::string(LCHSFT_FIXTURE_DIR) + "/stabilized.lch");
    CHECK(fillability_check(stabilized.dga, std::nullopt, {{0, 1}}).verdict == "obstructed: no augmentation");
}

TEST_CASE("handle slides")
{
    SECTION("an isolated slide is a basis change")
    {
        const auto c = cochain({{"x", 0}, {"y", 0}, {"z", 1}}, {{2, 0}});
        const auto hs = handle_slide(c, "x", "y");
        CHECK(verify_chain_map(hs.map).pass);
        CHECK(oracle::homology_ranks(hs.after) == oracle::homology_ranks(c));
    }
    SECTION("only intersection points slide in a two-copy complex")
    {
        const auto tc = two_copy_of(fixture_text("unknot_disk.lch"));
        CHECK_THROWS_AS(handle_slide_move(tc, "m0", "x"), InputError);
    }
    SECTION("degree mismatch")
    {
        const auto c = cochain({{"x", 0}, {"z", 1}}, {{1, 0}});
        CHECK_THROWS_AS(handle_slide(c, "x", "z"), InputError);
    }
}

TEST_CASE("birth and death")
{
    SECTION("cancelling pair with v = 0")
    {
        const auto c = cochain({{"x", 0}, {"y", 1}, {"w", 1}}, {{1, 0}});
        const auto bd = birth_death(c, "x", "y");
        CHECK(bd.reduced.size() == 1);
        CHECK(oracle::homology_ranks(bd.reduced) == oracle::homology_ranks(c));
    }
    SECTION("dx = y + v with maps checked by matrix products")
    {
        // dx = y + v, du = y, so the reduced complex has du = v
        const auto c = cochain({{"x", 0}, {"u", 0}, {"y", 1}, {"v", 1}}, {{2, 0}, {3, 0}, {2, 1}});
        const auto bd = birth_death(c, "x", "y");
        CHECK(verify_chain_map(bd.phi).pass);
        CHECK(verify_chain_map(bd.psi).pass);
        CHECK(bd.reduced.boundary().get(bd.reduced.require_index("v"), bd.reduced.require_index("u")));
        CHECK(oracle::homology_ranks(bd.reduced) == oracle::homology_ranks(c));
        // psi(u) = u + y*(du) x = u + x
        const auto col = bd.psi.matrix().column(bd.reduced.require_index("u"));
        CHECK(col.test(c.require_index("x")));
        CHECK(col.test(c.require_index("u")));
    }
    SECTION("y must appear in dx")
    {
        const auto c = cochain({{"x", 0}, {"y", 1}}, {});
        CHECK_THROWS_AS(birth_death(c, "x", "y"), InputError);
    }
}

TEST_CASE("moves preserve homology on random complexes")
{
    random::Rng rng(2024);
    std::size_t slides = 0;
    std::size_t cancels = 0;
    while (slides < 150 || cancels < 150) {
        random::RandomComplexOptions opt;
        opt.cells = 2 + random::below(rng, 7);
        opt.direction = random::coin(rng) ? 1 : -1;
        const auto c = random::random_complex(rng, opt);
        const auto ranks = oracle::homology_ranks(c);
        const auto i = random::below(rng, c.size());
        const auto j = random::below(rng, c.size());
        if (i != j && c.cell(i).degree == c.cell(j).degree) {
            ++slides;
            const auto hs = handle_slide(c, c.cell(i).label, c.cell(j).label);
            CHECK(verify_chain_map(hs.map).pass);
            CHECK(oracle::homology_ranks(hs.after) == ranks);
        }
        const auto entries = c.boundary().entries();
        if (!entries.empty()) {
            ++cancels;
            const auto [y, x] = entries[random::below(rng, entries.size())];
            const auto bd = birth_death(c, c.cell(x).label, c.cell(y).label);
            CHECK(verify_chain_map(bd.phi).pass);
            CHECK(verify_chain_map(bd.psi).pass);
            CHECK(oracle::homology_ranks(bd.reduced) == ranks);
        }
    }
}

TEST_CASE("join maps must fix intersection points")
{
    const auto tc = two_copy_of(fixture_text("unknot_disk.lch"));
    CHECK(join_map_check(ChainMap::identity(tc.total), tc, tc).pass);
    auto m = Gf2Matrix::identity(tc.total.size());
    const auto x = tc.total.require_index("x");
    m.set(tc.total.require_index("m0"), x, true);
    try {
        join_map_check(ChainMap(tc.total, tc.total, m), tc, tc);
        FAIL("accepted a map moving an intersection point");
    } catch (const InputError& e) {
        CHECK(e.code() == "join-moves-intersection");
    }
}

TEST_CASE("homotopy squares")
{
    SECTION("trivial square")
    {
        const auto c = cochain({{"x", 0}, {"y", 1}}, {{1, 0}});
        const auto id = ChainMap::identity(c);
        CHECK(homotopy_square_check(id, id, id, Gf2Matrix(2, 2)).pass);
    }
    SECTION("constructed squares pass and every single-entry mutation of K fails")
    {
        random::Rng rng(77);
        std::size_t built = 0;
        while (built < 100) {
            const auto sq = selftest::random_square_fixture(rng);
            if (!sq) {
                continue;
            }
            ++built;
            REQUIRE(homotopy_square_check(sq->phi_minus, sq->phi_plus, sq->psi, sq->k).pass);
            for (auto [r, c] : sq->slots) {
                auto k = sq->k;
                k.flip(r, c);
                CHECK_FALSE(homotopy_square_check(sq->phi_minus, sq->phi_plus, sq->psi, k).pass);
            }
        }
    }
    SECTION("homotopies of the wrong degree are rejected")
    {
        const auto c = cochain({{"x", 0}, {"y", 1}}, {{1, 0}});
        const auto id = ChainMap::identity(c);
        Gf2Matrix k(2, 2);
        k.set(1, 0, true);
        CHECK_THROWS_AS(homotopy_square_check(id, id, id, k), InputError);
    }
}
