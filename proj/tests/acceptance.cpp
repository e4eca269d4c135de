// One line per acceptance criterion; exit status 1 if any criterion fails.

#include <cstdio>
#include <functional>
#include <iostream>
#include <string>

#include "lchsft/oracle.hpp"
#include "lchsft/selftest.hpp"

using namespace lchsft;

namespace {

struct Tally {
    std::size_t checks = 0;
    std::string first_failure;
    void operator()(bool ok, const std::string& what)
    {
        ++checks;
        if (!ok && first_failure.empty()) {
            first_failure = what;
        }
    }
    bool pass() const { return checks > 0 && first_failure.empty(); }
};

const std::vector<Fixture>& fixtures()
{
    static const auto fx = load_fixtures(LCHSFT_FIXTURE_DIR);
    return fx;
}

const Fixture& fixture(const std::string& name)
{
    for (const auto& f : fixtures()) {
        if (f.name == name) {
            return f;
        }
    }
    throw InputError("fixtures", "missing fixture " + name);
}

void dga_axioms(Tally& t)
{
    for (const auto& f : fixtures()) {
        const auto rep = check_dga(f.ws.dga);
        for (const char* check : {"square", "degree", "action"}) {
            t(!rep.failed(check), f.name + ": " + check);
        }
        for (const auto& m : single_word_mutations(f.ws.dga)) {
            t(!check_dga(m).pass(), f.name + ": mutation not caught");
        }
    }
}

void augmentation_oracle(Tally& t)
{
    bool saw_empty = false;
    for (const auto& f : fixtures()) {
        if (augmentation_variables(f.ws.dga).size() > 12) {
            continue;
        }
        std::vector<std::vector<bool>> pruned;
        for (const auto& e : enumerate_augmentations(f.ws.dga)) {
            pruned.push_back(e.value);
        }
        t(pruned == oracle::augmentations(f.ws.dga), f.name + ": sets differ");
        saw_empty = saw_empty || pruned.empty();
    }
    t(saw_empty, "no zero-augmentation fixture");
    t(enumerate_augmentations(fixture("stabilized.lch").ws.dga).empty(), "stabilized fixture has augmentations");
}

void linearization(Tally& t)
{
    for (const auto& f : fixtures()) {
        for (const auto& e : enumerate_augmentations(f.ws.dga)) {
            const auto lin = linearized_complex(f.ws.dga, e);
            t((lin.boundary() * lin.boundary()).is_zero(), f.name + ": d^2");
            const Homology h(lin);
            t(h.ranks() == oracle::homology_ranks(lin), f.name + ": oracle ranks");
            const Homology co(dualize(lin));
            for (int d : lin.degrees()) {
                t(h.rank(d) == co.rank(d), f.name + ": LCH^d != LCH_d");
            }
        }
    }
}

void theorem(Tally& t)
{
    for (const auto& f : fixtures()) {
        for (const auto& e : enumerate_augmentations(f.ws.dga)) {
            const auto rep = theorem1_check(f.ws.dga, e, f.mono, f.lo, f.hi);
            t(rep.intertwines, f.name + ": chord to co-vector map is not a chain map");
            t(rep.ranks_match, f.name + ": E_1 ranks differ from LCH^*");
            t(rep.certified, f.name + ": tower not stable above the threshold");
            t(static_cast<int>(rep.ranks.size()) == f.hi - f.lo + 1, f.name + ": degree window");
        }
    }
}

void spectral(Tally& t)
{
    random::Rng rng(SelftestOptions{}.seed);
    for (int k = 0; k < 120; ++k) {
        const auto fc = random::random_filtered_complex(rng, 1 + random::below(rng, 10),
                                                        1 + static_cast<int>(random::below(rng, 3)));
        const auto truth = oracle::homology_ranks(fc.complex());
        t(spectral_sequence(fc, 4).infinity == truth, "E_inf differs from homology");
        const auto one = spectral_sequence(FilteredComplex(fc.complex(), std::vector<int>(fc.complex().size(), 1)), 1);
        Poincare e1;
        for (const auto& [key, dim] : one.pages.front().dims) {
            e1[key.second] += dim;
        }
        t(e1 == truth, "one level: E_1 differs from homology");
    }
}

void two_copy(Tally& t)
{
    bool assembled = false;
    for (const auto& f : fixtures()) {
        if (!f.ws.two_copy) {
            continue;
        }
        const auto e = enumerate_augmentations(f.ws.dga).front();
        const auto tc = build_two_copy(f.ws, e);
        assembled = true;
        const auto& d = tc.total.boundary();
        const auto inf = detail::concat(tc.long_cells(), tc.short_cells());
        const auto zero = tc.intersection_cells();
        const auto dinf = d.submatrix(inf, inf);
        const auto d0 = d.submatrix(zero, zero);
        const auto rho = d.submatrix(inf, zero);
        t((dinf * dinf).is_zero(), f.name + ": d_infty^2");
        t((d0 * d0).is_zero(), f.name + ": d_0^2");
        t((dinf * rho + rho * d0).is_zero(), f.name + ": d_infty rho + rho d_0");
    }
    t(assembled, "no two-copy fixture");

    const auto& disk = fixture("unknot_disk.lch");
    const auto e = enumerate_augmentations(disk.ws.dga).front();
    const auto rep = conjecture_sequence(build_two_copy(disk.ws, e));
    t(rep.exact && rep.acyclic, "unknot with disk: sequence not exact or complex not acyclic");
    t(rep.delta_iso, "unknot with disk: connecting map not an isomorphism");
    t(fillability_check(disk.ws.dga, e, disk.filling).verdict == "consistent", "unknot with disk: verdict");

    const auto& unknot = fixture("unknot.lch");
    const auto genus = fillability_check(unknot.ws.dga, enumerate_augmentations(unknot.ws.dga).front(),
                                         {{0, 1}, {1, 2}});
    t(genus.verdict == "obstructed", "genus mismatch not obstructed");
    const auto none = fillability_check(fixture("stabilized.lch").ws.dga, std::nullopt, {{0, 1}});
    t(none.verdict.rfind("obstructed", 0) == 0, "no-augmentation case not obstructed");
}

void moves(Tally& t)
{
    random::Rng rng(SelftestOptions{}.seed + 1);
    std::size_t slides = 0;
    std::size_t cancels = 0;
    while (slides < 100 || cancels < 100) {
        random::RandomComplexOptions opt;
        opt.cells = 2 + random::below(rng, 7);
        const auto c = random::random_complex(rng, opt);
        const auto ranks = oracle::homology_ranks(c);
        const auto i = random::below(rng, c.size());
        const auto j = random::below(rng, c.size());
        if (i != j && c.cell(i).degree == c.cell(j).degree) {
            ++slides;
            const auto hs = handle_slide(c, c.cell(i).label, c.cell(j).label);
            t(verify_chain_map(hs.map).pass, "handle slide map");
            t(oracle::homology_ranks(hs.after) == ranks, "handle slide ranks");
        }
        const auto entries = c.boundary().entries();
        if (!entries.empty()) {
            ++cancels;
            const auto [y, x] = entries[random::below(rng, entries.size())];
            const auto bd = birth_death(c, c.cell(x).label, c.cell(y).label);
            t(verify_chain_map(bd.phi).pass && verify_chain_map(bd.psi).pass, "cancellation maps");
            t(oracle::homology_ranks(bd.reduced) == ranks, "cancellation ranks");
        }
    }
    std::size_t squares = 0;
    while (squares < 100) {
        const auto sq = selftest::random_square_fixture(rng);
        if (!sq) {
            continue;
        }
        ++squares;
        t(homotopy_square_check(sq->phi_minus, sq->phi_plus, sq->psi, sq->k).pass, "constructed square fails");
        for (auto [r, c] : sq->slots) {
            auto k = sq->k;
            k.flip(r, c);
            t(!homotopy_square_check(sq->phi_minus, sq->phi_plus, sq->psi, k).pass, "K mutation not caught");
        }
    }
}

void duality(Tally& t)
{
    const auto& f = fixture("unknot_disk.lch");
    const auto e = enumerate_augmentations(f.ws.dga).front();
    const auto ds = build_duality(f.ws, e);
    t(oracle::homology_ranks(ds.total).empty(), "splitting not acyclic");
    t(ds.p.boundary() == ds.pairing() * ds.q.boundary().transpose() * ds.pairing().transpose(),
      "P block is not the transpose of Q");
    const auto seq = duality_sequence(ds);
    t(seq.exact(), "duality sequence not exact");
    t(seq.pairing.pass && seq.pairing.ones > 0, "pairing");
    const auto diagram = corollary_diagram_check(ds, build_two_copy(f.ws, e));
    for (const auto& s : diagram.squares) {
        t(s.homology, "square: " + s.name);
    }
}

std::string run_selftest_cli()
{
    const std::string cmd = std::string("\"") + LCHSFT_CLI + "\" selftest --fixtures \"" + LCHSFT_FIXTURE_DIR + "\"";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        return {};
    }
    std::string out;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) {
        out.append(buf, n);
    }
    const int status = pclose(pipe);
    return status == 0 ? out : std::string();
}

void determinism(Tally& t)
{
    const auto a = run_selftest_cli();
    const auto b = run_selftest_cli();
    t(!a.empty(), "selftest did not pass");
    t(a == b, "reports differ");
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<void(Tally&)>>> criteria{
        {"DGA axioms and mutation detection", dga_axioms},
        {"augmentations equal exhaustive enumeration", augmentation_oracle},
        {"linearization: d^2 = 0, oracle ranks, LCH^d = LCH_d", linearization},
        {"SFT tower limit equals linearized cohomology", theorem},
        {"spectral sequences on random filtered complexes", spectral},
        {"two-copy identities and fillability verdicts", two_copy},
        {"moves preserve homology; homotopy squares and K mutations", moves},
        {"duality splitting, sequence, pairing and diagram", duality},
        {"selftest reports are byte-identical", determinism},
    };
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Tally t;
        try {
            criteria[i].second(t);
        } catch (const std::exception& e) {
            t(false, std::string("exception: ") + e.what());
        }
        all = all && t.pass();
        std::cout << "criterion " << i + 1 << ": " << (t.pass() ? "PASS" : "FAIL") << "  " << criteria[i].first
                  << " (" << t.checks << " checks)";
        if (!t.pass()) {
            std::cout << "  first failure: " << t.first_failure;
        }
        std::cout << "\n";
    }
    return all ? 0 : 1;
}
