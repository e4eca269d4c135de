#pragma once

// Bundled fixtures and the self-test suites run by `lchsft selftest`.

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "lchsft/format.hpp"
#include "lchsft/oracle.hpp"
#include "lchsft/random.hpp"
#include "lchsft/report.hpp"

namespace lchsft {

struct Fixture {
    std::string name;
    Workspace ws;
    MonotonicityConstants mono;
    int lo = -1;
    int hi = 2;
    Poincare filling;
};

/// Reads manifest.json and every listed file; any defect is an InputError.
inline std::vector<Fixture> load_fixtures(const std::string& dir)
{
    namespace fs = std::filesystem;
    const fs::path manifest = fs::path(dir) / "manifest.json";
    std::ifstream in(manifest);
    if (!in) {
        throw InputError("fixtures", "missing " + manifest.string());
    }
    report::Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InputError("fixtures", "manifest is not valid JSON: " + std::string(e.what()));
    }
    std::vector<Fixture> out;
    try {
        for (const auto& f : j.at("fixtures")) {
            Fixture fx;
            fx.name = f.at("file").get<std::string>();
            fx.ws = load_workspace((fs::path(dir) / fx.name).string());
            auto c0 = parse_rational(f.at("c0").get<std::string>());
            auto c1 = parse_rational(f.at("c1").get<std::string>());
            if (!c0 || !c1 || *c1 <= 0) {
                throw InputError("fixtures", "bad monotonicity constants for " + fx.name);
            }
            fx.mono = {*c0, *c1};
            fx.lo = f.at("degrees").at(0).get<int>();
            fx.hi = f.at("degrees").at(1).get<int>();
            for (const auto& [k, v] : f.at("filling_homology").items()) {
                fx.filling[std::stoi(k)] = v.get<std::size_t>();
            }
            out.push_back(std::move(fx));
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError("fixtures", "malformed manifest: " + std::string(e.what()));
    }
    if (out.empty()) {
        throw InputError("fixtures", "manifest lists no fixtures");
    }
    return out;
}

/// Single-word corruptions of a differential: a summand w of dc replaced by
/// c w, and by w g for every generator g of nonzero degree.
inline std::vector<DgaPresentation> single_word_mutations(const DgaPresentation& dga)
{
    std::vector<DgaPresentation> out;
    for (std::size_t c = 0; c < dga.size(); ++c) {
        for (const auto& w : dga.d(c).words()) {
            std::vector<Word> replacements;
            Word front{c};
            front.insert(front.end(), w.begin(), w.end());
            replacements.push_back(front);
            for (std::size_t g = 0; g < dga.size(); ++g) {
                if (dga.generator(g).degree != 0) {
                    Word back = w;
                    back.push_back(g);
                    replacements.push_back(back);
                }
            }
            for (const auto& r : replacements) {
                auto d = dga.differential();
                d[c].add(w);
                d[c].add(r);
                out.push_back(dga.with_differential(std::move(d)));
            }
        }
    }
    return out;
}

struct SuiteResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::vector<std::string> notes;

    void check(bool ok, const std::string& what)
    {
        ++cases;
        if (!ok) {
            ++failures;
            if (notes.size() < 10) {
                notes.push_back(what);
            }
        }
    }
    bool pass() const { return failures == 0 && cases > 0; }
};

struct SelftestOptions {
    std::string fixture_dir;
    std::uint64_t seed = 20240601;
    std::size_t random_cases = 100;
};

namespace selftest {

inline std::optional<Augmentation> first_augmentation(const DgaPresentation& dga)
{
    auto augs = enumerate_augmentations(dga);
    if (augs.empty()) {
        return std::nullopt;
    }
    return augs.front();
}

inline SuiteResult dga_suite(const std::vector<Fixture>& fx)
{
    SuiteResult s{"dga axioms", 0, 0, {}};
    for (const auto& f : fx) {
        s.check(check_dga(f.ws.dga).pass(), f.name + ": check_dga");
        for (const auto& m : single_word_mutations(f.ws.dga)) {
            s.check(!check_dga(m).pass(), f.name + ": a mutation went unnoticed");
        }
    }
    return s;
}

inline SuiteResult augmentation_suite(const std::vector<Fixture>& fx)
{
    SuiteResult s{"augmentations vs exhaustive search", 0, 0, {}};
    for (const auto& f : fx) {
        for (bool graded : {true, false}) {
            std::vector<std::vector<bool>> pruned;
            for (const auto& e : enumerate_augmentations(f.ws.dga, graded)) {
                pruned.push_back(e.value);
            }
            s.check(pruned == oracle::augmentations(f.ws.dga, graded), f.name + ": augmentation sets differ");
        }
    }
    return s;
}

inline SuiteResult linearization_suite(const std::vector<Fixture>& fx)
{
    SuiteResult s{"linearized homology", 0, 0, {}};
    for (const auto& f : fx) {
        for (const auto& e : enumerate_augmentations(f.ws.dga)) {
            const auto lin = linearized_complex(f.ws.dga, e);
            s.check((lin.boundary() * lin.boundary()).is_zero(), f.name + ": linearized square");
            const Homology h(lin);
            s.check(h.ranks() == oracle::homology_ranks(lin), f.name + ": LCH differs from the oracle");
            s.check(h.ranks() == Homology(dualize(lin)).ranks(), f.name + ": LCH^d != LCH_d");
            const auto conj = conjugate(f.ws.dga, e);
            const Augmentation zero{std::vector<bool>(f.ws.dga.size(), false)};
            s.check(is_augmentation(f.ws.dga.with_differential(conj), zero),
                    f.name + ": conjugated differential has a constant term");
        }
    }
    return s;
}

inline SuiteResult theorem1_suite(const std::vector<Fixture>& fx)
{
    SuiteResult s{"SFT limit vs linearized cohomology", 0, 0, {}};
    for (const auto& f : fx) {
        for (const auto& e : enumerate_augmentations(f.ws.dga)) {
            const auto rep = theorem1_check(f.ws.dga, e, f.mono, f.lo, f.hi);
            s.check(rep.pass(), f.name + ": theorem check");
        }
    }
    return s;
}

inline SuiteResult spectral_suite(random::Rng& rng, std::size_t cases)
{
    SuiteResult s{"spectral sequences", 0, 0, {}};
    for (std::size_t k = 0; k < cases; ++k) {
        const auto fc = random::random_filtered_complex(rng, 2 + random::below(rng, 9), 1 + static_cast<int>(random::below(rng, 3)));
        const auto ss = spectral_sequence(fc, 4);
        bool pages_ok = true;
        for (const auto& p : ss.pages) {
            pages_ok = pages_ok && p.differential_squares_to_zero && p.next_page_is_homology;
        }
        s.check(pages_ok, "page differential check");
        s.check(ss.infinity == oracle::homology_ranks(fc.complex()), "E_inf differs from homology");
        const FilteredComplex flat(fc.complex(), std::vector<int>(fc.complex().size(), 1));
        const auto ss1 = spectral_sequence(flat, 1);
        Poincare e1;
        for (const auto& [key, dim] : ss1.pages.front().dims) {
            e1[key.second] += dim;
        }
        s.check(e1 == oracle::homology_ranks(fc.complex()), "one level: E_1 differs from homology");
    }
    return s;
}

inline SuiteResult homology_suite(random::Rng& rng, std::size_t cases)
{
    SuiteResult s{"homology and cones", 0, 0, {}};
    for (std::size_t k = 0; k < cases; ++k) {
        random::RandomComplexOptions opt;
        opt.cells = 1 + random::below(rng, 8);
        const auto c = random::random_complex(rng, opt);
        s.check(Homology(c).ranks() == oracle::homology_ranks(c), "homology differs from the oracle");
        random::RandomComplexOptions small;
        small.cells = 1 + random::below(rng, 3);
        small.lo = 0;
        small.hi = 1;
        const auto a = random::random_complex(rng, small);
        small.cells = 1 + random::below(rng, 3);
        const auto b = random::random_complex(rng, small);
        const auto f = random::random_chain_map(rng, a, b);
        const auto cone = mapping_cone(f);
        s.check(cone.sequence.les.exact(), "cone sequence not exact");
        s.check(Homology(cone.cone).ranks() == oracle::homology_ranks(cone.cone), "cone homology differs");
        const auto fstar = induced_map(Homology(a), Homology(b), f.matrix());
        s.check(cone.sequence.connecting == fstar, "cone connecting map is not f_*");
    }
    return s;
}

inline SuiteResult two_copy_suite(const std::vector<Fixture>& fx)
{
    SuiteResult s{"two-copy complex", 0, 0, {}};
    for (const auto& f : fx) {
        const auto e = first_augmentation(f.ws.dga);
        if (!e) {
            s.check(fillability_check(f.ws.dga, e, f.filling).verdict == "obstructed: no augmentation",
                    f.name + ": missing no-augmentation verdict");
            continue;
        }
        s.check(fillability_check(f.ws.dga, e, f.filling).verdict == "consistent", f.name + ": fillability");
        if (!f.ws.two_copy) {
            continue;
        }
        const auto tc = build_two_copy(f.ws, *e);
        const auto rep = conjecture_sequence(tc);
        s.check(rep.exact, f.name + ": two-copy sequence not exact");
        s.check(rep.acyclic && rep.delta_iso, f.name + ": not acyclic with connecting isomorphism");
        s.check(rep.delta_matches_block, f.name + ": connecting map differs from the off-diagonal block");
        s.check(Homology(tc.total).ranks() == oracle::homology_ranks(tc.total), f.name + ": oracle homology");
        s.check(implied_filling_ranks(rep, f.ws.dga.ambient_n()) == f.filling, f.name + ": implied filling ranks");
    }
    return s;
}

/// Psi Phi- + Phi+ = K d + d K around two handle slides, with every
/// homotopy slot affecting the identity.
struct SquareFixture {
    ChainMap phi_minus;
    ChainMap phi_plus;
    ChainMap psi;
    Gf2Matrix k;
    std::vector<std::pair<std::size_t, std::size_t>> slots;
};

inline std::optional<SquareFixture> random_square_fixture(random::Rng& rng)
{
    random::RandomComplexOptions opt;
    opt.cells = 2 + random::below(rng, 6);
    opt.lo = 0;
    opt.hi = 2;
    const auto a = random::random_complex(rng, opt);
    auto slide = [&](const ChainComplex& c) -> std::optional<HandleSlide> {
        for (int t = 0; t < 20; ++t) {
            const auto i = random::below(rng, c.size());
            const auto j = random::below(rng, c.size());
            if (i != j && c.cell(i).degree == c.cell(j).degree) {
                return handle_slide(c, c.cell(i).label, c.cell(j).label);
            }
        }
        return std::nullopt;
    };
    const auto s1 = slide(a);
    if (!s1) {
        return std::nullopt;
    }
    const auto s2 = slide(s1->after);
    if (!s2) {
        return std::nullopt;
    }
    const auto& c = s2->after;
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t col = 0; col < a.size(); ++col) {
        for (std::size_t r = 0; r < c.size(); ++r) {
            if (c.cell(r).degree == a.cell(col).degree - a.direction()) {
                slots.emplace_back(r, col);
            }
        }
    }
    for (auto [r, col] : slots) {
        Gf2Matrix e(c.size(), a.size());
        e.set(r, col, true);
        if ((e * a.boundary() + c.boundary() * e).is_zero()) {
            return std::nullopt;
        }
    }
    if (slots.empty()) {
        return std::nullopt;
    }
    Gf2Matrix k(c.size(), a.size());
    for (auto [r, col] : slots) {
        if (random::coin(rng)) {
            k.set(r, col, true);
        }
    }
    const auto psi_phi = s2->map.matrix() * s1->map.matrix();
    const auto plus = psi_phi + k * a.boundary() + c.boundary() * k;
    return SquareFixture{s1->map, ChainMap(a, c, plus), s2->map, k, slots};
}

inline SuiteResult moves_suite(random::Rng& rng, std::size_t cases)
{
    SuiteResult s{"moves", 0, 0, {}};
    std::size_t slides = 0;
    std::size_t cancels = 0;
    std::size_t squares = 0;
    for (std::size_t t = 0; slides < cases || cancels < cases || squares < cases; ++t) {
        if (t > 50 * cases) {
            s.check(false, "could not generate enough move instances");
            break;
        }
        random::RandomComplexOptions opt;
        opt.cells = 2 + random::below(rng, 7);
        const auto c = random::random_complex(rng, opt);
        const auto ranks = oracle::homology_ranks(c);
        const auto i = random::below(rng, c.size());
        const auto j = random::below(rng, c.size());
        if (slides < cases && i != j && c.cell(i).degree == c.cell(j).degree) {
            ++slides;
            const auto hs = handle_slide(c, c.cell(i).label, c.cell(j).label);
            s.check(verify_chain_map(hs.map).pass, "handle slide map is not a chain map");
            s.check(oracle::homology_ranks(hs.after) == ranks, "handle slide changed homology");
            const auto total = handle_slide_total_map(hs);
            s.check(hs.after.boundary() * total == total * c.boundary(), "g -> phi(g + dg) does not intertwine");
        }
        const auto entries = c.boundary().entries();
        if (cancels < cases && !entries.empty()) {
            ++cancels;
            const auto [y, x] = entries[random::below(rng, entries.size())];
            const auto bd = birth_death(c, c.cell(x).label, c.cell(y).label);
            s.check(verify_chain_map(bd.phi).pass && verify_chain_map(bd.psi).pass, "cancellation maps");
            s.check(oracle::homology_ranks(bd.reduced) == ranks, "cancellation changed homology");
            const Homology h(c);
            const Homology hr(bd.reduced);
            const auto a = induced_map(h, hr, bd.phi.matrix());
            const auto b = induced_map(hr, h, bd.psi.matrix());
            s.check(a.rank() == h.total_rank() && b.rank() == h.total_rank(), "cancellation maps not isomorphisms");
        }
        if (squares < cases) {
            if (auto sq = random_square_fixture(rng)) {
                ++squares;
                s.check(homotopy_square_check(sq->phi_minus, sq->phi_plus, sq->psi, sq->k).pass,
                        "homotopy square fails");
                bool caught = true;
                for (auto [r, col] : sq->slots) {
                    auto k = sq->k;
                    k.flip(r, col);
                    caught = caught && !homotopy_square_check(sq->phi_minus, sq->phi_plus, sq->psi, k).pass;
                }
                s.check(caught, "a homotopy mutation went unnoticed");
            }
        }
    }
    return s;
}

inline SuiteResult duality_suite(const std::vector<Fixture>& fx, random::Rng& rng, std::size_t cases)
{
    SuiteResult s{"duality", 0, 0, {}};
    for (const auto& f : fx) {
        if (!f.ws.duality) {
            continue;
        }
        const auto e = first_augmentation(f.ws.dga);
        if (!e) {
            s.check(false, f.name + ": duality fixture without augmentation");
            continue;
        }
        const auto ds = build_duality(f.ws, *e);
        s.check(oracle::homology_ranks(ds.total).empty(), f.name + ": splitting not acyclic");
        const auto seq = duality_sequence(ds);
        s.check(seq.exact(), f.name + ": duality sequence not exact");
        s.check(seq.pairing.pass && seq.pairing.ones > 0, f.name + ": pairing");
        s.check(h_maps_iso_check(ds).pass(), f.name + ": H maps");
        if (f.ws.two_copy) {
            s.check(corollary_diagram_check(ds, build_two_copy(f.ws, *e)).pass(), f.name + ": diagram squares");
        }
    }
    for (std::size_t k = 0; k < cases; ++k) {
        const auto ds = random::random_splitting(rng, 1 + random::below(rng, 4));
        const auto seq = duality_sequence(ds);
        s.check(seq.exact(), "random splitting: sequence not exact");
        s.check(seq.pairing.pass, "random splitting: pairing");
        s.check(h_maps_iso_check(ds).pass(), "random splitting: H maps");
    }
    return s;
}

}  // namespace selftest

struct SelftestReport {
    std::uint64_t seed = 0;
    std::vector<SuiteResult> suites;
    bool pass() const
    {
        for (const auto& s : suites) {
            if (!s.pass()) {
                return false;
            }
        }
        return !suites.empty();
    }
};

inline SelftestReport run_selftest(const SelftestOptions& opt)
{
    const auto fx = load_fixtures(opt.fixture_dir);
    SelftestReport rep;
    rep.seed = opt.seed;
    random::Rng rng(opt.seed);
    rep.suites.push_back(selftest::dga_suite(fx));
    rep.suites.push_back(selftest::augmentation_suite(fx));
    rep.suites.push_back(selftest::linearization_suite(fx));
    rep.suites.push_back(selftest::theorem1_suite(fx));
    rep.suites.push_back(selftest::homology_suite(rng, opt.random_cases));
    rep.suites.push_back(selftest::spectral_suite(rng, opt.random_cases));
    rep.suites.push_back(selftest::two_copy_suite(fx));
    rep.suites.push_back(selftest::moves_suite(rng, opt.random_cases));
    rep.suites.push_back(selftest::duality_suite(fx, rng, opt.random_cases));
    return rep;
}

inline report::Json selftest_json(const SelftestReport& rep)
{
    report::Json j;
    j["seed"] = rep.seed;
    report::Json suites = report::Json::array();
    for (const auto& s : rep.suites) {
        suites.push_back({{"suite", s.name},
                          {"cases", s.cases},
                          {"failures", s.failures},
                          {"verdict", s.pass() ? "pass" : "fail"},
                          {"notes", s.notes}});
    }
    j["suites"] = suites;
    j["verdict"] = rep.pass() ? "pass" : "fail";
    return j;
}

}  // namespace lchsft
