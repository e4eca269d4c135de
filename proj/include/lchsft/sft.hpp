#pragma once

// Simple SFT complex of a filling: the chords with the cohomological
// differential d^f, its action truncations, the inverse system of
// quotients and the degreewise stabilization of its cohomology.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lchsft/augmentation.hpp"

namespace lchsft {

struct MonotonicityConstants {
    Rational c0{0};
    Rational c1{1};
};

struct SftComplex {
    ChainComplex complex;  ///< direction +1, labels = chord names
    std::vector<Rational> action;
};

/// d^f(b) = sum of chords c whose linearized differential contains b.
/// Assembled chord by chord from the conjugated differential rather than by
/// transposing the linearized complex, so the comparison in theorem1_check
/// is between independently built matrices.
inline SftComplex build_sft(const DgaPresentation& dga, const Augmentation& e)
{
    const auto conj = conjugate(dga, e);
    std::vector<Cell> cells;
    std::vector<Rational> action;
    for (const auto& g : dga.generators()) {
        cells.push_back({g.name, g.degree});
        action.push_back(g.action);
    }
    Gf2Matrix df(dga.size(), dga.size());
    for (std::size_t c = 0; c < dga.size(); ++c) {
        if (conj[c].has_constant()) {
            throw MathError("not-augmentation", "constant term in conjugated differential of " + dga.generator(c).name);
        }
        for (const auto& w : conj[c].words()) {
            if (w.size() != 1) {
                continue;
            }
            const auto b = w[0];
            if (!(action[c] > action[b])) {
                throw MathError("action-increase", "d^f(" + cells[b].label + ") contains " + cells[c].label +
                                                       " without increasing action");
            }
            df.flip(c, b);
        }
    }
    return SftComplex{ChainComplex(+1, std::move(cells), std::move(df)), std::move(action)};
}

/// Quotient V_[alpha]: chords of action < alpha with the induced differential.
inline SftComplex truncate(const SftComplex& v, const Rational& alpha)
{
    if (alpha <= 0) {
        throw InputError("threshold", "truncation threshold must be positive");
    }
    std::vector<std::size_t> keep;
    std::vector<Rational> action;
    for (std::size_t i = 0; i < v.complex.size(); ++i) {
        if (v.action[i] < alpha) {
            keep.push_back(i);
            action.push_back(v.action[i]);
        }
    }
    return SftComplex{v.complex.restricted(keep), std::move(action)};
}

/// The projection V_[alpha] -> V_[beta] for alpha >= beta, by chord label.
inline ChainMap truncation_projection(const SftComplex& from, const SftComplex& to)
{
    Gf2Matrix m(to.complex.size(), from.complex.size());
    for (std::size_t r = 0; r < to.complex.size(); ++r) {
        m.set(r, from.complex.require_index(to.complex.cell(r).label), true);
    }
    return ChainMap(from.complex, to.complex, m);
}

struct TruncationTower {
    std::vector<Rational> thresholds;  ///< strictly increasing
    std::vector<SftComplex> levels;
    std::vector<ChainMap> projections;  ///< projections[i]: levels[i + 1] -> levels[i]
    bool chain_maps = true;
    bool functorial = true;
};

inline TruncationTower build_tower(const SftComplex& v, std::vector<Rational> thresholds)
{
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
    thresholds.erase(std::remove_if(thresholds.begin(), thresholds.end(), [](const Rational& a) { return a <= 0; }),
                     thresholds.end());
    TruncationTower t;
    t.thresholds = thresholds;
    for (const auto& a : thresholds) {
        t.levels.push_back(truncate(v, a));
    }
    for (std::size_t i = 0; i + 1 < t.levels.size(); ++i) {
        t.projections.push_back(truncation_projection(t.levels[i + 1], t.levels[i]));
        t.chain_maps = t.chain_maps && verify_chain_map(t.projections.back()).pass;
    }
    for (std::size_t i = 0; i + 2 < t.levels.size(); ++i) {
        const auto composed = t.projections[i + 1].then(t.projections[i]);
        const auto direct = truncation_projection(t.levels[i + 2], t.levels[i]);
        t.functorial = t.functorial && composed.matrix() == direct.matrix();
    }
    return t;
}

inline Rational stabilization_threshold(int r, const MonotonicityConstants& mono)
{
    return (Rational(r + 1) - mono.c0) / mono.c1;
}

/// Chords violating |c| > C1 a(c) + C0.
inline std::vector<std::string> monotonicity_violations(const DgaPresentation& dga, const MonotonicityConstants& mono)
{
    std::vector<std::string> out;
    for (const auto& g : dga.generators()) {
        if (!(Rational(g.degree) > mono.c1 * g.action + mono.c0)) {
            out.push_back(g.name);
        }
    }
    return out;
}

class MonotonicityRefusal : public InputError {
public:
    explicit MonotonicityRefusal(std::vector<std::string> chords)
        : InputError("monotonicity", message(chords)), chords_(std::move(chords))
    {
    }
    const std::vector<std::string>& chords() const { return chords_; }

private:
    static std::string message(const std::vector<std::string>& chords)
    {
        std::string s = "monotonicity |c| > C1 a(c) + C0 fails for:";
        for (const auto& c : chords) {
            s += " " + c;
        }
        return s;
    }
    std::vector<std::string> chords_;
};

struct E1Degree {
    int degree = 0;
    std::size_t rank = 0;
    Rational threshold;  ///< (r + 1 - C0) / C1
    bool certified = false;
    std::optional<std::pair<Rational, Rational>> certificate;  ///< consecutive thresholds above the bound
    std::map<Rational, std::size_t> tower;  ///< sampled threshold -> rank in this degree
};

struct E1Result {
    std::vector<E1Degree> degrees;
    std::vector<Rational> thresholds;
    bool chain_maps = true;
    bool functorial = true;
};

inline std::vector<Rational> tower_thresholds(const SftComplex& v, const std::vector<Rational>& bounds)
{
    std::set<Rational> t;
    Rational top(0);
    for (const auto& a : v.action) {
        t.insert(a);
        top = std::max(top, a);
    }
    t.insert(top + 1);
    t.insert(top + 2);
    for (const auto& b : bounds) {
        t.insert(b + 1);
        t.insert(std::max(b, top) + 1);
        t.insert(std::max(b, top) + 2);
    }
    return {t.begin(), t.end()};
}

/// Ranks of the tower at every sampled threshold, without any certificate.
inline std::map<Rational, Poincare> tower_ranks(const SftComplex& v, const std::vector<Rational>& thresholds)
{
    std::map<Rational, Poincare> out;
    for (const auto& a : thresholds) {
        if (a > 0) {
            out[a] = Homology(truncate(v, a).complex).ranks();
        }
    }
    return out;
}

/// Degreewise limit of the truncated cohomologies. Requires monotonicity;
/// otherwise throws MonotonicityRefusal. For each r in [lo, hi] the rank is
/// taken above (r + 1 - C0) / C1 and certified by two consecutive sampled
/// thresholds above that bound whose projection is an isomorphism on H^r,
/// together with agreement of every sampled rank above the bound.
inline E1Result e1_limit(const DgaPresentation& dga, const SftComplex& v, const MonotonicityConstants& mono, int lo,
                         int hi)
{
    if (mono.c1 <= 0) {
        throw InputError("monotonicity", "C1 must be positive");
    }
    if (auto bad = monotonicity_violations(dga, mono); !bad.empty()) {
        throw MonotonicityRefusal(std::move(bad));
    }
    std::vector<Rational> bounds;
    for (int r = lo; r <= hi; ++r) {
        bounds.push_back(stabilization_threshold(r, mono));
    }
    const auto tower = build_tower(v, tower_thresholds(v, bounds));
    std::vector<Homology> hs;
    for (const auto& level : tower.levels) {
        hs.emplace_back(level.complex);
    }

    E1Result out;
    out.thresholds = tower.thresholds;
    out.chain_maps = tower.chain_maps;
    out.functorial = tower.functorial;
    for (int r = lo; r <= hi; ++r) {
        E1Degree e;
        e.degree = r;
        e.threshold = stabilization_threshold(r, mono);
        std::optional<std::size_t> above;
        bool agree = true;
        for (std::size_t i = 0; i < tower.levels.size(); ++i) {
            const auto rank = hs[i].rank(r);
            e.tower[tower.thresholds[i]] = rank;
            if (tower.thresholds[i] > e.threshold) {
                if (above && *above != rank) {
                    agree = false;
                }
                above = above.value_or(rank);
            }
        }
        e.rank = hs.empty() ? 0 : hs.back().rank(r);
        for (std::size_t i = 0; i + 1 < tower.levels.size() && !e.certificate; ++i) {
            if (!(tower.thresholds[i] > e.threshold)) {
                continue;
            }
            const auto induced = graded_block(induced_map(hs[i + 1], hs[i], tower.projections[i].matrix()), hs[i], r,
                                              hs[i + 1], r);
            const auto n = hs[i].rank(r);
            if (hs[i + 1].rank(r) == n && induced.rank() == n) {
                e.certificate = std::make_pair(tower.thresholds[i], tower.thresholds[i + 1]);
            }
        }
        e.certified = agree && e.certificate.has_value() && above == e.rank;
        out.degrees.push_back(std::move(e));
    }
    return out;
}

struct Theorem1Report {
    bool intertwines = false;  ///< identity chords -> co-vectors is a chain map
    bool ranks_match = false;
    bool certified = false;
    std::map<int, std::pair<std::size_t, std::size_t>> ranks;  ///< degree -> (LCH^r, E1^r)
    bool pass() const { return intertwines && ranks_match && certified; }
};

/// Compares the dual of the linearized complex with the SFT tower limit.
inline Theorem1Report theorem1_check(const DgaPresentation& dga, const Augmentation& e,
                                     const MonotonicityConstants& mono, int lo, int hi)
{
    Theorem1Report rep;
    const auto dual = dualize(linearized_complex(dga, e));
    const auto v = build_sft(dga, e);
    rep.intertwines = verify_chain_map(ChainMap(dual, v.complex, label_matching(dual, v.complex))).pass &&
                      v.complex.boundary() == dual.boundary();
    const auto e1 = e1_limit(dga, v, mono, lo, hi);
    const Homology lch(dual);
    rep.ranks_match = true;
    rep.certified = e1.chain_maps && e1.functorial;
    for (const auto& d : e1.degrees) {
        rep.ranks[d.degree] = {lch.rank(d.degree), d.rank};
        rep.ranks_match = rep.ranks_match && lch.rank(d.degree) == d.rank;
        rep.certified = rep.certified && d.certified;
    }
    return rep;
}

}  // namespace lchsft
