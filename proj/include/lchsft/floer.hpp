#pragma once

// Two-copy Floer complex: long chords, short chords and intersection
// points with a block upper-triangular differential
//
//       | D_long  S    rho_long  |
//   d = |   0    M_l   rho_short |
//       |   0     0    M_f       |
//
// (cohomological, direction +1), its exact sequence with the long-chord
// subcomplex, the fillability test, and the chain-level moves.

#include <optional>
#include <string>
#include <vector>

#include "lchsft/sequence.hpp"
#include "lchsft/sft.hpp"

namespace lchsft {

/// A Morse complex given as critical points (absolute degree = index) and
/// a boundary matrix of degree +1. Short chords may carry an action.
struct MorseData {
    ChainComplex complex;
    std::vector<std::optional<Rational>> action;
};

struct TwoCopyComplex {
    ChainComplex total;
    std::size_t n_long = 0;
    std::size_t n_short = 0;
    std::size_t n_int = 0;
    std::vector<Rational> action;
    std::vector<std::string> assumptions;

    std::vector<std::size_t> long_cells() const { return range(0, n_long); }
    std::vector<std::size_t> short_cells() const { return range(n_long, n_long + n_short); }
    std::vector<std::size_t> intersection_cells() const { return range(n_long + n_short, total.size()); }
    std::vector<std::size_t> quotient_cells() const { return range(n_long, total.size()); }
    bool is_intersection(std::size_t i) const { return i >= n_long + n_short && i < total.size(); }

private:
    static std::vector<std::size_t> range(std::size_t a, std::size_t b)
    {
        std::vector<std::size_t> v;
        for (std::size_t i = a; i < b; ++i) {
            v.push_back(i);
        }
        return v;
    }
};

inline std::string long_label(const std::string& chord) { return chord + "!long"; }

/// Assembles and validates the two-copy complex. `shorts` maps short chords
/// into the long chords (rows long, columns short); `rho` maps intersection
/// points into all chords (rows long then short, columns intersection points).
/// Rejections name the violated block identity.
inline TwoCopyComplex assemble_two_copy(const SftComplex& longs, const MorseData& lambda, const MorseData& filling,
                                        const Gf2Matrix& shorts, const Gf2Matrix& rho)
{
    const std::size_t nl = longs.complex.size();
    const std::size_t ns = lambda.complex.size();
    const std::size_t ni = filling.complex.size();
    const std::size_t n = nl + ns + ni;
    if (shorts.rows() != nl || shorts.cols() != ns) {
        throw ComplexError("bad-shape", "short-chord connecting matrix has shape " + shorts.shape(), std::nullopt);
    }
    if (rho.rows() != nl + ns || rho.cols() != ni) {
        throw ComplexError("bad-shape", "intersection connecting matrix has shape " + rho.shape(), std::nullopt);
    }
    if (longs.complex.direction() != 1 || lambda.complex.direction() != 1 || filling.complex.direction() != 1) {
        throw ComplexError("direction", "two-copy blocks must all raise degree", std::nullopt);
    }

    std::vector<Cell> cells;
    std::vector<Rational> action;
    Rational min_long(1);
    for (std::size_t i = 0; i < nl; ++i) {
        cells.push_back({long_label(longs.complex.cell(i).label), longs.complex.cell(i).degree});
        action.push_back(longs.action[i]);
        min_long = i == 0 ? longs.action[i] : std::min(min_long, longs.action[i]);
    }
    for (std::size_t i = 0; i < ns; ++i) {
        cells.push_back(lambda.complex.cell(i));
        action.push_back(lambda.action.at(i).value_or(min_long / 1000));
    }
    for (std::size_t i = 0; i < ni; ++i) {
        cells.push_back(filling.complex.cell(i));
        action.push_back(Rational(0));
    }

    // d_infinity on long + short chords
    Gf2Matrix dinf(nl + ns, nl + ns);
    for (auto [r, c] : longs.complex.boundary().entries()) {
        dinf.set(r, c, true);
    }
    for (auto [r, c] : shorts.entries()) {
        dinf.set(r, nl + c, true);
    }
    for (auto [r, c] : lambda.complex.boundary().entries()) {
        dinf.set(nl + r, nl + c, true);
    }
    const Gf2Matrix& d0 = filling.complex.boundary();
    if (!(dinf * dinf).is_zero()) {
        throw ComplexError("d_infty_squared", "identity d_infty^2 = 0 fails", std::nullopt);
    }
    if (!(d0 * d0).is_zero()) {
        throw ComplexError("d_0_squared", "identity d_0^2 = 0 fails", std::nullopt);
    }
    if (!(dinf * rho + rho * d0).is_zero()) {
        throw ComplexError("mixed_identity", "identity d_infty rho + rho d_0 = 0 fails", std::nullopt);
    }

    Gf2Matrix d(n, n);
    for (auto [r, c] : dinf.entries()) {
        d.set(r, c, true);
    }
    for (auto [r, c] : rho.entries()) {
        d.set(r, nl + ns + c, true);
    }
    for (auto [r, c] : d0.entries()) {
        d.set(nl + ns + r, nl + ns + c, true);
    }
    for (auto [r, c] : d.entries()) {
        if (action[r] < action[c]) {
            throw ComplexError("action", "differential of " + cells[c].label + " reaches " + cells[r].label +
                                             " of lower action",
                               cells[c].degree);
        }
    }
    TwoCopyComplex tc;
    tc.total = ChainComplex(+1, std::move(cells), std::move(d));
    tc.n_long = nl;
    tc.n_short = ns;
    tc.n_int = ni;
    tc.action = std::move(action);
    tc.assumptions = {
        "long-chord block is the SFT differential of the chosen augmentation",
        "short chords are the critical points of a Morse function on the Legendrian",
        "intersection points are the critical points of a Morse function on the filling",
        "connecting disk counts between the blocks are taken as given",
    };
    return tc;
}

struct ConjectureReport {
    SesHomology sequence;
    bool exact = false;
    bool acyclic = false;
    bool delta_iso = false;
    bool delta_matches_block = false;  ///< connecting map equals the map induced by the off-diagonal block
    Poincare sub_ranks;                ///< H(C+)
    Poincare quotient_ranks;           ///< H(C hat)
};

/// 0 -> C+ -> C -> C hat -> 0 with C+ the long chords.
inline ConjectureReport conjecture_sequence(const TwoCopyComplex& tc)
{
    const auto sub_idx = tc.long_cells();
    const auto quo_idx = tc.quotient_cells();
    for (auto c : sub_idx) {
        for (auto r : tc.total.boundary().column_rows(c)) {
            if (r >= tc.n_long) {
                throw MathError("not-subcomplex", "long chords are not closed under the differential (" +
                                                      tc.total.cell(c).label + " -> " + tc.total.cell(r).label + ")");
            }
        }
    }
    const auto sub = tc.total.restricted(sub_idx);
    const auto quo = tc.total.restricted(quo_idx);
    Gf2Matrix inc(tc.total.size(), sub.size());
    for (std::size_t k = 0; k < sub_idx.size(); ++k) {
        inc.set(sub_idx[k], k, true);
    }
    Gf2Matrix proj(quo.size(), tc.total.size());
    for (std::size_t k = 0; k < quo_idx.size(); ++k) {
        proj.set(k, quo_idx[k], true);
    }
    ConjectureReport rep{ses_sequence(sub, tc.total, quo, inc, proj, {"H(C+)", "H(C)", "H(Chat)"}), false, false,
                         false, false, {}, {}};
    rep.exact = rep.sequence.les.exact();
    rep.acyclic = rep.sequence.total.acyclic();
    const auto& delta = rep.sequence.connecting;
    rep.delta_iso = delta.rows() == delta.cols() && delta.rank() == delta.rows();
    const auto block = tc.total.boundary().submatrix(sub_idx, quo_idx);
    rep.delta_matches_block = induced_map(rep.sequence.quotient, rep.sequence.sub, block) == delta;
    rep.sub_ranks = rep.sequence.sub.ranks();
    rep.quotient_ranks = rep.sequence.quotient.ranks();
    return rep;
}

struct FillabilityVerdict {
    std::string verdict;               ///< "consistent", "obstructed" or "obstructed: no augmentation"
    std::optional<int> degree;         ///< first mismatching filling degree j
    std::map<int, std::pair<std::size_t, std::size_t>> table;  ///< j -> (rank H_j(L), rank LCH^{n-1-j})
};

/// Compares candidate ranks of H_j(L) with LCH^{n-1-j} of the augmentation.
inline FillabilityVerdict fillability_check(const DgaPresentation& dga, const std::optional<Augmentation>& e,
                                            const Poincare& candidate)
{
    FillabilityVerdict v;
    if (!e) {
        v.verdict = "obstructed: no augmentation";
        return v;
    }
    const Homology lch(dualize(linearized_complex(dga, *e)));
    const int n = dga.ambient_n();
    for (const auto& [k, r] : lch.ranks()) {
        v.table[n - 1 - k].second = r;
    }
    for (const auto& [j, r] : candidate) {
        if (r > 0) {
            v.table[j].first = r;
        }
    }
    v.verdict = "consistent";
    for (const auto& [j, ranks] : v.table) {
        if (ranks.first != ranks.second) {
            v.verdict = "obstructed";
            v.degree = j;
            break;
        }
    }
    return v;
}

/// Filling ranks implied by the quotient: H_j(L) = dim H^{n-2-j}(C hat).
inline Poincare implied_filling_ranks(const ConjectureReport& rep, int ambient_n)
{
    Poincare out;
    for (const auto& [k, r] : rep.quotient_ranks) {
        out[ambient_n - 2 - k] = r;
    }
    return out;
}

// ---- chain-level moves ------------------------------------------------

struct HandleSlide {
    ChainComplex after;
    ChainMap map;  ///< phi: x -> x + y, identity elsewhere
};

/// Handle slide of x over y (equal degrees): d+ = phi d- phi with phi unipotent.
inline HandleSlide handle_slide(const ChainComplex& before, const std::string& x, const std::string& y)
{
    const auto ix = before.require_index(x);
    const auto iy = before.require_index(y);
    if (ix == iy) {
        throw InputError("handle-slide", "a generator cannot slide over itself");
    }
    if (before.cell(ix).degree != before.cell(iy).degree) {
        throw InputError("handle-slide", "handle slide needs |" + x + "| = |" + y + "|");
    }
    auto phi = Gf2Matrix::identity(before.size());
    phi.set(iy, ix, true);
    ChainComplex after(before.direction(), before.cells(), phi * before.boundary() * phi);
    return HandleSlide{after, ChainMap(before, after, phi)};
}

/// The ungraded map g -> phi(g + d- g); also intertwines d- and d+.
inline Gf2Matrix handle_slide_total_map(const HandleSlide& hs)
{
    const auto& phi = hs.map.matrix();
    return phi * (Gf2Matrix::identity(phi.cols()) + hs.map.source().boundary());
}

struct BirthDeath {
    ChainComplex reduced;
    ChainMap phi;  ///< before -> reduced: x -> 0, y -> v
    ChainMap psi;  ///< reduced -> before: c -> c + y*(dc) x
};

/// Cancels x against y where dx = y + v and v has no y-term.
inline BirthDeath birth_death(const ChainComplex& before, const std::string& x, const std::string& y)
{
    const auto ix = before.require_index(x);
    const auto iy = before.require_index(y);
    const auto& d = before.boundary();
    if (ix == iy || !d.get(iy, ix)) {
        throw InputError("birth-death", "cancellation needs " + y + " to appear in d" + x);
    }
    std::vector<std::size_t> keep;
    std::vector<std::size_t> pos(before.size(), SIZE_MAX);
    for (std::size_t i = 0; i < before.size(); ++i) {
        if (i != ix && i != iy) {
            pos[i] = keep.size();
            keep.push_back(i);
        }
    }
    const std::size_t m = keep.size();
    auto project = [&](const BitVec& w) {
        BitVec out(m);
        for (auto i : w.ones()) {
            if (pos[i] != SIZE_MAX) {
                out.flip(pos[i]);
            }
        }
        return out;
    };
    const BitVec v = project(d.column(ix));

    Gf2Matrix dr(m, m);
    for (std::size_t k = 0; k < m; ++k) {
        BitVec col = project(d.column(keep[k]));
        if (d.get(iy, keep[k])) {
            col ^= v;
        }
        dr.set_column(k, col);
    }
    std::vector<Cell> cells;
    for (auto i : keep) {
        cells.push_back(before.cell(i));
    }
    ChainComplex reduced(before.direction(), std::move(cells), std::move(dr));

    Gf2Matrix phi(m, before.size());
    for (std::size_t k = 0; k < m; ++k) {
        phi.set(k, keep[k], true);
    }
    phi.set_column(iy, v);
    Gf2Matrix psi(before.size(), m);
    for (std::size_t k = 0; k < m; ++k) {
        psi.set(keep[k], k, true);
        if (d.get(iy, keep[k])) {
            psi.set(ix, k, true);
        }
    }
    return BirthDeath{reduced, ChainMap(before, reduced, phi), ChainMap(reduced, before, psi)};
}

inline HandleSlide handle_slide_move(const TwoCopyComplex& tc, const std::string& x, const std::string& y)
{
    for (const auto& g : {x, y}) {
        if (!tc.is_intersection(tc.total.require_index(g))) {
            throw InputError("handle-slide", g + " is not an intersection point");
        }
    }
    return handle_slide(tc.total, x, y);
}

inline BirthDeath birth_death_move(const TwoCopyComplex& tc, const std::string& x, const std::string& y)
{
    return birth_death(tc.total, x, y);
}

/// Chain-map test for a joining map that must fix every intersection point.
inline ChainMapCheck join_map_check(const ChainMap& phi, const TwoCopyComplex& source, const TwoCopyComplex& target)
{
    if (!(phi.source() == source.total) || !(phi.target() == target.total)) {
        throw InputError("basis", "join map is not between the given complexes");
    }
    for (auto i : source.intersection_cells()) {
        const auto& label = source.total.cell(i).label;
        auto j = target.total.index_of(label);
        if (!j || !target.is_intersection(*j) || !(phi.matrix().column(i) == BitVec::unit(target.total.size(), *j))) {
            throw InputError("join-moves-intersection", "join map does not fix intersection point " + label);
        }
    }
    return verify_chain_map(phi);
}

/// Checks Psi Phi- + Phi+ = K d + d~ K where Phi-: A -> B, Psi: B -> C,
/// Phi+: A -> C and K: A -> C lowers degree by the direction.
inline ChainMapCheck homotopy_square_check(const ChainMap& phi_minus, const ChainMap& phi_plus, const ChainMap& psi,
                                           const Gf2Matrix& k)
{
    const auto& a = phi_minus.source();
    const auto& c = psi.target();
    if (!(phi_plus.source() == a) || !(phi_plus.target() == c) || !(psi.source() == phi_minus.target())) {
        throw InputError("shape", "homotopy square maps do not share complexes");
    }
    if (k.rows() != c.size() || k.cols() != a.size()) {
        throw InputError("shape", "homotopy has shape " + k.shape());
    }
    for (auto [r, col] : k.entries()) {
        if (c.cell(r).degree != a.cell(col).degree - a.direction()) {
            throw InputError("shape", "homotopy entry " + a.cell(col).label + " -> " + c.cell(r).label +
                                          " has the wrong degree");
        }
    }
    const auto lhs = psi.matrix() * phi_minus.matrix() + phi_plus.matrix();
    const auto rhs = k * a.boundary() + c.boundary() * k;
    ChainMapCheck out;
    for (auto [r, col] : (lhs + rhs).entries()) {
        const int deg = a.cell(col).degree;
        if (out.pass || deg < *out.degree) {
            out.pass = false;
            out.degree = deg;
            out.detail = "homotopy identity fails on " + a.cell(col).label + " (component " + c.cell(r).label + ")";
        }
    }
    return out;
}

}  // namespace lchsft
