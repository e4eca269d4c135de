#pragma once

// Far-shifted two-copy splitting Q + C + P with lower-triangular boundary
//
//   | dq   0    0  |
//   | rho  dc   0  |
//   | eta  sigma dp |
//
// (homological, direction -1). Q is the linearized complex shifted up by
// one, C a Morse complex of the Legendrian and P the dual of Q under a
// pairing of chords. Acyclicity of the total complex yields the duality
// sequence  H(C) -> H(P) -> H(Q) -> H(C) -> ...

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "lchsft/floer.hpp"

namespace lchsft {

struct DualitySplitting {
    int ambient_n = 0;
    ChainComplex q;
    ChainComplex c;
    ChainComplex p;
    Gf2Matrix rho;    ///< C <- Q
    Gf2Matrix sigma;  ///< P <- C
    Gf2Matrix eta;    ///< P <- Q
    std::vector<std::size_t> partner;  ///< Q cell -> paired P cell
    Gf2Matrix pd;     ///< symmetric intersection pairing on C
    ChainComplex total;

    std::vector<std::size_t> q_cells() const { return range(0, q.size()); }
    std::vector<std::size_t> c_cells() const { return range(q.size(), q.size() + c.size()); }
    std::vector<std::size_t> p_cells() const { return range(q.size() + c.size(), total.size()); }

    /// Pairing matrix P <- Q sending a chord to its partner.
    Gf2Matrix pairing() const
    {
        Gf2Matrix m(p.size(), q.size());
        for (std::size_t i = 0; i < partner.size(); ++i) {
            m.set(partner[i], i, true);
        }
        return m;
    }

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

/// Validates and assembles the splitting. Q cells carry total degree
/// |q| + 1 and P cells n - 2 - |q|. When `linearized` is given, the Q block
/// must equal it (shifted by one) under label matching.
inline DualitySplitting assemble_duality(int ambient_n, ChainComplex q, ChainComplex c, ChainComplex p, Gf2Matrix rho,
                                         Gf2Matrix sigma, Gf2Matrix eta, std::vector<std::size_t> partner,
                                         Gf2Matrix pd, const ChainComplex* linearized = nullptr)
{
    const std::size_t nq = q.size();
    const std::size_t nc = c.size();
    const std::size_t np = p.size();
    for (const auto* blk : {&q, &c, &p}) {
        if (blk->direction() != -1) {
            throw ComplexError("direction", "duality blocks must lower degree", std::nullopt);
        }
    }
    if (rho.rows() != nc || rho.cols() != nq || sigma.rows() != np || sigma.cols() != nc || eta.rows() != np ||
        eta.cols() != nq || pd.rows() != nc || pd.cols() != nc) {
        throw ComplexError("bad-shape", "duality block maps have inconsistent shapes", std::nullopt);
    }
    if (!(pd == pd.transpose())) {
        throw ComplexError("pairing", "intersection pairing on C is not symmetric", std::nullopt);
    }
    if (partner.size() != nq || np != nq) {
        throw ComplexError("pairing", "every chord of Q needs exactly one partner in P", std::nullopt);
    }
    std::vector<bool> used(np, false);
    for (std::size_t i = 0; i < nq; ++i) {
        if (partner[i] >= np || used[partner[i]]) {
            throw ComplexError("pairing", "pairing between Q and P is not a bijection", std::nullopt);
        }
        used[partner[i]] = true;
        const int want = ambient_n - 2 - (q.cell(i).degree - 1);
        if (p.cell(partner[i]).degree != want) {
            throw ComplexError("pairing", "partner of " + q.cell(i).label + " must have degree " + std::to_string(want),
                               p.cell(partner[i]).degree);
        }
    }
    DualitySplitting ds{ambient_n, std::move(q), std::move(c), std::move(p), std::move(rho), std::move(sigma),
                        std::move(eta), std::move(partner), std::move(pd), {}};
    const auto pm = ds.pairing();
    if (!(ds.p.boundary() == pm * ds.q.boundary().transpose() * pm.transpose())) {
        throw ComplexError("p-not-dual", "P block is not the transpose of the Q block under the pairing", std::nullopt);
    }
    if (linearized) {
        const auto shifted = linearized->shifted(1);
        const auto m = label_matching(shifted, ds.q);
        bool same = shifted.size() == ds.q.size() && m.rank() == ds.q.size();
        for (std::size_t i = 0; same && i < shifted.size(); ++i) {
            const auto j = ds.q.index_of(shifted.cell(i).label);
            same = j && ds.q.cell(*j).degree == shifted.cell(i).degree;
        }
        if (!same || !(m * shifted.boundary() == ds.q.boundary() * m)) {
            throw ComplexError("q-not-linearized", "Q block differs from the linearized complex", std::nullopt);
        }
    }

    std::vector<Cell> cells;
    for (const auto* blk : {&ds.q, &ds.c, &ds.p}) {
        cells.insert(cells.end(), blk->cells().begin(), blk->cells().end());
    }
    const std::size_t n = nq + nc + np;
    Gf2Matrix d(n, n);
    auto put = [&](const Gf2Matrix& m, std::size_t r0, std::size_t c0) {
        for (auto [r, col] : m.entries()) {
            d.set(r0 + r, c0 + col, true);
        }
    };
    put(ds.q.boundary(), 0, 0);
    put(ds.rho, nq, 0);
    put(ds.c.boundary(), nq, nq);
    put(ds.eta, nq + nc, 0);
    put(ds.sigma, nq + nc, nq);
    put(ds.p.boundary(), nq + nc, nq + nc);
    if (!(d * d).is_zero()) {
        throw ComplexError("square", "total duality differential does not square to zero", std::nullopt);
    }
    ds.total = ChainComplex(-1, std::move(cells), std::move(d));
    if (!Homology(ds.total).acyclic()) {
        throw ComplexError("not-acyclic", "total duality complex is not acyclic", std::nullopt);
    }
    return ds;
}

namespace detail {

inline Gf2Matrix inclusion_matrix(std::size_t ambient, const std::vector<std::size_t>& idx)
{
    Gf2Matrix m(ambient, idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) {
        m.set(idx[k], k, true);
    }
    return m;
}

/// Positions of `idx` inside `within`.
inline std::vector<std::size_t> positions(const std::vector<std::size_t>& within, const std::vector<std::size_t>& idx)
{
    std::vector<std::size_t> out;
    for (auto i : idx) {
        out.push_back(static_cast<std::size_t>(std::find(within.begin(), within.end(), i) - within.begin()));
    }
    return out;
}

inline std::vector<std::size_t> concat(std::vector<std::size_t> a, const std::vector<std::size_t>& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

/// 0 -> sub -> whole -> whole/sub -> 0 for a subset of cells closed under d.
inline SesHomology split_sequence(const ChainComplex& whole, const std::vector<std::size_t>& sub_idx,
                                  const std::vector<std::size_t>& quo_idx, const std::array<std::string, 3>& names)
{
    const auto sub = whole.restricted(sub_idx);
    const auto quo = whole.restricted(quo_idx);
    return ses_sequence(sub, whole, quo, inclusion_matrix(whole.size(), sub_idx),
                        inclusion_matrix(whole.size(), quo_idx).transpose(), names);
}

}  // namespace detail

struct PairingCheck {
    bool pass = true;
    std::size_t ones = 0;  ///< basis pairs (gamma, alpha) with <sigma(gamma), alpha> = 1
    std::vector<std::string> failures;
};

struct DualitySequence {
    LongExactSequence les;
    Homology h_c;
    Homology h_p;
    Homology h_q;
    Gf2Matrix sigma_star;  ///< H(C) -> H(P)
    Gf2Matrix theta;       ///< H(P) -> H(Q)
    Gf2Matrix rho_star;    ///< H(Q) -> H(C)
    Gf2Matrix delta;       ///< H(Q + C) -> H(P), the connecting isomorphism
    PairingCheck pairing;
    bool exact() const { return les.exact(); }
};

/// Duality sequence of the splitting together with the check
/// <sigma_*(gamma), alpha> = I(gamma, rho_*(alpha)) on homology bases.
inline DualitySequence duality_sequence(const DualitySplitting& ds)
{
    using namespace detail;
    const auto qc_idx = concat(ds.q_cells(), ds.c_cells());
    const auto qc = ds.total.restricted(qc_idx);
    auto first = split_sequence(qc, positions(qc_idx, ds.c_cells()), positions(qc_idx, ds.q_cells()),
                                {"H(C)", "H(QC)", "H(Q)"});
    auto second = split_sequence(ds.total, ds.p_cells(), qc_idx, {"H(P)", "H(T)", "H(QC)"});
    const auto& h_qc = first.total;
    // first.total and second.quotient are the same complex with the same representatives
    if (!(h_qc.representatives() == second.quotient.representatives())) {
        throw MathError("basis", "inconsistent homology bases for Q + C");
    }
    const auto delta = second.connecting;
    DualitySequence out{{}, first.sub, second.sub, first.quotient, delta * first.inclusion,
                        first.projection * inverse(delta), first.connecting, delta, {}};

    const int n = ds.ambient_n;
    const auto degrees = ds.total.degrees();
    int lo = degrees.empty() ? 0 : degrees.front() - 1;
    int hi = degrees.empty() ? 0 : degrees.back() + 1;
    for (int t = hi; t >= lo; --t) {
        out.les.terms.push_back({"H(Lambda)", t, out.h_c.rank(t)});
        out.les.terms.push_back({"LCH^", n - 1 - t, out.h_p.rank(t - 1)});
        out.les.terms.push_back({"LCH_", t - 1, out.h_q.rank(t)});
        out.les.maps.push_back(graded_block(out.sigma_star, out.h_p, t - 1, out.h_c, t));
        out.les.maps.push_back(graded_block(out.theta, out.h_q, t, out.h_p, t - 1));
        if (t > lo) {
            out.les.maps.push_back(graded_block(out.rho_star, out.h_c, t - 1, out.h_q, t));
        }
    }

    const auto pm = ds.pairing();
    auto chain_of = [](const Homology& h, const BitVec& coords) {
        BitVec v(h.representatives().empty() ? 0 : h.representatives()[0].size());
        for (auto k : coords.ones()) {
            v ^= h.representatives()[k];
        }
        return v;
    };
    for (std::size_t g = 0; g < out.h_c.total_rank(); ++g) {
        const BitVec sg = chain_of(out.h_p, out.sigma_star.column(g));
        for (std::size_t a = 0; a < out.h_q.total_rank(); ++a) {
            const BitVec& alpha = out.h_q.representatives()[a];
            const bool lhs = out.h_p.total_rank() > 0 && pm.apply(alpha).dot(sg);
            const BitVec ra = chain_of(out.h_c, out.rho_star.column(a));
            const bool rhs = out.h_c.total_rank() > 0 && out.h_c.representatives()[g].dot(ds.pd.apply(ra));
            out.pairing.ones += lhs ? 1 : 0;
            if (lhs != rhs) {
                out.pairing.pass = false;
                out.pairing.failures.push_back("class " + std::to_string(g) + " of H(C) against class " +
                                               std::to_string(a) + " of H(Q)");
            }
        }
    }
    return out;
}

struct HMapsCheck {
    bool h_iso = false;        ///< (eta sigma): Q + C -> P
    bool h_prime_iso = false;  ///< (rho; eta): Q -> C + P
    bool pass() const { return h_iso && h_prime_iso; }
};

inline HMapsCheck h_maps_iso_check(const DualitySplitting& ds)
{
    using namespace detail;
    const auto qc_idx = concat(ds.q_cells(), ds.c_cells());
    const auto cp_idx = concat(ds.c_cells(), ds.p_cells());
    const Homology h_qc(ds.total.restricted(qc_idx));
    const Homology h_cp(ds.total.restricted(cp_idx));
    const Homology h_q(ds.q);
    const Homology h_p(ds.p);
    const auto h = ds.total.boundary().submatrix(ds.p_cells(), qc_idx);
    const auto hp = ds.total.boundary().submatrix(cp_idx, ds.q_cells());
    const auto a = induced_map(h_qc, h_p, h);
    const auto b = induced_map(h_q, h_cp, hp);
    HMapsCheck out;
    out.h_iso = a.rows() == a.cols() && a.rank() == a.rows();
    out.h_prime_iso = b.rows() == b.cols() && b.rank() == b.rows();
    return out;
}

struct DiagramSquare {
    std::string name;
    bool homology = false;
    std::optional<bool> chain;  ///< chain-level commutation, informational only
};

struct DiagramReport {
    std::vector<DiagramSquare> squares;
    bool pass() const
    {
        for (const auto& s : squares) {
            if (!s.homology) {
                return false;
            }
        }
        return !squares.empty();
    }
};

/// Squares relating the two-copy sequence of a filling with the duality
/// sequence, compared on total homology. Short chords are identified with
/// C by label and a long chord q!long with the partner of q in P; both
/// identifications must intertwine the differentials.
inline DiagramReport corollary_diagram_check(const DualitySplitting& ds, const TwoCopyComplex& tc)
{
    using namespace detail;
    const auto& d = tc.total.boundary();
    const auto shorts = tc.short_cells();
    const auto longs = tc.long_cells();

    Gf2Matrix mc(ds.c.size(), shorts.size());
    for (std::size_t k = 0; k < shorts.size(); ++k) {
        mc.set(ds.c.require_index(tc.total.cell(shorts[k]).label), k, true);
    }
    Gf2Matrix mp(ds.p.size(), longs.size());
    for (std::size_t k = 0; k < longs.size(); ++k) {
        std::string label = tc.total.cell(longs[k]).label;
        label = label.substr(0, label.size() - std::string("!long").size());
        mp.set(ds.partner.at(ds.q.require_index(label)), k, true);
    }
    if (mc.rank() != ds.c.size() || mc.cols() != ds.c.size() || mp.rank() != ds.p.size() ||
        mp.cols() != ds.p.size()) {
        throw InputError("basis", "two-copy chords do not match the duality blocks one to one");
    }
    if (!(mc * d.submatrix(shorts, shorts) == ds.c.boundary() * mc) ||
        !(mp * d.submatrix(longs, longs) == ds.p.boundary() * mp)) {
        throw InputError("basis-incompatible", "identification of two-copy and duality blocks is not a chain map");
    }

    const auto conj = conjecture_sequence(tc);
    const auto& h_plus = conj.sequence.sub;
    const auto quo = tc.quotient_cells();
    const auto chat = tc.total.restricted(quo);
    const auto filling = split_sequence(chat, positions(quo, shorts), positions(quo, tc.intersection_cells()),
                                        {"H(short)", "H(Chat)", "H(I)"});
    const auto seq = duality_sequence(ds);

    const auto cp_idx = concat(ds.c_cells(), ds.p_cells());
    const auto cp = ds.total.restricted(cp_idx);
    const Homology h_cp(cp);
    const auto h_prime = induced_map(seq.h_q, h_cp, ds.total.boundary().submatrix(cp_idx, ds.q_cells()));
    const auto h_prime_inv = inverse(h_prime);

    // long and short chords together against C + P
    const auto ls_idx = concat(longs, shorts);
    Gf2Matrix m_cp(cp.size(), ls_idx.size());
    for (std::size_t k = 0; k < longs.size(); ++k) {
        for (auto r : mp.column(k).ones()) {
            m_cp.set(ds.c.size() + r, k, true);
        }
    }
    for (std::size_t k = 0; k < shorts.size(); ++k) {
        for (auto r : mc.column(k).ones()) {
            m_cp.set(r, longs.size() + k, true);
        }
    }
    if (!(m_cp * d.submatrix(ls_idx, ls_idx) == cp.boundary() * m_cp)) {
        throw InputError("basis-incompatible", "short-to-long block of the two-copy complex does not match sigma");
    }
    const auto prime_split = split_sequence(tc.total, ls_idx, tc.intersection_cells(), {"H(LS)", "H(C)", "H(I)"});

    const auto mc_star = induced_map(filling.sub, seq.h_c, mc);
    const auto mp_star = induced_map(h_plus, seq.h_p, mp);
    const auto delta = mp_star * conj.sequence.connecting;  // H(Chat) -> H(P)
    const auto delta_prime = induced_map(prime_split.sub, h_cp, m_cp) * prime_split.connecting;  // H(I) -> H(CP)
    const auto relative = h_prime_inv * delta_prime;  // H(I) -> H(Q)

    DiagramReport rep;
    {
        DiagramSquare s{"short chords: delta after inclusion equals sigma_*", false, std::nullopt};
        s.homology = delta * filling.inclusion == seq.sigma_star * mc_star;
        Gf2Matrix c_part(shorts.size(), quo.size());
        for (std::size_t k = 0; k < shorts.size(); ++k) {
            c_part.set(k, k, true);
        }
        s.chain = mp * d.submatrix(longs, quo) == ds.sigma * mc * c_part;
        rep.squares.push_back(s);
    }
    rep.squares.push_back({"filling: theta delta equals H'^-1 delta' after projection",
                           seq.theta * delta == relative * filling.projection, std::nullopt});
    rep.squares.push_back({"relative classes: rho_* H'^-1 delta' equals the boundary map",
                           seq.rho_star * relative == mc_star * filling.connecting, std::nullopt});
    rep.squares.push_back({"vertical maps are isomorphisms",
                           mc_star.rank() == mc_star.rows() && mc_star.rank() == mc_star.cols() &&
                               delta.rank() == delta.rows() && delta.rank() == delta.cols() &&
                               relative.rank() == relative.rows() && relative.rank() == relative.cols(),
                           std::nullopt});

    // squares internal to the splitting
    const auto qc_idx = concat(ds.q_cells(), ds.c_cells());
    const Homology h_qc(ds.total.restricted(qc_idx));
    const auto h_map = induced_map(h_qc, seq.h_p, ds.total.boundary().submatrix(ds.p_cells(), qc_idx));
    rep.squares.push_back({"splitting: connecting map of P -> T -> QC equals (eta sigma)_*", h_map == seq.delta,
                           std::nullopt});
    const auto cpq = split_sequence(ds.total, cp_idx, ds.q_cells(), {"H(CP)", "H(T)", "H(Q)"});
    rep.squares.push_back({"splitting: connecting map of CP -> T -> Q equals (rho; eta)_*",
                           cpq.connecting == h_prime, std::nullopt});
    const auto c_of_cp = induced_map(h_cp, seq.h_c,
                                     inclusion_matrix(cp.size(), positions(cp_idx, ds.c_cells())).transpose());
    rep.squares.push_back({"splitting: rho_* factors through (rho; eta)_*", c_of_cp * h_prime == seq.rho_star,
                           std::nullopt});
    return rep;
}

}  // namespace lchsft
