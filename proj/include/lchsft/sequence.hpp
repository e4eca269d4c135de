#pragma once

// Long exact sequences in homology: built from short exact sequences of
// complexes (with the snake-lemma connecting map) and from mapping cones.

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "lchsft/complex.hpp"

namespace lchsft {

struct LesTerm {
    std::string space;  ///< name of the homology group, e.g. "H(sub)"
    int degree = 0;
    std::size_t dim = 0;
};

/// A finite stretch of a long exact sequence; maps[i] goes from terms[i]
/// to terms[i + 1]. The stretch is padded with vanishing groups at both
/// ends, so exactness is checked at every term.
struct LongExactSequence {
    std::vector<LesTerm> terms;
    std::vector<Gf2Matrix> maps;

    struct Failure {
        std::size_t term;
        std::string reason;
    };

    std::vector<Failure> failures() const
    {
        std::vector<Failure> out;
        for (std::size_t t = 0; t < terms.size(); ++t) {
            const std::size_t in_rank = t == 0 ? 0 : maps[t - 1].rank();
            const std::size_t out_rank = t + 1 < terms.size() ? maps[t].rank() : 0;
            if (t > 0 && t + 1 < terms.size() && !(maps[t] * maps[t - 1]).is_zero()) {
                out.push_back({t, "composite through " + label(t) + " is nonzero"});
            } else if (in_rank + out_rank != terms[t].dim) {
                out.push_back({t, "at " + label(t) + ": rank(in) " + std::to_string(in_rank) + " + rank(out) " +
                                      std::to_string(out_rank) + " != dim " + std::to_string(terms[t].dim)});
            }
        }
        return out;
    }

    bool exact() const { return failures().empty(); }

    std::string label(std::size_t t) const { return terms[t].space + "_" + std::to_string(terms[t].degree); }
};

/// Homology-level data of a short exact sequence 0 -> A -> B -> C -> 0.
/// Maps are on total homology (all degrees); the graded sequence is in `les`.
struct SesHomology {
    Homology sub;
    Homology total;
    Homology quotient;
    Gf2Matrix inclusion;   ///< H(A) -> H(B)
    Gf2Matrix projection;  ///< H(B) -> H(C)
    Gf2Matrix connecting;  ///< H(C) -> H(A), raising degree by the direction
    LongExactSequence les;
};

namespace detail {

inline std::pair<int, int> degree_window(std::initializer_list<const ChainComplex*> cs)
{
    int lo = 0;
    int hi = 0;
    bool any = false;
    for (const auto* c : cs) {
        for (int d : c->degrees()) {
            lo = any ? std::min(lo, d) : d;
            hi = any ? std::max(hi, d) : d;
            any = true;
        }
    }
    return {lo - 1, hi + 1};
}

}  // namespace detail

/// Builds the long exact sequence of 0 -> A --i--> B --p--> C -> 0.
/// Names label the three homology groups in the output.
inline SesHomology ses_sequence(const ChainComplex& a, const ChainComplex& b, const ChainComplex& c,
                                const Gf2Matrix& i, const Gf2Matrix& p,
                                const std::array<std::string, 3>& names = {"H(sub)", "H(total)", "H(quotient)"})
{
    const ChainMap im(a, b, i);
    const ChainMap pm(b, c, p);
    if (auto chk = verify_chain_map(im); !chk.pass) {
        throw MathError("ses", "inclusion is not a chain map: " + chk.detail);
    }
    if (auto chk = verify_chain_map(pm); !chk.pass) {
        throw MathError("ses", "projection is not a chain map: " + chk.detail);
    }
    if (i.rank() != a.size() || p.rank() != c.size() || !(p * i).is_zero() || a.size() + c.size() != b.size()) {
        throw MathError("ses", "sequence of complexes is not short exact");
    }

    SesHomology out{Homology(a), Homology(b), Homology(c), {}, {}, {}, {}};
    out.inclusion = induced_map(out.sub, out.total, i);
    out.projection = induced_map(out.total, out.quotient, p);

    // snake lemma: lift, apply the boundary, pull back along the inclusion
    out.connecting = Gf2Matrix(out.sub.total_rank(), out.quotient.total_rank());
    const auto& reps = out.quotient.representatives();
    for (std::size_t k = 0; k < reps.size(); ++k) {
        auto lift = solve(p, reps[k]);
        if (!lift) {
            throw MathError("ses", "projection is not surjective");
        }
        auto pulled = solve(i, b.boundary().apply(*lift));
        if (!pulled) {
            throw MathError("ses", "boundary of a lift does not lie in the subcomplex");
        }
        out.connecting.set_column(k, out.sub.class_of(*pulled));
    }

    const int dir = b.direction();
    auto [lo, hi] = detail::degree_window({&a, &b, &c});
    std::vector<int> order;
    for (int q = lo; q <= hi; ++q) {
        order.push_back(q);
    }
    if (dir < 0) {
        std::reverse(order.begin(), order.end());
    }
    auto& les = out.les;
    for (std::size_t n = 0; n < order.size(); ++n) {
        const int q = order[n];
        les.terms.push_back({names[0], q, out.sub.rank(q)});
        les.terms.push_back({names[1], q, out.total.rank(q)});
        les.terms.push_back({names[2], q, out.quotient.rank(q)});
        les.maps.push_back(graded_block(out.inclusion, out.total, q, out.sub, q));
        les.maps.push_back(graded_block(out.projection, out.quotient, q, out.total, q));
        if (n + 1 < order.size()) {
            les.maps.push_back(graded_block(out.connecting, out.sub, q + dir, out.quotient, q));
        }
    }
    return out;
}

struct MappingCone {
    ChainComplex cone;
    ChainMap inclusion;   ///< target -> cone
    ChainMap projection;  ///< cone -> source shifted by -direction
    SesHomology sequence;
};

/// Cone of f: A -> B. Cells are "t.<label>" for B (same degree) and
/// "s.<label>" for A (degree shifted by -direction), with boundary
/// [[d_B, f], [0, d_A]]. The connecting map of the resulting sequence is f_*.
inline MappingCone mapping_cone(const ChainMap& f)
{
    const auto& a = f.source();
    const auto& b = f.target();
    const int dir = a.direction();
    std::vector<Cell> cells;
    for (const auto& c : b.cells()) {
        cells.push_back({"t." + c.label, c.degree});
    }
    std::vector<Cell> shifted_cells;
    for (const auto& c : a.cells()) {
        cells.push_back({"s." + c.label, c.degree - dir});
        shifted_cells.push_back({"s." + c.label, c.degree - dir});
    }
    const std::size_t nb = b.size();
    const std::size_t na = a.size();
    Gf2Matrix d(nb + na, nb + na);
    for (auto [r, c] : b.boundary().entries()) {
        d.set(r, c, true);
    }
    for (auto [r, c] : f.matrix().entries()) {
        d.set(r, nb + c, true);
    }
    for (auto [r, c] : a.boundary().entries()) {
        d.set(nb + r, nb + c, true);
    }
    ChainComplex cone(dir, cells, d);
    ChainComplex shifted(dir, shifted_cells, a.boundary());

    Gf2Matrix inc(nb + na, nb);
    for (std::size_t k = 0; k < nb; ++k) {
        inc.set(k, k, true);
    }
    Gf2Matrix proj(na, nb + na);
    for (std::size_t k = 0; k < na; ++k) {
        proj.set(k, nb + k, true);
    }
    std::vector<Cell> tcells;
    for (const auto& c : b.cells()) {
        tcells.push_back({"t." + c.label, c.degree});
    }
    ChainComplex target(dir, tcells, b.boundary());
    auto seq = ses_sequence(target, cone, shifted, inc, proj, {"H(target)", "H(cone)", "H(source[shift])"});
    return MappingCone{cone, ChainMap(target, cone, inc), ChainMap(cone, shifted, proj), std::move(seq)};
}

}  // namespace lchsft
