#pragma once

// Graded chain complexes over GF(2), their homology, and chain maps.
//
// A complex is a list of labelled cells with integer degrees and a single
// square boundary matrix (column j = boundary of cell j). The direction flag
// says whether the boundary lowers (-1, homological) or raises (+1,
// cohomological) degree.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "lchsft/errors.hpp"
#include "lchsft/gf2.hpp"

namespace lchsft {

struct Cell {
    std::string label;
    int degree = 0;

    bool operator==(const Cell&) const = default;
};

class ChainComplex {
public:
    ChainComplex() = default;

    /// Validates labels, degree compatibility of every boundary entry, and
    /// boundary^2 = 0. Throws ComplexError naming the offending degree.
    ChainComplex(int direction, std::vector<Cell> cells, Gf2Matrix boundary)
        : direction_(direction), cells_(std::move(cells)), d_(std::move(boundary))
    {
        validate();
    }

    static ChainComplex empty(int direction) { return ChainComplex(direction, {}, Gf2Matrix(0, 0)); }

    int direction() const { return direction_; }
    std::size_t size() const { return cells_.size(); }
    const std::vector<Cell>& cells() const { return cells_; }
    const Cell& cell(std::size_t i) const { return cells_.at(i); }
    const Gf2Matrix& boundary() const { return d_; }

    std::optional<std::size_t> index_of(const std::string& label) const
    {
        for (std::size_t i = 0; i < cells_.size(); ++i) {
            if (cells_[i].label == label) {
                return i;
            }
        }
        return std::nullopt;
    }

    std::size_t require_index(const std::string& label) const
    {
        auto i = index_of(label);
        if (!i) {
            throw InputError("unknown-generator", "no generator named '" + label + "' in complex");
        }
        return *i;
    }

    std::vector<int> degrees() const
    {
        std::set<int> ds;
        for (const auto& c : cells_) {
            ds.insert(c.degree);
        }
        return {ds.begin(), ds.end()};
    }

    /// Cell indices in degree d, ordered by label (the pivot order used
    /// for cycle representatives).
    std::vector<std::size_t> cells_in_degree(int d) const
    {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < cells_.size(); ++i) {
            if (cells_[i].degree == d) {
                out.push_back(i);
            }
        }
        std::sort(out.begin(), out.end(),
                  [&](std::size_t a, std::size_t b) { return cells_[a].label < cells_[b].label; });
        return out;
    }

    /// Boundary restricted to degree d, as a matrix from degree d to degree d + direction.
    Gf2Matrix boundary_block(int d) const
    {
        return d_.submatrix(cells_in_degree(d + direction_), cells_in_degree(d));
    }

    /// Same cells and matrix with the opposite direction and transposed
    /// boundary: the GF(2) dual complex.
    ChainComplex dual() const { return ChainComplex(-direction_, cells_, d_.transpose()); }

    ChainComplex shifted(int by) const
    {
        auto cells = cells_;
        for (auto& c : cells) {
            c.degree += by;
        }
        return ChainComplex(direction_, std::move(cells), d_);
    }

    /// Full subcomplex or quotient on the chosen cells (restriction of the
    /// boundary); the caller is responsible for the subset being closed in
    /// the appropriate sense, but boundary^2 = 0 is rechecked.
    ChainComplex restricted(const std::vector<std::size_t>& keep) const
    {
        std::vector<Cell> cells;
        for (auto i : keep) {
            cells.push_back(cells_.at(i));
        }
        return ChainComplex(direction_, std::move(cells), d_.submatrix(keep, keep));
    }

    BitVec vector_of(const std::vector<std::string>& labels) const
    {
        BitVec v(size());
        for (const auto& l : labels) {
            v.flip(require_index(l));
        }
        return v;
    }

    std::string describe(const BitVec& v) const
    {
        std::string s;
        for (auto i : v.ones()) {
            if (!s.empty()) {
                s += " + ";
            }
            s += cells_[i].label;
        }
        return s.empty() ? "0" : s;
    }

    bool operator==(const ChainComplex&) const = default;

private:
    void validate() const
    {
        if (direction_ != 1 && direction_ != -1) {
            throw ComplexError("bad-direction", "direction must be +1 or -1", std::nullopt);
        }
        if (d_.rows() != cells_.size() || d_.cols() != cells_.size()) {
            throw ComplexError("bad-shape", "boundary matrix " + d_.shape() + " does not match " +
                                                std::to_string(cells_.size()) + " cells",
                               std::nullopt);
        }
        std::set<std::string> seen;
        for (const auto& c : cells_) {
            if (!seen.insert(c.label).second) {
                throw ComplexError("duplicate-label", "duplicate cell label '" + c.label + "'", c.degree);
            }
        }
        for (auto [r, c] : d_.entries()) {
            if (cells_[r].degree != cells_[c].degree + direction_) {
                throw ComplexError("degree", "boundary entry " + cells_[c].label + " -> " + cells_[r].label +
                                                 " changes degree by " +
                                                 std::to_string(cells_[r].degree - cells_[c].degree),
                                   cells_[c].degree);
            }
        }
        const Gf2Matrix sq = d_ * d_;
        if (!sq.is_zero()) {
            int worst = 0;
            bool first = true;
            for (auto [r, c] : sq.entries()) {
                if (first || cells_[c].degree < worst) {
                    worst = cells_[c].degree;
                    first = false;
                }
            }
            throw ComplexError("square", "boundary squared is nonzero starting in degree " + std::to_string(worst),
                               worst);
        }
    }

    int direction_ = -1;
    std::vector<Cell> cells_;
    Gf2Matrix d_;
};

/// Homology of a complex: graded ranks plus deterministic cycle
/// representatives whose classes form a basis. Classes are numbered in
/// increasing degree, then in representative order.
class Homology {
public:
    explicit Homology(const ChainComplex& c) : n_(c.size()), solver_(c.size())
    {
        const auto& d = c.boundary();
        // every boundary first, so representatives only add new classes
        for (std::size_t j = 0; j < c.size(); ++j) {
            solver_.insert(d.column(j));
        }
        for (int deg : c.degrees()) {
            const auto idx = c.cells_in_degree(deg);
            const auto block = d.submatrix(c.cells_in_degree(deg + c.direction()), idx);
            std::size_t r = 0;
            for (const auto& k : kernel_basis(block)) {
                BitVec z(n_);
                for (auto i : k.ones()) {
                    z.set(idx[i]);
                }
                if (solver_.insert(z)) {
                    candidate_to_rep_[solver_.inserted() - 1] = reps_.size();
                    reps_.push_back(z);
                    rep_degree_.push_back(deg);
                    ++r;
                }
            }
            if (r > 0) {
                ranks_[deg] = r;
            }
        }
    }

    /// Nonzero ranks only.
    const std::map<int, std::size_t>& ranks() const { return ranks_; }
    std::size_t rank(int degree) const
    {
        auto it = ranks_.find(degree);
        return it == ranks_.end() ? 0 : it->second;
    }
    std::size_t total_rank() const { return reps_.size(); }
    bool acyclic() const { return reps_.empty(); }

    const std::vector<BitVec>& representatives() const { return reps_; }
    int class_degree(std::size_t k) const { return rep_degree_.at(k); }

    std::vector<std::size_t> classes_in_degree(int degree) const
    {
        std::vector<std::size_t> out;
        for (std::size_t k = 0; k < reps_.size(); ++k) {
            if (rep_degree_[k] == degree) {
                out.push_back(k);
            }
        }
        return out;
    }

    bool is_boundary(const BitVec& z) const
    {
        auto combo = solver_.solve(z);
        if (!combo) {
            return false;
        }
        for (auto i : combo->ones()) {
            if (i >= n_) {
                return false;
            }
        }
        return true;
    }

    /// Coordinates of the class of z; nullopt when z is not a cycle.
    std::optional<BitVec> coordinates(const BitVec& z) const
    {
        auto combo = solver_.solve(z);
        if (!combo) {
            return std::nullopt;
        }
        BitVec out(reps_.size());
        for (auto i : combo->ones()) {
            if (i >= n_) {
                out.flip(candidate_to_rep_.at(i));
            }
        }
        return out;
    }

    /// As coordinates(), but throws when z is not a cycle.
    BitVec class_of(const BitVec& z) const
    {
        auto c = coordinates(z);
        if (!c) {
            throw MathError("not-a-cycle", "vector is not a cycle of the complex");
        }
        return *c;
    }

private:
    std::size_t n_;
    SpanSolver solver_;
    std::map<int, std::size_t> ranks_;
    std::vector<BitVec> reps_;
    std::vector<int> rep_degree_;
    std::map<std::size_t, std::size_t> candidate_to_rep_;
};

/// A degree-preserving linear map between complexes, stored as one
/// matrix from source cells to target cells.
class ChainMap {
public:
    ChainMap(ChainComplex source, ChainComplex target, Gf2Matrix matrix)
        : source_(std::move(source)), target_(std::move(target)), m_(std::move(matrix))
    {
        if (m_.rows() != target_.size() || m_.cols() != source_.size()) {
            throw ComplexError("bad-shape", "chain map matrix " + m_.shape() + " does not match complexes " +
                                                std::to_string(source_.size()) + " -> " +
                                                std::to_string(target_.size()),
                               std::nullopt);
        }
        for (auto [r, c] : m_.entries()) {
            if (target_.cell(r).degree != source_.cell(c).degree) {
                throw ComplexError("degree", "map entry " + source_.cell(c).label + " -> " + target_.cell(r).label +
                                                 " is not degree preserving",
                                   source_.cell(c).degree);
            }
        }
        if (source_.direction() != target_.direction()) {
            throw ComplexError("direction", "chain map between complexes of opposite direction", std::nullopt);
        }
    }

    static ChainMap identity(const ChainComplex& c) { return ChainMap(c, c, Gf2Matrix::identity(c.size())); }

    const ChainComplex& source() const { return source_; }
    const ChainComplex& target() const { return target_; }
    const Gf2Matrix& matrix() const { return m_; }

    /// Component in degree d, from source cells of degree d to target cells of degree d.
    Gf2Matrix component(int d) const { return m_.submatrix(target_.cells_in_degree(d), source_.cells_in_degree(d)); }

    ChainMap then(const ChainMap& next) const
    {
        if (!(next.source_ == target_)) {
            throw ComplexError("compose", "composed chain maps do not share a complex", std::nullopt);
        }
        return ChainMap(source_, next.target_, next.m_ * m_);
    }

private:
    ChainComplex source_;
    ChainComplex target_;
    Gf2Matrix m_;
};

struct ChainMapCheck {
    bool pass = true;
    std::optional<int> degree;  ///< source degree of the first violation
    std::string detail;
};

/// Checks d_target * f == f * d_source, reporting the lowest violating source degree.
inline ChainMapCheck verify_chain_map(const ChainMap& f)
{
    const Gf2Matrix diff = f.target().boundary() * f.matrix() + f.matrix() * f.source().boundary();
    ChainMapCheck out;
    for (auto [r, c] : diff.entries()) {
        const int deg = f.source().cell(c).degree;
        if (out.pass || deg < *out.degree) {
            out.pass = false;
            out.degree = deg;
            out.detail = "boundary commutation fails on " + f.source().cell(c).label + " (target " +
                         f.target().cell(r).label + ")";
        }
    }
    return out;
}

/// Matrix of the map induced on homology by an arbitrary linear map that
/// sends cycles to cycles and boundaries to boundaries (degree shifts are
/// allowed; classes use the Homology numbering).
inline Gf2Matrix induced_map(const Homology& source, const Homology& target, const Gf2Matrix& map)
{
    Gf2Matrix out(target.total_rank(), source.total_rank());
    const auto& reps = source.representatives();
    for (std::size_t k = 0; k < reps.size(); ++k) {
        auto coords = target.coordinates(map.apply(reps[k]));
        if (!coords) {
            throw MathError("not-a-chain-map", "map sends a cycle to a non-cycle");
        }
        out.set_column(k, *coords);
    }
    return out;
}

/// Rows/columns of a homology-level matrix restricted to classes of the given degrees.
inline Gf2Matrix graded_block(const Gf2Matrix& m, const Homology& target, int target_degree, const Homology& source,
                              int source_degree)
{
    return m.submatrix(target.classes_in_degree(target_degree), source.classes_in_degree(source_degree));
}

/// Square matrix with a 1 exactly where rows and columns carry the same label.
inline Gf2Matrix label_matching(const ChainComplex& from, const ChainComplex& to)
{
    Gf2Matrix m(to.size(), from.size());
    for (std::size_t c = 0; c < from.size(); ++c) {
        if (auto r = to.index_of(from.cell(c).label)) {
            m.set(*r, c, true);
        }
    }
    return m;
}

}  // namespace lchsft
