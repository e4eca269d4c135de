#pragma once

// Dense bit vectors and sparse matrices over GF(2), plus the elimination
// helpers every other module builds on.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lchsft {

class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

    static BitVec unit(std::size_t n, std::size_t i)
    {
        BitVec v(n);
        v.set(i);
        return v;
    }

    std::size_t size() const { return size_; }

    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
    void set(std::size_t i, bool value = true)
    {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (value) {
            words_[i >> 6] |= mask;
        } else {
            words_[i >> 6] &= ~mask;
        }
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    BitVec& operator^=(const BitVec& other)
    {
        if (other.size_ != size_) {
            throw std::invalid_argument("BitVec size mismatch");
        }
        for (std::size_t w = 0; w < words_.size(); ++w) {
            words_[w] ^= other.words_[w];
        }
        return *this;
    }
    friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }

    bool any() const
    {
        return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
    }
    bool none() const { return !any(); }

    std::size_t count() const
    {
        std::size_t c = 0;
        for (auto w : words_) {
            c += static_cast<std::size_t>(std::popcount(w));
        }
        return c;
    }

    /// Index of the lowest set bit, or size() when the vector is zero.
    std::size_t first() const
    {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            if (words_[w] != 0) {
                return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
            }
        }
        return size_;
    }

    std::vector<std::size_t> ones() const
    {
        std::vector<std::size_t> out;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits != 0) {
                out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
                bits &= bits - 1;
            }
        }
        return out;
    }

    /// GF(2) inner product.
    bool dot(const BitVec& other) const
    {
        std::uint64_t acc = 0;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            acc ^= words_[w] & other.words_[w];
        }
        return (std::popcount(acc) & 1) != 0;
    }

    bool operator==(const BitVec&) const = default;

    std::string to_string() const
    {
        std::string s(size_, '0');
        for (std::size_t i = 0; i < size_; ++i) {
            if (test(i)) {
                s[i] = '1';
            }
        }
        return s;
    }

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Sparse GF(2) matrix stored as the set of positions holding a 1, kept
/// column-major with sorted row indices. Column j is the image of basis
/// vector j.
class Gf2Matrix {
public:
    Gf2Matrix() = default;
    Gf2Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), col_(cols) {}

    static Gf2Matrix identity(std::size_t n)
    {
        Gf2Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m.col_[i].push_back(i);
        }
        return m;
    }

    static Gf2Matrix from_entries(std::size_t rows, std::size_t cols,
                                  const std::vector<std::pair<std::size_t, std::size_t>>& entries)
    {
        Gf2Matrix m(rows, cols);
        for (auto [r, c] : entries) {
            if (m.get(r, c)) {
                throw std::invalid_argument("duplicate matrix position (" + std::to_string(r) + ", " +
                                            std::to_string(c) + ")");
            }
            m.set(r, c, true);
        }
        return m;
    }

    static Gf2Matrix from_columns(std::size_t rows, const std::vector<BitVec>& columns)
    {
        Gf2Matrix m(rows, columns.size());
        for (std::size_t c = 0; c < columns.size(); ++c) {
            m.set_column(c, columns[c]);
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const
    {
        check(r, c);
        return std::binary_search(col_[c].begin(), col_[c].end(), r);
    }

    void set(std::size_t r, std::size_t c, bool value)
    {
        check(r, c);
        auto& col = col_[c];
        auto it = std::lower_bound(col.begin(), col.end(), r);
        const bool present = it != col.end() && *it == r;
        if (value && !present) {
            col.insert(it, r);
        } else if (!value && present) {
            col.erase(it);
        }
    }

    void flip(std::size_t r, std::size_t c) { set(r, c, !get(r, c)); }

    const std::vector<std::size_t>& column_rows(std::size_t c) const { return col_.at(c); }

    BitVec column(std::size_t c) const
    {
        BitVec v(rows_);
        for (auto r : col_.at(c)) {
            v.set(r);
        }
        return v;
    }

    void set_column(std::size_t c, const BitVec& v)
    {
        if (v.size() != rows_) {
            throw std::invalid_argument("column length mismatch");
        }
        col_.at(c) = v.ones();
    }

    std::vector<std::pair<std::size_t, std::size_t>> entries() const
    {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t c = 0; c < cols_; ++c) {
            for (auto r : col_[c]) {
                out.emplace_back(r, c);
            }
        }
        return out;
    }

    std::size_t nnz() const
    {
        std::size_t n = 0;
        for (const auto& col : col_) {
            n += col.size();
        }
        return n;
    }

    bool is_zero() const { return nnz() == 0; }

    BitVec apply(const BitVec& x) const
    {
        if (x.size() != cols_) {
            throw std::invalid_argument("apply: vector length " + std::to_string(x.size()) +
                                        " does not match " + std::to_string(cols_) + " columns");
        }
        BitVec y(rows_);
        for (auto c : x.ones()) {
            for (auto r : col_[c]) {
                y.flip(r);
            }
        }
        return y;
    }

    Gf2Matrix transpose() const
    {
        Gf2Matrix t(cols_, rows_);
        for (std::size_t c = 0; c < cols_; ++c) {
            for (auto r : col_[c]) {
                t.col_[r].push_back(c);
            }
        }
        return t;
    }

    /// Rows and columns picked by index lists, in the given order.
    Gf2Matrix submatrix(const std::vector<std::size_t>& row_idx, const std::vector<std::size_t>& col_idx) const
    {
        std::vector<std::size_t> row_pos(rows_, SIZE_MAX);
        for (std::size_t i = 0; i < row_idx.size(); ++i) {
            row_pos.at(row_idx[i]) = i;
        }
        Gf2Matrix s(row_idx.size(), col_idx.size());
        for (std::size_t j = 0; j < col_idx.size(); ++j) {
            for (auto r : col_.at(col_idx[j])) {
                if (row_pos[r] != SIZE_MAX) {
                    s.col_[j].push_back(row_pos[r]);
                }
            }
            std::sort(s.col_[j].begin(), s.col_[j].end());
        }
        return s;
    }

    std::size_t rank() const;

    friend Gf2Matrix operator*(const Gf2Matrix& a, const Gf2Matrix& b)
    {
        if (a.cols_ != b.rows_) {
            throw std::invalid_argument("matrix product shape mismatch: " + a.shape() + " * " + b.shape());
        }
        Gf2Matrix p(a.rows_, b.cols_);
        for (std::size_t c = 0; c < b.cols_; ++c) {
            BitVec acc(a.rows_);
            for (auto k : b.col_[c]) {
                for (auto r : a.col_[k]) {
                    acc.flip(r);
                }
            }
            p.col_[c] = acc.ones();
        }
        return p;
    }

    friend Gf2Matrix operator+(const Gf2Matrix& a, const Gf2Matrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
            throw std::invalid_argument("matrix sum shape mismatch: " + a.shape() + " + " + b.shape());
        }
        Gf2Matrix s(a.rows_, a.cols_);
        for (std::size_t c = 0; c < a.cols_; ++c) {
            std::set_symmetric_difference(a.col_[c].begin(), a.col_[c].end(), b.col_[c].begin(), b.col_[c].end(),
                                          std::back_inserter(s.col_[c]));
        }
        return s;
    }

    bool operator==(const Gf2Matrix&) const = default;

    std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

private:
    void check(std::size_t r, std::size_t c) const
    {
        if (r >= rows_ || c >= cols_) {
            throw std::out_of_range("matrix position (" + std::to_string(r) + ", " + std::to_string(c) +
                                    ") outside " + shape());
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::vector<std::size_t>> col_;
};

/// Incremental row echelon basis of a subspace of GF(2)^n. Each stored
/// vector also remembers which inserted vectors it is the sum of, so a
/// member of the span can be written back in terms of the inputs.
class SpanSolver {
public:
    explicit SpanSolver(std::size_t ambient) : ambient_(ambient) {}

    std::size_t ambient() const { return ambient_; }
    std::size_t inserted() const { return inserted_; }
    std::size_t dim() const { return rows_.size(); }

    /// Adds a generator; returns true when it enlarges the span.
    bool insert(const BitVec& v)
    {
        const std::size_t id = inserted_++;
        for (auto& row : rows_) {
            row.combo = grow(row.combo);
        }
        BitVec combo(inserted_);
        combo.set(id);
        BitVec r = v;
        reduce_in_place(r, combo);
        if (r.none()) {
            dependencies_.push_back(combo);
            return false;
        }
        const std::size_t pivot = r.first();
        // keep rows fully reduced on their pivots
        for (auto& row : rows_) {
            if (row.vec.test(pivot)) {
                row.vec ^= r;
                row.combo ^= combo;
            }
        }
        auto pos = std::lower_bound(rows_.begin(), rows_.end(), pivot,
                                    [](const Row& row, std::size_t p) { return row.pivot < p; });
        rows_.insert(pos, Row{pivot, std::move(r), std::move(combo)});
        return true;
    }

    bool contains(const BitVec& v) const { return reduce(v).none(); }

    BitVec reduce(const BitVec& v) const
    {
        BitVec r = v;
        BitVec combo(inserted_);
        reduce_in_place(r, combo);
        return r;
    }

    /// Coefficients (over the inserted generators) of a combination equal to v.
    std::optional<BitVec> solve(const BitVec& v) const
    {
        BitVec r = v;
        BitVec combo(inserted_);
        reduce_in_place(r, combo);
        if (r.any()) {
            return std::nullopt;
        }
        return combo;
    }

    /// Linear relations among the inserted generators found so far, each a
    /// combination summing to zero.
    std::vector<BitVec> dependencies() const
    {
        std::vector<BitVec> out;
        for (const auto& d : dependencies_) {
            out.push_back(pad(d, inserted_));
        }
        return out;
    }

    std::vector<BitVec> basis() const
    {
        std::vector<BitVec> out;
        for (const auto& row : rows_) {
            out.push_back(row.vec);
        }
        return out;
    }

private:
    struct Row {
        std::size_t pivot;
        BitVec vec;
        BitVec combo;
    };

    static BitVec pad(const BitVec& v, std::size_t n)
    {
        BitVec out(n);
        for (auto i : v.ones()) {
            out.set(i);
        }
        return out;
    }

    BitVec grow(const BitVec& v) const { return pad(v, inserted_); }

    void reduce_in_place(BitVec& r, BitVec& combo) const
    {
        if (r.size() != ambient_) {
            throw std::invalid_argument("SpanSolver: vector length mismatch");
        }
        for (const auto& row : rows_) {
            if (r.test(row.pivot)) {
                r ^= row.vec;
                combo ^= pad(row.combo, combo.size());
            }
        }
    }

    std::size_t ambient_;
    std::size_t inserted_ = 0;
    std::vector<Row> rows_;
    std::vector<BitVec> dependencies_;
};

inline std::size_t Gf2Matrix::rank() const
{
    SpanSolver s(rows_);
    for (std::size_t c = 0; c < cols_; ++c) {
        s.insert(column(c));
    }
    return s.dim();
}

/// Basis of the null space of m, obtained by eliminating columns in index
/// order. The result is deterministic in the column order.
inline std::vector<BitVec> kernel_basis(const Gf2Matrix& m)
{
    SpanSolver s(m.rows());
    for (std::size_t c = 0; c < m.cols(); ++c) {
        s.insert(m.column(c));
    }
    return s.dependencies();
}

/// Some x with m x = y, if one exists.
inline std::optional<BitVec> solve(const Gf2Matrix& m, const BitVec& y)
{
    SpanSolver s(m.rows());
    for (std::size_t c = 0; c < m.cols(); ++c) {
        s.insert(m.column(c));
    }
    return s.solve(y);
}

/// Inverse of a square invertible matrix.
inline Gf2Matrix inverse(const Gf2Matrix& m)
{
    if (m.rows() != m.cols() || m.rank() != m.rows()) {
        throw std::invalid_argument("matrix " + m.shape() + " is not invertible");
    }
    Gf2Matrix out(m.rows(), m.rows());
    for (std::size_t j = 0; j < m.rows(); ++j) {
        out.set_column(j, *solve(m, BitVec::unit(m.rows(), j)));
    }
    return out;
}

}  // namespace lchsft
