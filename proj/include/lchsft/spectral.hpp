#pragma once

// Spectral sequence of a finitely filtered complex.
//
// Levels run 1..k and F^p is spanned by cells of level >= p, so the
// boundary must never lower the level. With
//   Z_r^p = { x in F^p : dx in F^{p+r} }
// the pages are
//   E_r^p = Z_r^p / (Z_{r-1}^{p+1} + d Z_{r-1}^{p-r+1}),
// which gives E_1 = homology of the associated graded. The differential
// d_r : E_r^p -> E_r^{p+r} is computed explicitly on representatives and
// the next page is checked against its homology.

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "lchsft/complex.hpp"

namespace lchsft {

class FilteredComplex {
public:
    FilteredComplex(ChainComplex complex, std::vector<int> levels)
        : complex_(std::move(complex)), levels_(std::move(levels))
    {
        if (levels_.size() != complex_.size()) {
            throw InputError("filtration", "one filtration level per cell is required");
        }
        for (int l : levels_) {
            if (l < 1) {
                throw InputError("filtration", "filtration levels start at 1");
            }
            max_level_ = std::max(max_level_, l);
        }
        for (auto [r, c] : complex_.boundary().entries()) {
            if (levels_[r] < levels_[c]) {
                throw InputError("filtration", "boundary of " + complex_.cell(c).label + " (level " +
                                                   std::to_string(levels_[c]) + ") reaches " +
                                                   complex_.cell(r).label + " (level " +
                                                   std::to_string(levels_[r]) + ")");
            }
        }
    }

    const ChainComplex& complex() const { return complex_; }
    const std::vector<int>& levels() const { return levels_; }
    int max_level() const { return max_level_; }

private:
    ChainComplex complex_;
    std::vector<int> levels_;
    int max_level_ = 1;
};

struct SpectralPage {
    int r = 1;
    std::map<std::pair<int, int>, std::size_t> dims;  ///< (p, degree) -> dim, nonzero only
    bool differential_squares_to_zero = true;
    bool next_page_is_homology = true;  ///< dim E_{r+1} = dim H(E_r, d_r) everywhere
    std::size_t differential_rank = 0;

    std::size_t dim(int p, int degree) const
    {
        auto it = dims.find({p, degree});
        return it == dims.end() ? 0 : it->second;
    }
};

struct SpectralSequence {
    std::vector<SpectralPage> pages;         ///< r = 1, 2, ...
    std::map<int, std::size_t> infinity;     ///< degree -> sum over p of dim E_inf (nonzero only)
    int stable_from = 1;                     ///< E_r = E_inf for every r >= stable_from
};

namespace detail {

class FiltrationSpaces {
public:
    explicit FiltrationSpaces(const FilteredComplex& fc) : fc_(fc), n_(fc.complex().size()) {}

    /// Basis of Z_r^p in degree deg. F^p for p <= 1 is everything; for p > k it is zero.
    std::vector<BitVec> z(int r, int p, int deg) const
    {
        const auto& c = fc_.complex();
        std::vector<std::size_t> cols;
        for (auto i : c.cells_in_degree(deg)) {
            if (fc_.levels()[i] >= p) {
                cols.push_back(i);
            }
        }
        std::vector<std::size_t> rows;
        for (auto i : c.cells_in_degree(deg + c.direction())) {
            if (fc_.levels()[i] < p + r) {
                rows.push_back(i);
            }
        }
        const auto block = c.boundary().submatrix(rows, cols);
        std::vector<BitVec> out;
        for (const auto& k : kernel_basis(block)) {
            BitVec v(n_);
            for (auto j : k.ones()) {
                v.set(cols[j]);
            }
            out.push_back(v);
        }
        return out;
    }

    /// Basis of Z_{r-1}^{p+1} + d Z_{r-1}^{p-r+1} in degree deg.
    std::vector<BitVec> denominator(int r, int p, int deg) const
    {
        auto out = z(r - 1, p + 1, deg);
        const auto& c = fc_.complex();
        for (const auto& x : z(r - 1, p - r + 1, deg - c.direction())) {
            out.push_back(c.boundary().apply(x));
        }
        return out;
    }

    std::size_t n() const { return n_; }

private:
    const FilteredComplex& fc_;
    std::size_t n_;
};

/// E_r^p in one degree: representatives and a solver for coordinates.
struct PageEntry {
    std::vector<BitVec> reps;
    SpanSolver solver;
    std::size_t denom_inserted = 0;

    std::optional<BitVec> coordinates(const BitVec& v) const
    {
        auto combo = solver.solve(v);
        if (!combo) {
            return std::nullopt;
        }
        BitVec out(reps.size());
        for (auto i : combo->ones()) {
            if (i >= denom_inserted) {
                out.flip(rep_of.at(i));
            }
        }
        return out;
    }

    std::map<std::size_t, std::size_t> rep_of;
};

inline PageEntry page_entry(const FiltrationSpaces& fs, int r, int p, int deg)
{
    PageEntry e{{}, SpanSolver(fs.n()), 0, {}};
    for (const auto& v : fs.denominator(r, p, deg)) {
        e.solver.insert(v);
    }
    e.denom_inserted = e.solver.inserted();
    for (const auto& v : fs.z(r, p, deg)) {
        if (e.solver.insert(v)) {
            e.rep_of[e.solver.inserted() - 1] = e.reps.size();
            e.reps.push_back(v);
        }
    }
    return e;
}

}  // namespace detail

/// Pages E_1 .. E_max(r_max, k) of the filtered complex.
inline SpectralSequence spectral_sequence(const FilteredComplex& fc, int r_max)
{
    const auto& c = fc.complex();
    const int k = fc.max_level();
    const int last = std::max(r_max, k);
    const auto degrees = c.degrees();
    detail::FiltrationSpaces fs(fc);

    std::map<std::tuple<int, int, int>, detail::PageEntry> entries;  // (r, p, deg)
    auto entry = [&](int r, int p, int deg) -> const detail::PageEntry& {
        auto key = std::make_tuple(r, p, deg);
        auto it = entries.find(key);
        if (it == entries.end()) {
            it = entries.emplace(key, detail::page_entry(fs, r, p, deg)).first;
        }
        return it->second;
    };

    SpectralSequence out;
    for (int r = 1; r <= last + 1; ++r) {
        SpectralPage page;
        page.r = r;
        for (int p = 1; p <= k; ++p) {
            for (int deg : degrees) {
                const auto n = entry(r, p, deg).reps.size();
                if (n > 0) {
                    page.dims[{p, deg}] = n;
                }
            }
        }
        out.pages.push_back(std::move(page));
    }

    // d_r on representatives, checked against the following page
    for (int r = 1; r <= last; ++r) {
        auto& page = out.pages[static_cast<std::size_t>(r - 1)];
        const auto& next = out.pages[static_cast<std::size_t>(r)];
        std::map<std::pair<int, int>, Gf2Matrix> dr;  // source (p, deg)
        for (int p = 1; p <= k; ++p) {
            for (int deg : degrees) {
                const auto& src = entry(r, p, deg);
                const auto& tgt = entry(r, p + r, deg + c.direction());
                Gf2Matrix m(tgt.reps.size(), src.reps.size());
                for (std::size_t j = 0; j < src.reps.size(); ++j) {
                    auto coords = tgt.coordinates(c.boundary().apply(src.reps[j]));
                    if (!coords) {
                        throw MathError("spectral", "page differential leaves Z_r");
                    }
                    m.set_column(j, *coords);
                }
                page.differential_rank += m.rank();
                dr[{p, deg}] = std::move(m);
            }
        }
        for (int p = 1; p <= k; ++p) {
            for (int deg : degrees) {
                const auto& out_map = dr[{p, deg}];
                const bool has_in = p - r >= 1;
                const Gf2Matrix in_map = has_in ? dr[{p - r, deg - c.direction()}] : Gf2Matrix(out_map.cols(), 0);
                auto it = dr.find({p + r, deg + c.direction()});
                if (it != dr.end() && !(it->second * out_map).is_zero()) {
                    page.differential_squares_to_zero = false;
                }
                const std::size_t homology = out_map.cols() - out_map.rank() - in_map.rank();
                if (homology != next.dim(p, deg)) {
                    page.next_page_is_homology = false;
                }
            }
        }
    }

    out.stable_from = k;
    for (const auto& [key, dim] : out.pages[static_cast<std::size_t>(k - 1)].dims) {
        out.infinity[key.second] += dim;
    }
    return out;
}

}  // namespace lchsft
