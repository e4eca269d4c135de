#pragma once

// Exhaustive reference computations. They share no elimination code with
// the library: homology by counting vectors, augmentations by trying every
// assignment.

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "lchsft/complex.hpp"
#include "lchsft/dga.hpp"

namespace lchsft::oracle {

namespace detail {

inline int log2_exact(std::size_t n)
{
    int k = 0;
    while ((std::size_t{1} << k) < n) {
        ++k;
    }
    if ((std::size_t{1} << k) != n) {
        throw std::logic_error("subspace size is not a power of two");
    }
    return k;
}

/// Image of the bitmask x (over `from`) under m, as a bitmask over `to`.
inline std::uint32_t image(const std::vector<std::vector<bool>>& m, std::uint32_t x)
{
    std::uint32_t y = 0;
    for (std::size_t c = 0; c < m.size(); ++c) {
        if (x >> c & 1U) {
            for (std::size_t r = 0; r < m[c].size(); ++r) {
                if (m[c][r]) {
                    y ^= 1U << r;
                }
            }
        }
    }
    return y;
}

}  // namespace detail

/// Degree -> rank, by enumerating kernels and images. Needs at most 20
/// cells per degree. Entries are read through Gf2Matrix::get only.
inline std::map<int, std::size_t> homology_ranks(int direction, const std::vector<int>& degree,
                                                 const Gf2Matrix& boundary)
{
    std::set<int> degs(degree.begin(), degree.end());
    auto cells = [&](int d) {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < degree.size(); ++i) {
            if (degree[i] == d) {
                out.push_back(i);
            }
        }
        if (out.size() > 20) {
            throw std::invalid_argument("oracle limited to 20 cells per degree");
        }
        return out;
    };
    auto block = [&](const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
        std::vector<std::vector<bool>> m(cols.size(), std::vector<bool>(rows.size(), false));
        for (std::size_t c = 0; c < cols.size(); ++c) {
            for (std::size_t r = 0; r < rows.size(); ++r) {
                m[c][r] = boundary.get(rows[r], cols[c]);
            }
        }
        return m;
    };
    std::map<int, std::size_t> out;
    for (int d : degs) {
        const auto here = cells(d);
        const auto next = cells(d + direction);
        const auto prev = cells(d - direction);
        const auto out_map = block(next, here);
        const auto in_map = block(here, prev);
        std::size_t kernel = 0;
        for (std::uint32_t x = 0; x < (1U << here.size()); ++x) {
            kernel += detail::image(out_map, x) == 0 ? 1 : 0;
        }
        std::set<std::uint32_t> im;
        for (std::uint32_t x = 0; x < (1U << prev.size()); ++x) {
            im.insert(detail::image(in_map, x));
        }
        const int r = detail::log2_exact(kernel) - detail::log2_exact(im.size());
        if (r > 0) {
            out[d] = static_cast<std::size_t>(r);
        }
    }
    return out;
}

inline std::map<int, std::size_t> homology_ranks(const ChainComplex& c)
{
    std::vector<int> degree;
    for (const auto& cell : c.cells()) {
        degree.push_back(cell.degree);
    }
    return homology_ranks(c.direction(), degree, c.boundary());
}

/// Every assignment of the variables (degree 0 when graded) checked
/// against every relation e(dc) = 0, in increasing binary order with the
/// first variable most significant.
inline std::vector<std::vector<bool>> augmentations(const DgaPresentation& dga, bool graded = true)
{
    std::vector<std::size_t> vars;
    for (std::size_t i = 0; i < dga.size(); ++i) {
        if (!graded || dga.generator(i).degree == 0) {
            vars.push_back(i);
        }
    }
    if (vars.size() > 24) {
        throw std::invalid_argument("oracle limited to 24 variables");
    }
    std::vector<std::vector<bool>> out;
    const std::size_t k = vars.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        std::vector<bool> value(dga.size(), false);
        for (std::size_t j = 0; j < k; ++j) {
            value[vars[j]] = (mask >> (k - 1 - j)) & 1U;
        }
        bool ok = true;
        for (std::size_t c = 0; ok && c < dga.size(); ++c) {
            int parity = 0;
            for (const auto& w : dga.d(c).words()) {
                int prod = 1;
                for (auto g : w) {
                    prod &= value[g] ? 1 : 0;
                }
                parity ^= prod;
            }
            ok = parity == 0;
        }
        if (ok) {
            out.push_back(value);
        }
    }
    return out;
}

}  // namespace lchsft::oracle
