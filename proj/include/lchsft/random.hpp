#pragma once

// Seeded generators of random valid inputs. Complexes are built as sums
// of zero and cancelling pieces, then scrambled by elementary basis
// changes, so every instance satisfies d^2 = 0 by construction.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lchsft/duality.hpp"
#include "lchsft/spectral.hpp"

namespace lchsft::random {

using Rng = std::mt19937_64;

inline std::size_t below(Rng& rng, std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng() % n); }
inline int between(Rng& rng, int lo, int hi) { return lo + static_cast<int>(below(rng, static_cast<std::size_t>(hi - lo + 1))); }
inline bool coin(Rng& rng) { return (rng() & 1U) != 0; }

/// x_i -> x_i + x_j on the complex: d' = E d E with E = 1 + e_{j,i}.
inline Gf2Matrix elementary(std::size_t n, std::size_t i, std::size_t j)
{
    auto e = Gf2Matrix::identity(n);
    e.set(j, i, true);
    return e;
}

struct RandomComplexOptions {
    std::size_t cells = 8;
    int lo = -1;
    int hi = 2;
    int direction = -1;
    std::size_t scrambles = 12;
};

/// Labels "g0", "g1", ... with random degrees in [lo, hi].
inline ChainComplex random_complex(Rng& rng, const RandomComplexOptions& opt, const std::vector<int>* levels = nullptr)
{
    const std::size_t n = opt.cells;
    std::vector<Cell> cells;
    for (std::size_t i = 0; i < n; ++i) {
        cells.push_back({"g" + std::to_string(i), between(rng, opt.lo, opt.hi)});
    }
    auto level = [&](std::size_t i) { return levels ? (*levels)[i] : 1; };
    Gf2Matrix d(n, n);
    std::vector<bool> used(n, false);
    for (std::size_t tries = 0; tries < 2 * n; ++tries) {
        const auto x = below(rng, n);
        const auto y = below(rng, n);
        if (x == y || used[x] || used[y] || cells[y].degree != cells[x].degree + opt.direction ||
            level(y) < level(x) || coin(rng)) {
            continue;
        }
        used[x] = used[y] = true;
        d.set(y, x, true);
    }
    for (std::size_t s = 0; s < opt.scrambles; ++s) {
        const auto i = below(rng, n);
        const auto j = below(rng, n);
        if (i == j || cells[i].degree != cells[j].degree || level(j) < level(i)) {
            continue;
        }
        const auto e = elementary(n, i, j);
        d = e * d * e;
    }
    return ChainComplex(opt.direction, std::move(cells), std::move(d));
}

inline FilteredComplex random_filtered_complex(Rng& rng, std::size_t cells, int levels)
{
    std::vector<int> lv;
    for (std::size_t i = 0; i < cells; ++i) {
        lv.push_back(between(rng, 1, levels));
    }
    RandomComplexOptions opt;
    opt.cells = cells;
    opt.lo = -1;
    opt.hi = 2;
    opt.scrambles = 3 * cells;
    auto c = random_complex(rng, opt, &lv);
    return FilteredComplex(std::move(c), std::move(lv));
}

/// A random chain map A -> B: a random combination of a basis of the
/// solution space of d_B f = f d_A over degree-preserving f.
inline ChainMap random_chain_map(Rng& rng, const ChainComplex& a, const ChainComplex& b)
{
    std::vector<std::pair<std::size_t, std::size_t>> slots;  // (row in B, col in A)
    for (std::size_t c = 0; c < a.size(); ++c) {
        for (std::size_t r = 0; r < b.size(); ++r) {
            if (a.cell(c).degree == b.cell(r).degree) {
                slots.emplace_back(r, c);
            }
        }
    }
    // linear map slot -> entries of d_B f + f d_A
    Gf2Matrix sys(b.size() * a.size(), slots.size());
    for (std::size_t s = 0; s < slots.size(); ++s) {
        Gf2Matrix f(b.size(), a.size());
        f.set(slots[s].first, slots[s].second, true);
        const auto g = b.boundary() * f + f * a.boundary();
        for (auto [r, c] : g.entries()) {
            sys.set(r * a.size() + c, s, true);
        }
    }
    Gf2Matrix f(b.size(), a.size());
    for (const auto& k : kernel_basis(sys)) {
        if (coin(rng)) {
            for (auto s : k.ones()) {
                f.flip(slots[s].first, slots[s].second);
            }
        }
    }
    return ChainMap(a, b, f);
}

/// A random elementary DGA-free differential on `gens` generators with
/// words of length up to 3, for Leibniz-rule identities (d^2 need not vanish).
inline DgaPresentation random_derivation(Rng& rng, std::size_t gens)
{
    std::vector<Generator> g;
    for (std::size_t i = 0; i < gens; ++i) {
        g.push_back({"x" + std::to_string(i), between(rng, 0, 2), Rational(between(rng, 1, 9)), std::nullopt});
    }
    std::vector<Gf2Sum> d(gens);
    for (auto& s : d) {
        const auto terms = below(rng, 4);
        for (std::size_t t = 0; t < terms; ++t) {
            Word w;
            const auto len = below(rng, 4);
            for (std::size_t k = 0; k < len; ++k) {
                w.push_back(below(rng, gens));
            }
            s.add(w);
        }
    }
    return DgaPresentation(2, std::move(g), std::move(d));
}

inline Word random_word(Rng& rng, std::size_t gens, std::size_t max_len)
{
    Word w;
    const auto len = below(rng, max_len + 1);
    for (std::size_t k = 0; k < len; ++k) {
        w.push_back(below(rng, gens));
    }
    return w;
}

/// A valid acyclic splitting: Q random, C = (copy of Q) + (copy of P) with
/// rho and sigma the copying maps, then scrambled by basis changes that keep
/// the block-triangular shape, the Q/P duality and the C pairing.
inline DualitySplitting random_splitting(Rng& rng, std::size_t q_cells, int ambient_n = 3)
{
    RandomComplexOptions opt;
    opt.cells = q_cells;
    opt.lo = 0;
    opt.hi = 2;
    opt.direction = -1;
    auto base = random_complex(rng, opt);
    const std::size_t nq = q_cells;

    std::vector<Cell> qcells;
    std::vector<Cell> pcells;
    std::vector<Cell> ccells;
    for (std::size_t i = 0; i < nq; ++i) {
        const int deg = base.cell(i).degree;  // the chord degree |q|
        qcells.push_back({"q" + std::to_string(i), deg + 1});
        pcells.push_back({"p" + std::to_string(i), ambient_n - 2 - deg});
    }
    for (std::size_t i = 0; i < nq; ++i) {
        ccells.push_back({"u" + std::to_string(i), qcells[i].degree - 1});
    }
    for (std::size_t i = 0; i < nq; ++i) {
        ccells.push_back({"w" + std::to_string(i), pcells[i].degree + 1});
    }
    Gf2Matrix dq = base.boundary();
    Gf2Matrix dp = dq.transpose();
    const std::size_t nc = 2 * nq;
    const std::size_t n = 2 * nc;  // q, c, p blocks: nq + 2 nq + nq
    // total matrix in block order q | c | p
    Gf2Matrix d(n, n);
    auto qi = [](std::size_t i) { return i; };
    auto ui = [&](std::size_t i) { return nq + i; };
    auto wi = [&](std::size_t i) { return 2 * nq + i; };
    auto pi = [&](std::size_t i) { return 3 * nq + i; };
    for (auto [r, c] : dq.entries()) {
        d.set(qi(r), qi(c), true);
        d.set(ui(r), ui(c), true);
    }
    for (auto [r, c] : dp.entries()) {
        d.set(pi(r), pi(c), true);
        d.set(wi(r), wi(c), true);
    }
    for (std::size_t i = 0; i < nq; ++i) {
        d.set(ui(i), qi(i), true);  // rho
        d.set(pi(i), wi(i), true);  // sigma
    }
    Gf2Matrix pd(nc, nc);
    for (std::size_t i = 0; i < nq; ++i) {
        pd.set(i, nq + i, true);
        pd.set(nq + i, i, true);
    }
    std::vector<Cell> all = qcells;
    all.insert(all.end(), ccells.begin(), ccells.end());
    all.insert(all.end(), pcells.begin(), pcells.end());
    auto block_of = [&](std::size_t i) { return i < nq ? 0 : i < 3 * nq ? 1 : 2; };

    for (std::size_t s = 0; s < 4 * n; ++s) {
        const auto i = below(rng, n);
        const auto j = below(rng, n);
        if (i == j || all[i].degree != all[j].degree || block_of(j) < block_of(i)) {
            continue;
        }
        const int bi = block_of(i);
        const int bj = block_of(j);
        if (bi == 0 && bj == 0) {
            // q_i -> q_i + q_j and dually p_j -> p_j + p_i
            const std::size_t a = pi(j);
            const std::size_t b = pi(i);
            if (all[a].degree != all[b].degree) {
                continue;
            }
            const auto e = elementary(n, i, j) * elementary(n, a, b);
            d = e * d * e;
        } else if (bi == 2 && bj == 2) {
            continue;  // only moved together with Q
        } else {
            const auto e = elementary(n, i, j);
            d = e * d * e;
            if (bi == 1 && bj == 1) {
                // new basis x_i + x_j: the bilinear form becomes E^T pd E
                const auto ec = elementary(nc, i - nq, j - nq);
                pd = ec.transpose() * pd * ec;
            }
        }
    }

    auto range = [](std::size_t a, std::size_t b) {
        std::vector<std::size_t> v;
        for (std::size_t k = a; k < b; ++k) {
            v.push_back(k);
        }
        return v;
    };
    const auto qs = range(0, nq);
    const auto cs = range(nq, 3 * nq);
    const auto ps = range(3 * nq, n);
    ChainComplex q(-1, qcells, d.submatrix(qs, qs));
    ChainComplex c(-1, ccells, d.submatrix(cs, cs));
    ChainComplex p(-1, pcells, d.submatrix(ps, ps));
    std::vector<std::size_t> partner = range(0, nq);
    return assemble_duality(ambient_n, std::move(q), std::move(c), std::move(p), d.submatrix(cs, qs),
                            d.submatrix(ps, cs), d.submatrix(ps, qs), std::move(partner), std::move(pd));
}

}  // namespace lchsft::random
