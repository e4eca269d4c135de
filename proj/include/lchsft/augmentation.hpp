#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "lchsft/complex.hpp"
#include "lchsft/dga.hpp"

namespace lchsft {

/// A unital algebra map to GF(2), stored by its values on generators.
struct Augmentation {
    std::vector<bool> value;

    bool operator==(const Augmentation&) const = default;
    bool operator<(const Augmentation& o) const { return value < o.value; }

    bool of(const Word& w) const
    {
        for (auto i : w) {
            if (!value.at(i)) {
                return false;
            }
        }
        return true;
    }

    bool of(const Gf2Sum& s) const
    {
        bool out = false;
        for (const auto& w : s.words()) {
            out ^= of(w);
        }
        return out;
    }
};

/// Generators allowed to take the value 1: degree 0 in graded mode, all otherwise.
inline std::vector<std::size_t> augmentation_variables(const DgaPresentation& dga, bool graded = true)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < dga.size(); ++i) {
        if (!graded || dga.generator(i).degree == 0) {
            out.push_back(i);
        }
    }
    return out;
}

/// Values on the variables, e.g. "101".
inline std::string augmentation_bits(const DgaPresentation& dga, const Augmentation& e, bool graded = true)
{
    std::string s;
    for (auto i : augmentation_variables(dga, graded)) {
        s += e.value.at(i) ? '1' : '0';
    }
    return s;
}

inline bool is_augmentation(const DgaPresentation& dga, const Augmentation& e, bool graded = true)
{
    if (e.value.size() != dga.size()) {
        return false;
    }
    for (std::size_t i = 0; i < dga.size(); ++i) {
        if (graded && e.value[i] && dga.generator(i).degree != 0) {
            return false;
        }
        if (e.of(dga.d(i))) {
            return false;
        }
    }
    return true;
}

/// All augmentations in lexicographic order of their variable bits.
/// Depth-first over the variables in declaration order; each relation
/// e(dc) = 0 is tested as soon as its last live variable is assigned.
inline std::vector<Augmentation> enumerate_augmentations(const DgaPresentation& dga, bool graded = true)
{
    const auto vars = augmentation_variables(dga, graded);
    std::vector<int> pos(dga.size(), -1);
    for (std::size_t k = 0; k < vars.size(); ++k) {
        pos[vars[k]] = static_cast<int>(k);
    }
    // relations bucketed by the depth at which they become decidable (-1: immediately)
    std::vector<std::vector<std::size_t>> due(vars.size() + 1);
    for (std::size_t c = 0; c < dga.size(); ++c) {
        int last = -1;
        for (const auto& w : dga.d(c).words()) {
            bool live = true;
            int m = -1;
            for (auto i : w) {
                if (pos[i] < 0) {
                    live = false;
                    break;
                }
                m = std::max(m, pos[i]);
            }
            if (live) {
                last = std::max(last, m);
            }
        }
        due[static_cast<std::size_t>(last + 1)].push_back(c);
    }

    std::vector<Augmentation> out;
    Augmentation e{std::vector<bool>(dga.size(), false)};
    auto ok = [&](std::size_t bucket) {
        for (auto c : due[bucket]) {
            if (e.of(dga.d(c))) {
                return false;
            }
        }
        return true;
    };
    if (!ok(0)) {
        return out;
    }
    auto dfs = [&](auto&& self, std::size_t k) -> void {
        if (k == vars.size()) {
            out.push_back(e);
            return;
        }
        for (bool v : {false, true}) {
            e.value[vars[k]] = v;
            if (ok(k + 1)) {
                self(self, k + 1);
            }
        }
        e.value[vars[k]] = false;
    };
    dfs(dfs, 0);
    return out;
}

/// The conjugated differential E_e d E_e^{-1}: every letter b of every word
/// of dc becomes b + e(b). A surviving constant term means e is not an
/// augmentation.
inline std::vector<Gf2Sum> conjugate(const DgaPresentation& dga, const Augmentation& e)
{
    if (e.value.size() != dga.size()) {
        throw InputError("augmentation", "augmentation has the wrong number of values");
    }
    std::vector<Gf2Sum> letters;
    for (std::size_t i = 0; i < dga.size(); ++i) {
        Gf2Sum s = Gf2Sum::of(Word{i});
        if (e.value[i]) {
            s += Gf2Sum::unit();
        }
        letters.push_back(std::move(s));
    }
    std::vector<Gf2Sum> out;
    for (std::size_t c = 0; c < dga.size(); ++c) {
        Gf2Sum image;
        for (const auto& w : dga.d(c).words()) {
            Gf2Sum term = Gf2Sum::unit();
            for (auto i : w) {
                term = term * letters[i];
            }
            image += term;
        }
        if (image.has_constant()) {
            throw MathError("not-augmentation", "conjugated differential of " + dga.generator(c).name +
                                                    " has a constant term: the assignment is not an augmentation");
        }
        out.push_back(std::move(image));
    }
    return out;
}

/// Complex on the chords (labels = generator names, degree |c|, direction -1)
/// whose boundary is the length-1 part of the conjugated differential.
inline ChainComplex linearized_complex(const DgaPresentation& dga, const Augmentation& e)
{
    const auto linear = word_length_truncate(dga, conjugate(dga, e));
    std::vector<Cell> cells;
    for (const auto& g : dga.generators()) {
        cells.push_back({g.name, g.degree});
    }
    Gf2Matrix d(dga.size(), dga.size());
    for (std::size_t c = 0; c < dga.size(); ++c) {
        for (auto b : linear[c]) {
            d.set(b, c, true);
        }
    }
    return ChainComplex(-1, std::move(cells), std::move(d));
}

inline ChainComplex dualize(const ChainComplex& lin) { return lin.dual(); }

/// Degree -> rank, nonzero only.
using Poincare = std::map<int, std::size_t>;

/// Linearized homologies over all augmentations, with multiplicities.
inline std::map<Poincare, std::size_t> poincare_multiset(const DgaPresentation& dga,
                                                         const std::vector<Augmentation>& augs)
{
    std::map<Poincare, std::size_t> out;
    for (const auto& e : augs) {
        ++out[Homology(linearized_complex(dga, e)).ranks()];
    }
    return out;
}

struct HomotopyCheck {
    bool pass = true;
    std::string generator;  ///< first generator where the identity fails
};

/// Checks e-(c) + e+(c) = Omega_K(dc) on every generator, where
/// Omega_K(b1..bm) = sum_j e-(b1..b_{j-1}) K(bj) e+(b_{j+1}..bm) and Omega_K(1) = 0.
inline HomotopyCheck homotopy_check(const DgaPresentation& dga, const Augmentation& minus, const Augmentation& plus,
                                    const std::vector<bool>& k)
{
    if (minus.value.size() != dga.size() || plus.value.size() != dga.size() || k.size() != dga.size()) {
        throw InputError("augmentation", "augmentations and homotopy must have one value per generator");
    }
    auto omega = [&](const Word& w) {
        bool out = false;
        for (std::size_t j = 0; j < w.size(); ++j) {
            bool t = k[w[j]];
            for (std::size_t i = 0; t && i < j; ++i) {
                t = minus.value[w[i]];
            }
            for (std::size_t i = j + 1; t && i < w.size(); ++i) {
                t = plus.value[w[i]];
            }
            out ^= t;
        }
        return out;
    };
    for (std::size_t c = 0; c < dga.size(); ++c) {
        bool rhs = false;
        for (const auto& w : dga.d(c).words()) {
            rhs ^= omega(w);
        }
        if ((minus.value[c] != plus.value[c]) != rhs) {
            return {false, dga.generator(c).name};
        }
    }
    return {};
}

}  // namespace lchsft
