#pragma once

// The free unital noncommutative DGA over GF(2) on a finite set of Reeb
// chords: words, sums of words, the Leibniz extension of a differential
// given on generators, and the structural checks (square, grading, action).

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lchsft/errors.hpp"
#include "lchsft/rational.hpp"

namespace lchsft {

struct Generator {
    std::string name;
    int degree = 0;
    Rational action{1};
    std::optional<std::pair<int, int>> mixed;  ///< (from-piece, to-piece); pure when empty
};

/// Generator indices; the empty word is the unit.
using Word = std::vector<std::size_t>;

/// A finite GF(2) sum of words. Adding a word already present cancels it.
class Gf2Sum {
public:
    Gf2Sum() = default;
    static Gf2Sum unit() { return Gf2Sum::of(Word{}); }
    static Gf2Sum of(Word w)
    {
        Gf2Sum s;
        s.add(std::move(w));
        return s;
    }

    void add(const Word& w)
    {
        if (!words_.erase(w)) {
            words_.insert(w);
        }
    }

    Gf2Sum& operator+=(const Gf2Sum& other)
    {
        for (const auto& w : other.words_) {
            add(w);
        }
        return *this;
    }

    friend Gf2Sum operator+(Gf2Sum a, const Gf2Sum& b) { return a += b; }

    friend Gf2Sum operator*(const Gf2Sum& a, const Gf2Sum& b)
    {
        Gf2Sum out;
        for (const auto& u : a.words_) {
            for (const auto& v : b.words_) {
                Word w = u;
                w.insert(w.end(), v.begin(), v.end());
                out.add(w);
            }
        }
        return out;
    }

    bool operator==(const Gf2Sum&) const = default;

    const std::set<Word>& words() const { return words_; }
    bool empty() const { return words_.empty(); }
    bool has_constant() const { return words_.count(Word{}) > 0; }

    /// Summands of the given word length.
    Gf2Sum length_part(std::size_t len) const
    {
        Gf2Sum out;
        for (const auto& w : words_) {
            if (w.size() == len) {
                out.words_.insert(w);
            }
        }
        return out;
    }

private:
    std::set<Word> words_;
};

class DgaPresentation {
public:
    DgaPresentation() = default;

    /// Validates unique names, positive actions, and that every word
    /// refers to a declared generator. A missing differential is zero.
    DgaPresentation(int ambient_n, std::vector<Generator> gens, std::vector<Gf2Sum> differential)
        : ambient_n_(ambient_n), gens_(std::move(gens)), d_(std::move(differential))
    {
        if (d_.empty()) {
            d_.resize(gens_.size());
        }
        if (d_.size() != gens_.size()) {
            throw InputError("dga", "one differential per generator is required");
        }
        std::set<std::string> names;
        for (const auto& g : gens_) {
            if (!names.insert(g.name).second) {
                throw InputError("duplicate-generator", "generator '" + g.name + "' declared twice");
            }
            if (g.action <= 0) {
                throw InputError("action", "action must be positive (generator '" + g.name + "')");
            }
        }
        for (const auto& s : d_) {
            for (const auto& w : s.words()) {
                for (auto i : w) {
                    if (i >= gens_.size()) {
                        throw InputError("unknown-generator", "word refers to generator index " + std::to_string(i));
                    }
                }
            }
        }
    }

    int ambient_n() const { return ambient_n_; }
    std::size_t size() const { return gens_.size(); }
    const std::vector<Generator>& generators() const { return gens_; }
    const Generator& generator(std::size_t i) const { return gens_.at(i); }
    const std::vector<Gf2Sum>& differential() const { return d_; }
    const Gf2Sum& d(std::size_t i) const { return d_.at(i); }

    std::optional<std::size_t> index_of(const std::string& name) const
    {
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            if (gens_[i].name == name) {
                return i;
            }
        }
        return std::nullopt;
    }

    std::size_t require_index(const std::string& name) const
    {
        auto i = index_of(name);
        if (!i) {
            throw InputError("unknown-generator", "unknown generator '" + name + "'");
        }
        return *i;
    }

    int word_degree(const Word& w) const
    {
        int d = 0;
        for (auto i : w) {
            d += gens_.at(i).degree;
        }
        return d;
    }

    Rational word_action(const Word& w) const
    {
        Rational a(0);
        for (auto i : w) {
            a += gens_.at(i).action;
        }
        return a;
    }

    std::string format(const Word& w) const
    {
        if (w.empty()) {
            return "1";
        }
        std::string out;
        for (auto i : w) {
            if (!out.empty()) {
                out += ' ';
            }
            out += gens_.at(i).name;
        }
        return out;
    }

    std::string format(const Gf2Sum& s) const
    {
        if (s.empty()) {
            return "0";
        }
        std::string out;
        for (const auto& w : s.words()) {
            if (!out.empty()) {
                out += " + ";
            }
            out += format(w);
        }
        return out;
    }

    /// Same generators with a replaced differential (revalidated).
    DgaPresentation with_differential(std::vector<Gf2Sum> d) const { return {ambient_n_, gens_, std::move(d)}; }

private:
    int ambient_n_ = 0;
    std::vector<Generator> gens_;
    std::vector<Gf2Sum> d_;
};

/// Extends a differential given on generators to sums of words by the
/// Leibniz rule; the unit is closed.
inline Gf2Sum leibniz_extend(const std::vector<Gf2Sum>& d, const Gf2Sum& s)
{
    Gf2Sum out;
    for (const auto& w : s.words()) {
        for (std::size_t j = 0; j < w.size(); ++j) {
            if (w[j] >= d.size()) {
                throw InputError("unknown-generator", "word refers to generator index " + std::to_string(w[j]));
            }
            const Gf2Sum left = Gf2Sum::of(Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(j)));
            const Gf2Sum right = Gf2Sum::of(Word(w.begin() + static_cast<std::ptrdiff_t>(j) + 1, w.end()));
            out += left * d[w[j]] * right;
        }
    }
    return out;
}

inline Gf2Sum leibniz_extend(const DgaPresentation& dga, const Gf2Sum& s)
{
    return leibniz_extend(dga.differential(), s);
}

struct DgaViolation {
    std::string check;  ///< "square", "degree" or "action"
    std::string generator;
    std::string detail;
};

struct DgaReport {
    std::vector<DgaViolation> violations;
    bool pass() const { return violations.empty(); }
    bool failed(const std::string& check) const
    {
        for (const auto& v : violations) {
            if (v.check == check) {
                return true;
            }
        }
        return false;
    }
};

inline DgaReport check_dga(const DgaPresentation& dga)
{
    DgaReport r;
    for (std::size_t c = 0; c < dga.size(); ++c) {
        const auto& g = dga.generator(c);
        const auto& dc = dga.d(c);
        const Gf2Sum sq = leibniz_extend(dga, dc);
        if (!sq.empty()) {
            r.violations.push_back({"square", g.name, "d^2 " + g.name + " = " + dga.format(sq)});
        }
        for (const auto& w : dc.words()) {
            if (dga.word_degree(w) != g.degree - 1) {
                r.violations.push_back({"degree", g.name,
                                        "word '" + dga.format(w) + "' has degree " +
                                            std::to_string(dga.word_degree(w)) + ", expected " +
                                            std::to_string(g.degree - 1)});
            }
            if (dga.word_action(w) >= g.action) {
                r.violations.push_back({"action", g.name,
                                        "word '" + dga.format(w) + "' has action " +
                                            to_string(dga.word_action(w)) + ", not below " + to_string(g.action)});
            }
        }
    }
    return r;
}

/// Length-1 part of each generator's image under a conjugated differential:
/// the differential induced on A_1 / A_2. Each entry lists generator indices.
inline std::vector<std::vector<std::size_t>> word_length_truncate(const DgaPresentation& dga,
                                                                  const std::vector<Gf2Sum>& conjugated)
{
    if (conjugated.size() != dga.size()) {
        throw InputError("dga", "conjugated differential has the wrong number of generators");
    }
    std::vector<std::vector<std::size_t>> out(dga.size());
    for (std::size_t c = 0; c < dga.size(); ++c) {
        if (conjugated[c].has_constant()) {
            throw MathError("filtration", "differential of " + dga.generator(c).name +
                                              " has a constant term and does not preserve word length");
        }
        const auto linear = conjugated[c].length_part(1);
        for (const auto& w : linear.words()) {
            out[c].push_back(w[0]);
        }
    }
    return out;
}

}  // namespace lchsft
