#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <boost/rational.hpp>

namespace lchsft {

using Rational = boost::rational<std::int64_t>;

/// Parses "p", "p/q" or a finite decimal "p.ddd"; nullopt on bad syntax,
/// zero denominators or overflow.
inline std::optional<Rational> parse_rational(const std::string& text)
{
    if (text.empty()) {
        return std::nullopt;
    }
    auto parse_int = [](const std::string& s, bool allow_sign) -> std::optional<std::int64_t> {
        std::size_t i = 0;
        bool neg = false;
        if (allow_sign && i < s.size() && (s[i] == '-' || s[i] == '+')) {
            neg = s[i] == '-';
            ++i;
        }
        if (i == s.size()) {
            return std::nullopt;
        }
        std::int64_t v = 0;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') {
                return std::nullopt;
            }
            if (v > (INT64_MAX - 9) / 10) {
                return std::nullopt;
            }
            v = v * 10 + (s[i] - '0');
        }
        return neg ? -v : v;
    };
    try {
        if (auto slash = text.find('/'); slash != std::string::npos) {
            auto p = parse_int(text.substr(0, slash), true);
            auto q = parse_int(text.substr(slash + 1), false);
            if (!p || !q || *q == 0) {
                return std::nullopt;
            }
            return Rational(*p, *q);
        }
        if (auto dot = text.find('.'); dot != std::string::npos) {
            const std::string whole = text.substr(0, dot);
            const std::string frac = text.substr(dot + 1);
            if (frac.empty() || frac.size() > 15 || frac.find_first_not_of("0123456789") != std::string::npos) {
                return std::nullopt;
            }
            const bool neg = !whole.empty() && whole[0] == '-';
            auto w = whole.empty() || whole == "-" || whole == "+" ? std::optional<std::int64_t>(0)
                                                                    : parse_int(whole, true);
            auto f = parse_int(frac, false);
            if (!w || !f) {
                return std::nullopt;
            }
            std::int64_t scale = 1;
            for (std::size_t i = 0; i < frac.size(); ++i) {
                scale *= 10;
            }
            Rational r(*w < 0 ? -*w : *w);
            r += Rational(*f, scale);
            return neg ? -r : r;
        }
        auto p = parse_int(text, true);
        if (!p) {
            return std::nullopt;
        }
        return Rational(*p);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

inline std::string to_string(const Rational& r)
{
    if (r.denominator() == 1) {
        return std::to_string(r.numerator());
    }
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace lchsft
