#pragma once

// JSON rendering of results. Keys keep insertion order so reports are
// byte-stable for equal inputs.

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "lchsft/duality.hpp"

namespace lchsft::report {

using Json = nlohmann::ordered_json;

inline Json ranks(const std::map<int, std::size_t>& p)
{
    Json j = Json::object();
    for (const auto& [d, r] : p) {
        j[std::to_string(d)] = r;
    }
    return j;
}

inline Json matrix(const Gf2Matrix& m)
{
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::string s;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            s += m.get(r, c) ? '1' : '0';
        }
        rows.push_back(s);
    }
    return rows;
}

inline Json dga_report(const DgaPresentation& dga, const DgaReport& r)
{
    Json j;
    j["generators"] = dga.size();
    Json checks;
    for (const char* name : {"square", "degree", "action"}) {
        checks[name] = r.failed(name) ? "fail" : "pass";
    }
    j["checks"] = checks;
    Json v = Json::array();
    for (const auto& x : r.violations) {
        v.push_back({{"check", x.check}, {"generator", x.generator}, {"detail", x.detail}});
    }
    j["violations"] = v;
    return j;
}

inline Json poincare_multiset(const std::map<Poincare, std::size_t>& m)
{
    Json out = Json::array();
    for (const auto& [p, k] : m) {
        out.push_back({{"ranks", ranks(p)}, {"multiplicity", k}});
    }
    return out;
}

inline Json les(const LongExactSequence& s)
{
    Json terms = Json::array();
    for (std::size_t t = 0; t < s.terms.size(); ++t) {
        if (s.terms[t].dim == 0) {
            continue;
        }
        terms.push_back({{"space", s.terms[t].space}, {"degree", s.terms[t].degree}, {"dim", s.terms[t].dim}});
    }
    Json fails = Json::array();
    for (const auto& f : s.failures()) {
        fails.push_back(f.reason);
    }
    return {{"nonzero_terms", terms}, {"exact", fails.empty()}, {"failures", fails}};
}

inline Json e1(const E1Result& r)
{
    Json degrees = Json::array();
    for (const auto& d : r.degrees) {
        Json j;
        j["degree"] = d.degree;
        j["rank"] = d.rank;
        j["threshold"] = to_string(d.threshold);
        j["certified"] = d.certified;
        if (d.certificate) {
            j["certificate"] = {to_string(d.certificate->first), to_string(d.certificate->second)};
        }
        degrees.push_back(j);
    }
    Json t = Json::array();
    for (const auto& a : r.thresholds) {
        t.push_back(to_string(a));
    }
    return {{"degrees", degrees},
            {"thresholds", t},
            {"projections_are_chain_maps", r.chain_maps},
            {"projections_compose", r.functorial}};
}

inline Json tower(const std::map<Rational, Poincare>& t)
{
    Json out = Json::array();
    for (const auto& [a, p] : t) {
        out.push_back({{"threshold", to_string(a)}, {"ranks", ranks(p)}});
    }
    return out;
}

inline Json chain_map_check(const ChainMapCheck& c)
{
    Json j{{"pass", c.pass}};
    if (!c.pass) {
        j["degree"] = *c.degree;
        j["detail"] = c.detail;
    }
    return j;
}

/// Indented "key: value" lines for --pretty.
inline void pretty(const Json& j, std::string& out, const std::string& indent = "")
{
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it.value().is_structured() && !it.value().empty()) {
                out += indent + it.key() + ":\n";
                pretty(it.value(), out, indent + "  ");
            } else {
                out += indent + it.key() + ": " + (it.value().is_string() ? it.value().get<std::string>()
                                                                             : it.value().dump()) +
                       "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (v.is_structured() && !v.empty()) {
                out += indent + "-\n";
                pretty(v, out, indent + "  ");
            } else {
                out += indent + "- " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
            }
        }
    } else {
        out += indent + (j.is_string() ? j.get<std::string>() : j.dump()) + "\n";
    }
}

}  // namespace lchsft::report
