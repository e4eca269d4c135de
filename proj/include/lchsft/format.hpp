#pragma once

// Line-oriented input format. The top of a file holds the DGA:
//
//   ambient n <int>
//   gen <name> deg <int> action <num>[/<den>] [mixed <i> <j>]
//   d <name> = <term> (+ <term>)*        terms: 1, 0 or generator names
//
// followed by optional sections:
//
//   [morse lambda] [morse filling]   crit <name> index <int> [action <num>]
//                                    d <crit> = <crit> (+ <crit>)*
//   [connect short] [connect rho]    row <source> = <target> (+ <target>)*
//   [block q]                        d <gen> = <gen> (+ <gen>)*
//   [block c]                        crit ..., d ..., pd <crit> <crit>
//   [block p]                        pair <gen> <name>, d <name> = ...
//   [map rho] [map sigma] [map eta]  row <source> = <target> (+ <target>)*
//
// "#" starts a comment. Long chords may be written <gen>!long and short
// chords <crit>!short.

#include <cctype>
#include <cstdint>
#include <functional>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lchsft/duality.hpp"

namespace lchsft {

struct Token {
    std::string text;
    int col = 1;
};

struct RowLine {
    Token source;
    std::vector<std::vector<Token>> terms;  ///< each term a word; "0" and "1" kept literally
    int line = 0;
};

struct CritLine {
    Token name;
    int index = 0;
    std::optional<Rational> action;
    int line = 0;
};

struct MorseSection {
    bool present = false;
    std::vector<CritLine> crits;
    std::vector<RowLine> d;
};

struct TwoCopyData {
    MorseSection lambda;
    MorseSection filling;
    std::vector<RowLine> connect_short;
    std::vector<RowLine> connect_rho;
};

struct PairLine {
    Token q;
    Token p;
    int line = 0;
};

struct DualityData {
    std::vector<RowLine> q_d;
    MorseSection c;
    std::vector<PairLine> pd;
    std::vector<PairLine> pairs;
    std::vector<RowLine> p_d;
    std::vector<RowLine> rho;
    std::vector<RowLine> sigma;
    std::vector<RowLine> eta;
};

struct Workspace {
    std::string source;
    std::string hash;  ///< FNV-1a 64 of the file bytes, hex
    DgaPresentation dga;
    std::optional<TwoCopyData> two_copy;
    std::optional<DualityData> duality;
};

inline std::string fnv1a_hex(const std::string& bytes)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xF];
        h >>= 4;
    }
    return out;
}

namespace detail {

inline bool name_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.' || c == '-' ||
           c == '!' || c == '/';
}

inline std::vector<Token> tokenize(const std::string& line, int lineno)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        if (c == '#') {
            break;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const int col = static_cast<int>(i) + 1;
        if (c == '+' || c == '=' || c == '[' || c == ']') {
            out.push_back({std::string(1, c), col});
            ++i;
            continue;
        }
        if (!name_char(c)) {
            throw ParseError(lineno, col, std::string("unexpected character '") + c + "'");
        }
        std::size_t j = i;
        while (j < line.size() && name_char(line[j])) {
            ++j;
        }
        out.push_back({line.substr(i, j - i), col});
        i = j;
    }
    return out;
}

class LineParser {
public:
    LineParser(std::vector<Token> toks, int line, std::size_t eol_col) : t_(std::move(toks)), line_(line), eol_(eol_col)
    {
    }

    bool done() const { return k_ >= t_.size(); }
    int line() const { return line_; }

    const Token& next(const std::string& what)
    {
        if (done()) {
            throw ParseError(line_, static_cast<int>(eol_), "expected " + what);
        }
        return t_[k_++];
    }

    void expect(const std::string& word)
    {
        const auto& t = next("'" + word + "'");
        if (t.text != word) {
            throw ParseError(line_, t.col, "expected '" + word + "', found '" + t.text + "'");
        }
    }

    Token name(const std::string& what)
    {
        const auto& t = next(what);
        if (t.text == "+" || t.text == "=" || t.text == "[" || t.text == "]") {
            throw ParseError(line_, t.col, "expected " + what + ", found '" + t.text + "'");
        }
        return t;
    }

    int integer(const std::string& what)
    {
        const auto& t = next(what);
        try {
            std::size_t used = 0;
            const long v = std::stol(t.text, &used);
            if (used == t.text.size() && v >= INT32_MIN && v <= INT32_MAX) {
                return static_cast<int>(v);
            }
        } catch (const std::exception&) {
        }
        throw ParseError(line_, t.col, "expected an integer " + what + ", found '" + t.text + "'");
    }

    std::pair<Rational, int> rational(const std::string& what)
    {
        const auto& t = next(what);
        auto r = parse_rational(t.text);
        if (!r) {
            throw ParseError(line_, t.col, "bad rational number '" + t.text + "'");
        }
        return {*r, t.col};
    }

    /// "<term> (+ <term>)*" until the end of the line.
    std::vector<std::vector<Token>> sum()
    {
        std::vector<std::vector<Token>> terms(1);
        if (done()) {
            throw ParseError(line_, static_cast<int>(eol_), "expected a sum of terms");
        }
        while (!done()) {
            const auto& t = t_[k_++];
            if (t.text == "+") {
                if (terms.back().empty()) {
                    throw ParseError(line_, t.col, "empty term before '+'");
                }
                terms.emplace_back();
            } else if (t.text == "=" || t.text == "[" || t.text == "]") {
                throw ParseError(line_, t.col, "unexpected '" + t.text + "' in sum");
            } else {
                terms.back().push_back(t);
            }
        }
        if (terms.back().empty()) {
            throw ParseError(line_, static_cast<int>(eol_), "sum ends with '+'");
        }
        for (const auto& term : terms) {
            for (const auto& tok : term) {
                if ((tok.text == "0" || tok.text == "1") && term.size() > 1) {
                    throw ParseError(line_, tok.col, "constants must stand alone in a term");
                }
            }
        }
        return terms;
    }

    RowLine row(const std::string& keyword)
    {
        RowLine r;
        r.line = line_;
        r.source = name(keyword + " source");
        expect("=");
        r.terms = sum();
        return r;
    }

    void end()
    {
        if (!done()) {
            throw ParseError(line_, t_[k_].col, "unexpected '" + t_[k_].text + "'");
        }
    }

private:
    std::vector<Token> t_;
    std::size_t k_ = 0;
    int line_;
    std::size_t eol_;
};

enum class Section {
    Dga,
    MorseLambda,
    MorseFilling,
    ConnectShort,
    ConnectRho,
    BlockQ,
    BlockC,
    BlockP,
    MapRho,
    MapSigma,
    MapEta,
};

inline const std::map<std::string, Section>& section_names()
{
    static const std::map<std::string, Section> m{
        {"morse lambda", Section::MorseLambda}, {"morse filling", Section::MorseFilling},
        {"connect short", Section::ConnectShort}, {"connect rho", Section::ConnectRho},
        {"block q", Section::BlockQ}, {"block c", Section::BlockC}, {"block p", Section::BlockP},
        {"map rho", Section::MapRho}, {"map sigma", Section::MapSigma}, {"map eta", Section::MapEta},
    };
    return m;
}

inline void parse_morse_line(LineParser& lp, const Token& head, MorseSection& s)
{
    if (head.text == "crit") {
        CritLine c;
        c.line = lp.line();
        c.name = lp.name("critical point name");
        lp.expect("index");
        c.index = lp.integer("index");
        if (!lp.done()) {
            lp.expect("action");
            auto [a, col] = lp.rational("action");
            if (a <= 0) {
                throw ParseError(lp.line(), col, "action must be positive");
            }
            c.action = a;
        }
        lp.end();
        s.crits.push_back(c);
    } else if (head.text == "d") {
        s.d.push_back(lp.row("d"));
    } else {
        throw ParseError(lp.line(), head.col, "unknown directive '" + head.text + "'");
    }
}

}  // namespace detail

/// Parses the text of a workspace file. All name references are resolved
/// here, so later construction only meets mathematical errors.
inline Workspace parse_workspace(const std::string& text, const std::string& source = "<input>")
{
    using namespace detail;
    Workspace ws;
    ws.source = source;
    ws.hash = fnv1a_hex(text);

    std::optional<int> ambient;
    std::vector<Generator> gens;
    std::vector<std::pair<Token, int>> gen_pos;
    std::vector<RowLine> dlines;
    Section sec = Section::Dga;
    std::set<std::string> seen_sections;
    TwoCopyData tc;
    DualityData du;
    bool any_two_copy = false;
    bool any_duality = false;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r') {
            raw.pop_back();
        }
        auto toks = tokenize(raw, lineno);
        if (toks.empty()) {
            continue;
        }
        if (toks[0].text == "[") {
            std::string name;
            std::size_t k = 1;
            for (; k < toks.size() && toks[k].text != "]"; ++k) {
                name += (name.empty() ? "" : " ") + toks[k].text;
            }
            if (k + 1 != toks.size()) {
                throw ParseError(lineno, toks[0].col, "malformed section header");
            }
            auto it = section_names().find(name);
            if (it == section_names().end()) {
                throw ParseError(lineno, toks[0].col, "unknown section '[" + name + "]'");
            }
            if (!seen_sections.insert(name).second) {
                throw ParseError(lineno, toks[0].col, "section '[" + name + "]' appears twice");
            }
            sec = it->second;
            if (sec == Section::MorseLambda || sec == Section::MorseFilling || sec == Section::ConnectShort ||
                sec == Section::ConnectRho) {
                any_two_copy = true;
            } else {
                any_duality = true;
            }
            if (sec == Section::MorseLambda) {
                tc.lambda.present = true;
            } else if (sec == Section::MorseFilling) {
                tc.filling.present = true;
            } else if (sec == Section::BlockC) {
                du.c.present = true;
            }
            continue;
        }
        const std::size_t eol = raw.find('#') == std::string::npos ? raw.size() + 1 : raw.find('#') + 1;
        LineParser lp(toks, lineno, eol);
        const Token head = lp.next("directive");
        switch (sec) {
        case Section::Dga:
            if (head.text == "ambient") {
                lp.expect("n");
                if (ambient) {
                    throw ParseError(lineno, head.col, "duplicate ambient header");
                }
                ambient = lp.integer("dimension");
                lp.end();
            } else if (head.text == "gen") {
                Generator g;
                const Token nm = lp.name("generator name");
                if (nm.text.find('!') != std::string::npos || nm.text == "0" || nm.text == "1") {
                    throw ParseError(lineno, nm.col, "invalid generator name '" + nm.text + "'");
                }
                for (const auto& other : gens) {
                    if (other.name == nm.text) {
                        throw ParseError(lineno, nm.col, "duplicate generator '" + nm.text + "'");
                    }
                }
                g.name = nm.text;
                lp.expect("deg");
                g.degree = lp.integer("degree");
                lp.expect("action");
                auto [a, col] = lp.rational("action");
                if (a <= 0) {
                    throw ParseError(lineno, col, "action must be positive");
                }
                g.action = a;
                if (!lp.done()) {
                    lp.expect("mixed");
                    const int i = lp.integer("piece");
                    const int j = lp.integer("piece");
                    g.mixed = std::make_pair(i, j);
                }
                lp.end();
                gens.push_back(g);
                gen_pos.push_back({nm, lineno});
            } else if (head.text == "d") {
                dlines.push_back(lp.row("d"));
            } else {
                throw ParseError(lineno, head.col, "unknown directive '" + head.text + "'");
            }
            break;
        case Section::MorseLambda:
            parse_morse_line(lp, head, tc.lambda);
            break;
        case Section::MorseFilling:
            parse_morse_line(lp, head, tc.filling);
            break;
        case Section::BlockC:
            if (head.text == "pd") {
                PairLine p{lp.name("critical point"), lp.name("critical point"), lineno};
                lp.end();
                du.pd.push_back(p);
            } else {
                parse_morse_line(lp, head, du.c);
            }
            break;
        case Section::ConnectShort:
        case Section::ConnectRho:
        case Section::MapRho:
        case Section::MapSigma:
        case Section::MapEta: {
            if (head.text != "row") {
                throw ParseError(lineno, head.col, "unknown directive '" + head.text + "'");
            }
            auto r = lp.row("row");
            (sec == Section::ConnectShort ? tc.connect_short
             : sec == Section::ConnectRho ? tc.connect_rho
             : sec == Section::MapRho     ? du.rho
             : sec == Section::MapSigma   ? du.sigma
                                          : du.eta)
                .push_back(std::move(r));
            break;
        }
        case Section::BlockQ:
            if (head.text != "d") {
                throw ParseError(lineno, head.col, "unknown directive '" + head.text + "'");
            }
            du.q_d.push_back(lp.row("d"));
            break;
        case Section::BlockP:
            if (head.text == "pair") {
                PairLine p{lp.name("chord"), lp.name("dual generator"), lineno};
                lp.end();
                du.pairs.push_back(p);
            } else if (head.text == "d") {
                du.p_d.push_back(lp.row("d"));
            } else {
                throw ParseError(lineno, head.col, "unknown directive '" + head.text + "'");
            }
            break;
        }
    }
    if (!ambient) {
        throw ParseError(1, 1, "missing ambient header");
    }

    // resolve the DGA differential
    auto gen_index = [&](const Token& t, int line) -> std::size_t {
        for (std::size_t i = 0; i < gens.size(); ++i) {
            if (gens[i].name == t.text) {
                return i;
            }
        }
        throw ParseError(line, t.col, "unknown generator '" + t.text + "'");
    };
    std::vector<Gf2Sum> d(gens.size());
    std::vector<bool> has_d(gens.size(), false);
    for (const auto& r : dlines) {
        const auto c = gen_index(r.source, r.line);
        if (has_d[c]) {
            throw ParseError(r.line, r.source.col, "second differential for '" + r.source.text + "'");
        }
        has_d[c] = true;
        for (const auto& term : r.terms) {
            if (term.size() == 1 && term[0].text == "0") {
                continue;
            }
            Word w;
            if (!(term.size() == 1 && term[0].text == "1")) {
                for (const auto& t : term) {
                    w.push_back(gen_index(t, r.line));
                }
            }
            d[c].add(w);
        }
    }
    ws.dga = DgaPresentation(*ambient, std::move(gens), std::move(d));

    // validate every name used by the optional sections
    const auto& dga = ws.dga;
    auto crit_names = [](const MorseSection& s, std::set<std::string>& names) {
        for (const auto& c : s.crits) {
            if (!names.insert(c.name.text).second) {
                throw ParseError(c.line, c.name.col, "duplicate critical point '" + c.name.text + "'");
            }
            if (c.name.text.find('!') != std::string::npos) {
                throw ParseError(c.line, c.name.col, "invalid critical point name '" + c.name.text + "'");
            }
        }
    };
    auto strip = [](const std::string& s, const std::string& suffix) -> std::optional<std::string> {
        if (s.size() > suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0) {
            return s.substr(0, s.size() - suffix.size());
        }
        return std::nullopt;
    };
    auto check_linear = [](const RowLine& r) {
        for (const auto& term : r.terms) {
            if (term.size() != 1 || term[0].text == "1") {
                throw ParseError(r.line, term[0].col, "only single generators or 0 are allowed here");
            }
        }
    };
    auto check_names = [&](const RowLine& r, const std::set<std::string>& sources,
                           const std::set<std::string>& targets, const std::string& what) {
        check_linear(r);
        if (!sources.count(r.source.text)) {
            throw ParseError(r.line, r.source.col, "unknown " + what + " source '" + r.source.text + "'");
        }
        for (const auto& term : r.terms) {
            if (term[0].text != "0" && !targets.count(term[0].text)) {
                throw ParseError(r.line, term[0].col, "unknown " + what + " target '" + term[0].text + "'");
            }
        }
    };

    if (any_two_copy) {
        std::set<std::string> shorts;
        std::set<std::string> points;
        crit_names(tc.lambda, shorts);
        crit_names(tc.filling, points);
        for (const auto& s : shorts) {
            if (points.count(s)) {
                throw ParseError(1, 1, "name '" + s + "' is both a short chord and an intersection point");
            }
        }
        std::set<std::string> longs;
        for (const auto& g : dga.generators()) {
            longs.insert(g.name);
            longs.insert(g.name + "!long");
        }
        std::set<std::string> shorts_any = shorts;
        for (const auto& s : shorts) {
            shorts_any.insert(s + "!short");
        }
        for (auto* rows : {&tc.lambda.d, &tc.filling.d}) {
            const auto& names = rows == &tc.lambda.d ? shorts : points;
            std::set<std::string> seen;
            for (const auto& r : *rows) {
                check_names(r, names, names, "Morse");
                if (!seen.insert(r.source.text).second) {
                    throw ParseError(r.line, r.source.col, "second differential for '" + r.source.text + "'");
                }
            }
        }
        for (auto& r : tc.connect_short) {
            if (auto s = strip(r.source.text, "!short")) {
                r.source.text = *s;
            }
            check_names(r, shorts, longs, "short-chord");
        }
        std::set<std::string> chords = longs;
        chords.insert(shorts_any.begin(), shorts_any.end());
        for (auto& r : tc.connect_rho) {
            check_names(r, points, chords, "intersection");
            for (const auto& term : r.terms) {
                const auto& t = term[0].text;
                if (dga.index_of(t) && shorts.count(t)) {
                    throw ParseError(r.line, term[0].col, "'" + t + "' is ambiguous; write " + t + "!long or " + t +
                                                              "!short");
                }
            }
        }
        ws.two_copy = tc;
    }

    if (any_duality) {
        std::set<std::string> qs;
        for (const auto& g : dga.generators()) {
            qs.insert(g.name);
        }
        std::set<std::string> cs;
        crit_names(du.c, cs);
        std::set<std::string> ps;
        std::set<std::string> paired;
        for (const auto& p : du.pairs) {
            if (!qs.count(p.q.text)) {
                throw ParseError(p.line, p.q.col, "unknown chord '" + p.q.text + "'");
            }
            if (!paired.insert(p.q.text).second) {
                throw ParseError(p.line, p.q.col, "chord '" + p.q.text + "' paired twice");
            }
            if (!ps.insert(p.p.text).second || cs.count(p.p.text) || qs.count(p.p.text)) {
                throw ParseError(p.line, p.p.col, "name '" + p.p.text + "' is already in use");
            }
        }
        for (const auto& p : du.pd) {
            for (const auto* t : {&p.q, &p.p}) {
                if (!cs.count(t->text)) {
                    throw ParseError(p.line, t->col, "unknown critical point '" + t->text + "'");
                }
            }
        }
        auto unique_rows = [](const std::vector<RowLine>& rows) {
            std::set<std::string> seen;
            for (const auto& r : rows) {
                if (!seen.insert(r.source.text).second) {
                    throw ParseError(r.line, r.source.col, "second row for '" + r.source.text + "'");
                }
            }
        };
        for (const auto& r : du.q_d) {
            check_names(r, qs, qs, "Q-block");
        }
        for (const auto& r : du.c.d) {
            check_names(r, cs, cs, "C-block");
        }
        for (const auto& r : du.p_d) {
            check_names(r, ps, ps, "P-block");
        }
        for (const auto& r : du.rho) {
            check_names(r, qs, cs, "rho");
        }
        for (const auto& r : du.sigma) {
            check_names(r, cs, ps, "sigma");
        }
        for (const auto& r : du.eta) {
            check_names(r, qs, ps, "eta");
        }
        for (const auto* rows : {&du.q_d, &du.c.d, &du.p_d, &du.rho, &du.sigma, &du.eta}) {
            unique_rows(*rows);
        }
        ws.duality = du;
    }
    return ws;
}

inline Workspace load_workspace(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("io", "cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_workspace(ss.str(), path);
}

namespace detail {

/// Matrix with column `source` holding the listed targets.
inline Gf2Matrix rows_to_matrix(const std::vector<RowLine>& rows, std::size_t n_rows, std::size_t n_cols,
                                const std::function<std::size_t(const std::string&)>& row_of,
                                const std::function<std::size_t(const std::string&)>& col_of)
{
    Gf2Matrix m(n_rows, n_cols);
    for (const auto& r : rows) {
        const auto c = col_of(r.source.text);
        for (const auto& term : r.terms) {
            if (term[0].text != "0") {
                m.flip(row_of(term[0].text), c);
            }
        }
    }
    return m;
}

inline MorseData morse_data(const MorseSection& s, int direction)
{
    std::vector<Cell> cells;
    std::vector<std::optional<Rational>> action;
    std::map<std::string, std::size_t> idx;
    for (const auto& c : s.crits) {
        idx[c.name.text] = cells.size();
        cells.push_back({c.name.text, c.index});
        action.push_back(c.action);
    }
    auto at = [&](const std::string& n) { return idx.at(n); };
    auto d = rows_to_matrix(s.d, cells.size(), cells.size(), at, at);
    return MorseData{ChainComplex(direction, std::move(cells), std::move(d)), std::move(action)};
}

}  // namespace detail

inline TwoCopyComplex build_two_copy(const Workspace& ws, const Augmentation& e)
{
    if (!ws.two_copy) {
        throw InputError("missing-section", "input has no two-copy sections");
    }
    const auto& tc = *ws.two_copy;
    const auto sft = build_sft(ws.dga, e);
    const auto lambda = detail::morse_data(tc.lambda, +1);
    const auto filling = detail::morse_data(tc.filling, +1);
    const std::size_t nl = ws.dga.size();
    auto long_of = [&](const std::string& n) {
        auto base = n.size() > 5 && n.ends_with("!long") ? n.substr(0, n.size() - 5) : n;
        return ws.dga.require_index(base);
    };
    auto short_of = [&](const std::string& n) {
        auto base = n.size() > 6 && n.ends_with("!short") ? n.substr(0, n.size() - 6) : n;
        return lambda.complex.require_index(base);
    };
    auto chord_of = [&](const std::string& n) {
        if (n.ends_with("!long") || ws.dga.index_of(n)) {
            return long_of(n);
        }
        return nl + short_of(n);
    };
    auto point_of = [&](const std::string& n) { return filling.complex.require_index(n); };
    const auto s = detail::rows_to_matrix(tc.connect_short, nl, lambda.complex.size(), long_of, short_of);
    const auto rho =
        detail::rows_to_matrix(tc.connect_rho, nl + lambda.complex.size(), filling.complex.size(), chord_of, point_of);
    return assemble_two_copy(sft, lambda, filling, s, rho);
}

inline DualitySplitting build_duality(const Workspace& ws, const Augmentation& e)
{
    if (!ws.duality) {
        throw InputError("missing-section", "input has no duality sections");
    }
    const auto& du = *ws.duality;
    const auto& dga = ws.dga;
    const int n = dga.ambient_n();

    std::vector<Cell> qcells;
    for (const auto& g : dga.generators()) {
        qcells.push_back({g.name, g.degree + 1});
    }
    auto q_of = [&](const std::string& s) { return dga.require_index(s); };
    auto qd = detail::rows_to_matrix(du.q_d, dga.size(), dga.size(), q_of, q_of);
    ChainComplex q(-1, std::move(qcells), std::move(qd));

    const auto c = detail::morse_data(du.c, -1).complex;
    auto c_of = [&](const std::string& s) { return c.require_index(s); };

    std::vector<Cell> pcells;
    std::vector<std::size_t> partner(dga.size(), SIZE_MAX);
    std::map<std::string, std::size_t> pidx;
    for (const auto& p : du.pairs) {
        const auto qi = dga.require_index(p.q.text);
        partner[qi] = pcells.size();
        pidx[p.p.text] = pcells.size();
        pcells.push_back({p.p.text, n - 2 - dga.generator(qi).degree});
    }
    for (std::size_t i = 0; i < partner.size(); ++i) {
        if (partner[i] == SIZE_MAX) {
            throw InputError("pairing", "chord '" + dga.generator(i).name + "' has no partner in [block p]");
        }
    }
    auto p_of = [&](const std::string& s) { return pidx.at(s); };
    auto pd_mat = detail::rows_to_matrix(du.p_d, pcells.size(), pcells.size(), p_of, p_of);
    ChainComplex p(-1, std::move(pcells), std::move(pd_mat));

    Gf2Matrix pd(c.size(), c.size());
    for (const auto& l : du.pd) {
        const auto a = c_of(l.q.text);
        const auto b = c_of(l.p.text);
        pd.set(a, b, true);
        pd.set(b, a, true);
    }
    auto rho = detail::rows_to_matrix(du.rho, c.size(), q.size(), c_of, q_of);
    auto sigma = detail::rows_to_matrix(du.sigma, p.size(), c.size(), p_of, c_of);
    auto eta = detail::rows_to_matrix(du.eta, p.size(), q.size(), p_of, q_of);
    const auto lin = linearized_complex(dga, e);
    return assemble_duality(n, std::move(q), c, std::move(p), std::move(rho), std::move(sigma), std::move(eta),
                            std::move(partner), std::move(pd), &lin);
}

}  // namespace lchsft
