#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lchsft/lchsft.hpp"

#ifndef LCHSFT_FIXTURE_DIR
#define LCHSFT_FIXTURE_DIR "fixtures"
#endif

namespace {

using lchsft::report::Json;
using namespace lchsft;

struct Options {
    std::string file;
    std::string c0 = "0";
    std::string c1 = "1";
    std::string degrees = "-1..2";
    std::string homology;
    std::string slide;
    std::string cancel;
    std::string fixtures = LCHSFT_FIXTURE_DIR;
    std::uint64_t seed = SelftestOptions{}.seed;
    std::size_t aug = 0;
    bool ungraded = false;
    bool pretty = false;
};

struct Outcome {
    Json body;
    bool pass = true;
};

Rational rational_flag(const std::string& flag, const std::string& text)
{
    auto r = parse_rational(text);
    if (!r) {
        throw InputError("flag", flag + ": not a rational number: " + text);
    }
    return *r;
}

std::pair<std::string, std::string> pair_flag(const std::string& flag, const std::string& text)
{
    const auto colon = text.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == text.size()) {
        throw InputError("flag", flag + " expects x:y, got " + text);
    }
    return {text.substr(0, colon), text.substr(colon + 1)};
}

int int_flag(const std::string& flag, const std::string& text)
{
    try {
        std::size_t used = 0;
        const int v = std::stoi(text, &used);
        if (used == text.size()) {
            return v;
        }
    } catch (const std::exception&) {
    }
    throw InputError("flag", flag + ": not an integer: " + text);
}

std::pair<int, int> degree_window(const std::string& text)
{
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        throw InputError("flag", "--degrees expects lo..hi, got " + text);
    }
    const int lo = int_flag("--degrees", text.substr(0, dots));
    const int hi = int_flag("--degrees", text.substr(dots + 2));
    if (lo > hi) {
        throw InputError("flag", "--degrees: empty window " + text);
    }
    return {lo, hi};
}

Poincare homology_flag(const std::string& text)
{
    if (text.empty()) {
        throw InputError("flag", "--homology is required");
    }
    Poincare p;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        auto [deg, rank] = pair_flag("--homology", item);
        const int r = int_flag("--homology", rank);
        if (r < 0) {
            throw InputError("flag", "--homology: negative rank in " + item);
        }
        if (r > 0) {
            p[int_flag("--homology", deg)] = static_cast<std::size_t>(r);
        }
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return p;
}

Augmentation pick_augmentation(const Workspace& ws, const Options& o)
{
    const auto augs = enumerate_augmentations(ws.dga);
    if (augs.empty()) {
        throw MathError("no-augmentation", "the DGA has no graded augmentation");
    }
    if (o.aug >= augs.size()) {
        throw InputError("flag", "--aug " + std::to_string(o.aug) + " out of range: " + std::to_string(augs.size()) +
                                     " augmentations");
    }
    return augs[o.aug];
}

Json augmentation_json(const Workspace& ws, const Augmentation& e, std::size_t index)
{
    return {{"index", index}, {"values", augmentation_bits(ws.dga, e)}};
}

Outcome run_check(const Workspace& ws, const Options&)
{
    const auto rep = check_dga(ws.dga);
    return {report::dga_report(ws.dga, rep), rep.pass()};
}

Outcome run_augs(const Workspace& ws, const Options& o)
{
    const auto augs = enumerate_augmentations(ws.dga, !o.ungraded);
    Json list = Json::array();
    for (const auto& e : augs) {
        list.push_back(augmentation_bits(ws.dga, e, !o.ungraded));
    }
    Json j;
    j["graded"] = !o.ungraded;
    j["variables"] = augmentation_variables(ws.dga, !o.ungraded).size();
    j["count"] = augs.size();
    j["summary"] = std::to_string(augs.size()) + " augmentations";
    j["augmentations"] = list;
    return {j, true};
}

Outcome run_lch(const Workspace& ws, const Options&)
{
    const auto augs = enumerate_augmentations(ws.dga);
    if (augs.empty()) {
        throw MathError("no-augmentation", "the DGA has no graded augmentation");
    }
    Json per = Json::array();
    for (std::size_t k = 0; k < augs.size(); ++k) {
        const auto lin = linearized_complex(ws.dga, augs[k]);
        per.push_back({{"augmentation", augmentation_json(ws, augs[k], k)},
                       {"homology", report::ranks(Homology(lin).ranks())},
                       {"cohomology", report::ranks(Homology(dualize(lin)).ranks())}});
    }
    Json j;
    j["linearizations"] = per;
    j["poincare_multiset"] = report::poincare_multiset(poincare_multiset(ws.dga, augs));
    return {j, true};
}

Outcome run_e1(const Workspace& ws, const Options& o)
{
    const MonotonicityConstants mono{rational_flag("--c0", o.c0), rational_flag("--c1", o.c1)};
    const auto [lo, hi] = degree_window(o.degrees);
    const auto e = pick_augmentation(ws, o);
    const auto v = build_sft(ws.dga, e);
    const auto r = e1_limit(ws.dga, v, mono, lo, hi);
    const auto t1 = theorem1_check(ws.dga, e, mono, lo, hi);
    Json cmp = Json::object();
    for (const auto& [d, pr] : t1.ranks) {
        cmp[std::to_string(d)] = {{"lch", pr.first}, {"e1", pr.second}};
    }
    Json j;
    j["augmentation"] = augmentation_json(ws, e, o.aug);
    j["constants"] = {{"c0", to_string(mono.c0)}, {"c1", to_string(mono.c1)}};
    j["e1"] = report::e1(r);
    j["comparison"] = {{"chain_map", t1.intertwines}, {"ranks_match", t1.ranks_match}, {"ranks", cmp}};
    return {j, t1.pass()};
}

Outcome run_two_copy(const Workspace& ws, const Options& o)
{
    const auto e = pick_augmentation(ws, o);
    const auto tc = build_two_copy(ws, e);
    const auto rep = conjecture_sequence(tc);
    Json j;
    j["augmentation"] = augmentation_json(ws, e, o.aug);
    j["cells"] = {{"long", tc.n_long}, {"short", tc.n_short}, {"intersection", tc.n_int}};
    j["homology"] = {{"long", report::ranks(rep.sub_ranks)},
                     {"quotient", report::ranks(rep.quotient_ranks)},
                     {"total", report::ranks(rep.sequence.total.ranks())}};
    j["sequence"] = report::les(rep.sequence.les);
    j["acyclic"] = rep.acyclic;
    j["connecting_iso"] = rep.delta_iso;
    j["connecting_matches_block"] = rep.delta_matches_block;
    j["implied_filling_homology"] = report::ranks(implied_filling_ranks(rep, ws.dga.ambient_n()));
    j["assumptions"] = tc.assumptions;
    return {j, rep.exact && rep.delta_matches_block};
}

Outcome run_fill_check(const Workspace& ws, const Options& o)
{
    const auto candidate = homology_flag(o.homology);
    const auto augs = enumerate_augmentations(ws.dga);
    std::optional<Augmentation> e;
    if (!augs.empty()) {
        e = pick_augmentation(ws, o);
    }
    const auto v = fillability_check(ws.dga, e, candidate);
    Json table = Json::object();
    for (const auto& [deg, pr] : v.table) {
        table[std::to_string(deg)] = {{"filling", pr.first}, {"lch", pr.second}};
    }
    Json j;
    if (e) {
        j["augmentation"] = augmentation_json(ws, *e, o.aug);
    }
    j["candidate"] = report::ranks(candidate);
    j["verdict_detail"] = v.verdict;
    if (v.degree) {
        j["first_mismatch"] = *v.degree;
    }
    j["table"] = table;
    return {j, v.verdict == "consistent"};
}

Outcome run_duality(const Workspace& ws, const Options& o)
{
    const auto e = pick_augmentation(ws, o);
    const auto ds = build_duality(ws, e);
    const auto seq = duality_sequence(ds);
    const auto hm = h_maps_iso_check(ds);
    const bool acyclic = Homology(ds.total).acyclic();
    Json j;
    j["augmentation"] = augmentation_json(ws, e, o.aug);
    j["acyclic"] = acyclic;
    j["homology"] = {{"c", report::ranks(seq.h_c.ranks())},
                     {"p", report::ranks(seq.h_p.ranks())},
                     {"q", report::ranks(seq.h_q.ranks())}};
    j["sequence"] = report::les(seq.les);
    j["pairing"] = {{"pass", seq.pairing.pass}, {"ones", seq.pairing.ones}, {"failures", seq.pairing.failures}};
    j["h_maps"] = {{"h", hm.h_iso}, {"h_prime", hm.h_prime_iso}};
    return {j, acyclic && seq.exact() && seq.pairing.pass && hm.pass()};
}

Outcome run_diagram(const Workspace& ws, const Options& o)
{
    const auto e = pick_augmentation(ws, o);
    const auto rep = corollary_diagram_check(build_duality(ws, e), build_two_copy(ws, e));
    Json squares = Json::array();
    for (const auto& s : rep.squares) {
        Json sq{{"square", s.name}, {"homology", s.homology}};
        if (s.chain) {
            sq["chain_level"] = *s.chain;
        }
        squares.push_back(sq);
    }
    Json j;
    j["augmentation"] = augmentation_json(ws, e, o.aug);
    j["squares"] = squares;
    return {j, rep.pass()};
}

Json move_json(const ChainComplex& before, const ChainComplex& after, const std::vector<ChainMapCheck>& maps,
               bool& pass)
{
    const auto h0 = Homology(before).ranks();
    const auto h1 = Homology(after).ranks();
    Json checks = Json::array();
    for (const auto& m : maps) {
        checks.push_back(report::chain_map_check(m));
        pass = pass && m.pass;
    }
    pass = pass && h0 == h1;
    return {{"homology_before", report::ranks(h0)}, {"homology_after", report::ranks(h1)}, {"maps", checks}};
}

Outcome run_moves(const Workspace& ws, const Options& o)
{
    if (o.slide.empty() && o.cancel.empty()) {
        throw InputError("flag", "moves needs --slide x:y or --cancel x:y");
    }
    const auto e = pick_augmentation(ws, o);
    std::optional<TwoCopyComplex> tc;
    if (ws.two_copy) {
        tc = build_two_copy(ws, e);
    }
    const ChainComplex base = tc ? tc->total : build_sft(ws.dga, e).complex;
    Json j;
    j["augmentation"] = augmentation_json(ws, e, o.aug);
    j["complex"] = tc ? "two-copy" : "sft";
    bool pass = true;
    if (!o.slide.empty()) {
        const auto [x, y] = pair_flag("--slide", o.slide);
        const auto hs = tc ? handle_slide_move(*tc, x, y) : handle_slide(base, x, y);
        j["slide"] = move_json(base, hs.after, {verify_chain_map(hs.map)}, pass);
    }
    if (!o.cancel.empty()) {
        const auto [x, y] = pair_flag("--cancel", o.cancel);
        const auto bd = tc ? birth_death_move(*tc, x, y) : birth_death(base, x, y);
        j["cancel"] = move_json(base, bd.reduced, {verify_chain_map(bd.phi), verify_chain_map(bd.psi)}, pass);
    }
    return {j, pass};
}

void emit(const Json& j, bool pretty)
{
    if (pretty) {
        std::string out;
        report::pretty(j, out);
        std::cout << out;
    } else {
        std::cout << j.dump(2) << "\n";
    }
}

Json header(const std::string& command)
{
    Json j;
    j["command"] = command;
    return j;
}

int run(const std::string& command, const Options& o)
{
    Json j = header(command);
    try {
        Outcome out;
        if (command == "selftest") {
            SelftestOptions so;
            so.fixture_dir = o.fixtures;
            so.seed = o.seed;
            const auto rep = run_selftest(so);
            out = {selftest_json(rep), rep.pass()};
        } else {
            const auto ws = load_workspace(o.file);
            j["input"] = ws.source;
            j["hash"] = ws.hash;
            if (command == "check") {
                out = run_check(ws, o);
            } else if (command == "augs") {
                out = run_augs(ws, o);
            } else if (command == "lch") {
                out = run_lch(ws, o);
            } else if (command == "sft-e1") {
                out = run_e1(ws, o);
            } else if (command == "two-copy") {
                out = run_two_copy(ws, o);
            } else if (command == "fill-check") {
                out = run_fill_check(ws, o);
            } else if (command == "duality") {
                out = run_duality(ws, o);
            } else if (command == "diagram") {
                out = run_diagram(ws, o);
            } else {
                out = run_moves(ws, o);
            }
        }
        for (auto it = out.body.begin(); it != out.body.end(); ++it) {
            j[it.key()] = it.value();
        }
        j["verdict"] = out.pass ? "pass" : "fail";
        emit(j, o.pretty);
        return out.pass ? 0 : 1;
    } catch (const MonotonicityRefusal& e) {
        j["error"] = {{"code", e.code()}, {"message", e.what()}, {"chords", e.chords()}};
        j["verdict"] = "input-error";
        emit(j, o.pretty);
        return 2;
    } catch (const InputError& e) {
        j["error"] = {{"code", e.code()}, {"message", e.what()}};
        j["verdict"] = "input-error";
        emit(j, o.pretty);
        return 2;
    } catch (const MathError& e) {
        j["error"] = {{"code", e.code()}, {"message", e.what()}};
        j["verdict"] = "fail";
        emit(j, o.pretty);
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Linearized contact homology, SFT towers and two-copy Floer complexes over GF(2)"};
    app.require_subcommand(1, 1);
    Options o;

    auto file_cmd = [&](const std::string& name, const std::string& help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("file", o.file, "workspace file")->required();
        sub->add_flag("--pretty", o.pretty, "indented key: value output");
        return sub;
    };
    auto aug_opt = [&](CLI::App* sub) { sub->add_option("--aug", o.aug, "augmentation index (default 0)"); };

    file_cmd("check", "check the DGA axioms");
    auto* augs = file_cmd("augs", "enumerate augmentations");
    augs->add_flag("--ungraded", o.ungraded, "allow nonzero values on generators of nonzero degree");
    file_cmd("lch", "linearized homology for every augmentation");
    auto* e1 = file_cmd("sft-e1", "E1 tower limit against linearized cohomology");
    e1->alias("e1");
    e1->add_option("--c0", o.c0, "monotonicity offset");
    e1->add_option("--c1", o.c1, "monotonicity slope");
    e1->add_option("--degrees", o.degrees, "degree window lo..hi");
    aug_opt(e1);
    auto* two = file_cmd("two-copy", "two-copy complex and its sequence");
    aug_opt(two);
    auto* fill = file_cmd("fill-check", "compare a candidate filling homology");
    fill->add_option("--homology", o.homology, "ranks as deg:rank,deg:rank")->required();
    aug_opt(fill);
    auto* dual = file_cmd("duality", "duality splitting sequence and pairing");
    aug_opt(dual);
    auto* diag = file_cmd("diagram", "compare the two-copy and duality sequences");
    aug_opt(diag);
    auto* moves = file_cmd("moves", "handle slide or cancellation with invariance checks");
    moves->add_option("--slide", o.slide, "slide x over y");
    moves->add_option("--cancel", o.cancel, "cancel the pair x, y with y in dx");
    aug_opt(moves);
    auto* self = app.add_subcommand("selftest", "run the bundled fixtures and seeded property suites");
    self->add_option("--fixtures", o.fixtures, "fixture directory");
    self->add_option("--seed", o.seed, "random seed");
    self->add_flag("--pretty", o.pretty, "indented key: value output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    return run(app.get_subcommands().front()->get_name(), o);
}
