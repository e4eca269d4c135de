#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "lchsft/selftest.hpp"

using namespace lchsft;

namespace {

std::filesystem::path scratch(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / ("lchsft_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

void write(const std::filesystem::path& p, const std::string& text)
{
    std::ofstream out(p);
    out << text;
}

}  // namespace

TEST_CASE("bundled fixtures load")
{
    const auto fx = load_fixtures(LCHSFT_FIXTURE_DIR);
    REQUIRE(fx.size() == 4);
    CHECK(fx[1].name == "trefoil.lch");
    CHECK(fx[1].mono.c1 == Rational(1, 10));
    CHECK(fx[1].filling == Poincare{{0, 1}, {1, 2}});
    CHECK(fx[3].ws.two_copy.has_value());
    CHECK(fx[3].ws.duality.has_value());
}

TEST_CASE("corrupt fixture directories are input errors")
{
    SECTION("no manifest")
    {
        CHECK_THROWS_AS(load_fixtures(scratch("empty").string()), InputError);
    }
    SECTION("manifest is not JSON")
    {
        const auto dir = scratch("garbage");
        write(dir / "manifest.json", "{ fixtures: ");
        CHECK_THROWS_AS(load_fixtures(dir.string()), InputError);
    }
    SECTION("listed file is missing")
    {
        const auto dir = scratch("missing");
        write(dir / "manifest.json",
              R"({"fixtures": [{"file": "gone.lch", "c0": "0", "c1": "1", "degrees": [0, 1], "filling_homology": {}}]})");
        CHECK_THROWS_AS(load_fixtures(dir.string()), InputError);
    }
    SECTION("listed file does not parse")
    {
        const auto dir = scratch("broken");
        write(dir / "bad.lch", "gen a deg 1 action 1\n");
        write(dir / "manifest.json",
              R"({"fixtures": [{"file": "bad.lch", "c0": "0", "c1": "1", "degrees": [0, 1], "filling_homology": {}}]})");
        CHECK_THROWS_AS(load_fixtures(dir.string()), InputError);
    }
    SECTION("bad constants")
    {
        const auto dir = scratch("constants");
        write(dir / "a.lch", "ambient n 2\ngen a deg 1 action 1\n");
        write(dir / "manifest.json",
              R"({"fixtures": [{"file": "a.lch", "c0": "0", "c1": "0", "degrees": [0, 1], "filling_homology": {}}]})");
        CHECK_THROWS_AS(load_fixtures(dir.string()), InputError);
    }
}

TEST_CASE("selftest reports are deterministic and record the seed")
{
    SelftestOptions opt;
    opt.fixture_dir = LCHSFT_FIXTURE_DIR;
    const auto a = selftest_json(run_selftest(opt)).dump();
    const auto b = selftest_json(run_selftest(opt)).dump();
    CHECK(a == b);
    const auto j = report::Json::parse(a);
    CHECK(j["seed"] == opt.seed);
    CHECK(j["verdict"] == "pass");
}

TEST_CASE("another seed changes the instances but not the verdicts")
{
    SelftestOptions opt;
    opt.fixture_dir = LCHSFT_FIXTURE_DIR;
    const auto base = run_selftest(opt);
    for (std::uint64_t seed : {1ULL, 99ULL, 123456789ULL}) {
        opt.seed = seed;
        const auto other = run_selftest(opt);
        CHECK(other.pass());
        REQUIRE(other.suites.size() == base.suites.size());
        for (std::size_t i = 0; i < base.suites.size(); ++i) {
            CHECK(other.suites[i].pass() == base.suites[i].pass());
        }
    }
}

TEST_CASE("pretty output lists keys")
{
    report::Json j;
    j["verdict"] = "pass";
    j["ranks"] = report::ranks({{0, 1}, {1, 2}});
    std::string out;
    report::pretty(j, out);
    CHECK(out == "verdict: pass\nranks:\n  0: 1\n  1: 2\n");
}
