#include <catch_amalgamated.hpp>

#include "lchsft/format.hpp"

using namespace lchsft;

namespace {

ParseError parse_failure(const std::string& text)
{
    try {
        parse_workspace(text);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("input was accepted:\n" << text);
    return ParseError(0, 0, "");
}

bool mentions(const std::exception& e, const std::string& what)
{
    return std::string(e.what()).find(what) != std::string::npos;
}

}  // namespace

TEST_CASE("bundled unknot file")
{
    const auto ws = load_workspace(std::string(LCHSFT_FIXTURE_DIR) + "/unknot.lch");
    CHECK(ws.dga.size() == 1);
    CHECK(ws.dga.ambient_n() == 2);
    CHECK(ws.dga.generator(0).action == Rational(1, 2));
    CHECK_FALSE(ws.two_copy.has_value());
    CHECK(ws.hash.size() == 16);
    CHECK(load_workspace(std::string(LCHSFT_FIXTURE_DIR) + "/unknot.lch").hash == ws.hash);
}

TEST_CASE("the hash follows the bytes")
{
    const auto a = parse_workspace("ambient n 2\ngen a deg 1 action 1\n");
    const auto b = parse_workspace("ambient n 2\ngen a deg 1 action 1 # comment\n");
    CHECK(a.hash != b.hash);
    CHECK(a.dga.generator(0).name == b.dga.generator(0).name);
}

TEST_CASE("rationals")
{
    CHECK(parse_rational("3") == Rational(3));
    CHECK(parse_rational("-2/6") == Rational(-1, 3));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK_FALSE(parse_rational("1/0").has_value());
    CHECK_FALSE(parse_rational("x").has_value());
    CHECK_FALSE(parse_rational("").has_value());
    CHECK(to_string(Rational(6, 4)) == "3/2");
    CHECK(to_string(Rational(-2)) == "-2");
}

TEST_CASE("parse errors carry positions")
{
    SECTION("empty file")
    {
        CHECK(mentions(parse_failure(""), "missing ambient header"));
    }
    SECTION("zero action")
    {
        const auto e = parse_failure("ambient n 2\ngen a deg 1 action 0\n");
        CHECK(mentions(e, "action must be positive"));
        CHECK(e.line() == 2);
    }
    SECTION("bad rational")
    {
        const auto e = parse_failure("ambient n 2\ngen a deg 1 action 1/x\n");
        CHECK(e.line() == 2);
        CHECK(e.column() == 20);
    }
    SECTION("duplicate generator")
    {
        const auto e = parse_failure("ambient n 2\ngen a deg 1 action 1\ngen a deg 0 action 1\n");
        CHECK(mentions(e, "duplicate generator"));
        CHECK(e.line() == 3);
        CHECK(e.column() == 5);
    }
    SECTION("unknown section")
    {
        const auto e = parse_failure("ambient n 2\ngen a deg 1 action 1\n[morse elsewhere]\n");
        CHECK(mentions(e, "unknown section"));
        CHECK(e.line() == 3);
    }
    SECTION("unknown generator in a differential")
    {
        const auto e = parse_failure("ambient n 2\ngen a deg 1 action 1\nd a = 1 + b\n");
        CHECK(mentions(e, "unknown generator 'b'"));
        CHECK(e.column() == 11);
    }
    SECTION("unknown directive")
    {
        CHECK(mentions(parse_failure("ambient n 2\ngenerator a\n"), "unknown directive"));
    }
    SECTION("second differential")
    {
        CHECK(mentions(parse_failure("ambient n 2\ngen a deg 1 action 1\nd a = 0\nd a = 1\n"), "second differential"));
    }
    SECTION("duplicate critical point")
    {
        const auto e = parse_failure("ambient n 2\ngen a deg 1 action 1\n[morse lambda]\ncrit m index 0\n"
                                     "crit m index 1\n");
        CHECK(mentions(e, "duplicate critical point"));
        CHECK(e.line() == 5);
    }
}

TEST_CASE("sections are optional but required by their commands")
{
    const auto ws = parse_workspace("ambient n 2\ngen a deg 1 action 1\n");
    const auto e = enumerate_augmentations(ws.dga).front();
    CHECK_THROWS_AS(build_two_copy(ws, e), InputError);
    CHECK_THROWS_AS(build_duality(ws, e), InputError);
}

TEST_CASE("missing files are input errors")
{
    CHECK_THROWS_AS(load_workspace("/nonexistent/file.lch"), InputError);
}
