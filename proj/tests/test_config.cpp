#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "morphflow/config.hpp"

using namespace morphflow;
using Catch::Matchers::ContainsSubstring;

namespace {

const char* kSample = R"(# run parameters
[fluid]
scenario = both   # trailing comment
density = 1000.0

[expanding]
L = 1e-6
n = 5
s_gap = 0.05e-6   # units: m
count = 12
)";

}  // namespace

TEST_CASE("config parses sections, comments and whitespace") {
    const auto cfg = Config::from_string(kSample, "sample.ini");
    CHECK(cfg.has_section("fluid"));
    CHECK(cfg.has_section("expanding"));
    CHECK_FALSE(cfg.has_section("probe"));
    CHECK(cfg.has("expanding", "L"));
    CHECK_FALSE(cfg.has("expanding", "missing"));

    CHECK(cfg.get_string("fluid", "scenario", "") == "both");
    CHECK(cfg.get_double("fluid", "density", 0.0) == 1000.0);
    CHECK(cfg.get_double("expanding", "s_gap", 0.0) == 0.05e-6);
    CHECK(cfg.get_int("expanding", "count", 0) == 12);
    CHECK(cfg.get_int("expanding", "absent", 7) == 7);

    const auto names = cfg.sections();
    CHECK(names.size() == 2);
}

TEST_CASE("config reports precise parse failures") {
    CHECK_THROWS_MATCHES(Config::from_string("[fluid\nx = 1\n", "bad.ini"), ConfigError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("bad.ini:1")));
    CHECK_THROWS_MATCHES(Config::from_string("[]\n", "bad.ini"), ConfigError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("empty section")));
    CHECK_THROWS_MATCHES(Config::from_string("x = 1\n", "bad.ini"), ConfigError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("outside any section")));
    CHECK_THROWS_MATCHES(Config::from_string("[a]\nnothing here\n", "bad.ini"), ConfigError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("expected key = value")));
    CHECK_THROWS_MATCHES(
        Config::from_string("[a]\nx = 1\nx = 2\n", "bad.ini"), ConfigError,
        Catch::Matchers::MessageMatches(ContainsSubstring("duplicate key 'a.x'")));
}

TEST_CASE("typed getters validate the whole token") {
    const auto cfg = Config::from_string("[a]\nx = 12abc\ny = 3.5\nz = nan-ish\n", "t.ini");
    CHECK_THROWS_MATCHES(cfg.get_int("a", "x", 0), ConfigError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("not an integer")));
    CHECK_THROWS_MATCHES(cfg.get_double("a", "z", 0.0), ConfigError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("not a number")));
    CHECK(cfg.get_double("a", "y", 0.0) == 3.5);
    CHECK_THROWS_AS(cfg.get_int("a", "y", 0), ConfigError);  // "3.5" is not a whole integer
}

TEST_CASE("missing required keys carry their full address") {
    const auto cfg = Config::from_string("[a]\nx = 1\n", "req.ini");
    CHECK_THROWS_MATCHES(cfg.require_double("a", "y"), ConfigError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("'a.y'")));
    CHECK_THROWS_MATCHES(cfg.require_string("b", "x"), ConfigError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("'b.x'")));
    CHECK(cfg.require_double("a", "x") == 1.0);
}

TEST_CASE("unconsumed keys are reported as typos with their line") {
    const auto cfg = Config::from_string("[a]\nx = 1\nwrong_name = 2\n", "c.ini");
    (void)cfg.get_double("a", "x", 0.0);
    CHECK_THROWS_MATCHES(
        cfg.require_all_consumed(), ConfigError,
        Catch::Matchers::MessageMatches(ContainsSubstring("'a.wrong_name' (line 3)")));
}

TEST_CASE("consuming a section silences its keys") {
    const auto cfg = Config::from_string("[a]\nx = 1\n[b]\ny = 2\n", "c.ini");
    (void)cfg.get_double("a", "x", 0.0);
    cfg.consume_section("b");
    CHECK_NOTHROW(cfg.require_all_consumed());
    cfg.consume_section("no_such_section");  // must be harmless
}

TEST_CASE("reading a missing file fails cleanly") {
    CHECK_THROWS_AS(Config::from_file("definitely/not/here.ini"), ConfigError);
}
