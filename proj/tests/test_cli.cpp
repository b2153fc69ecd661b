#include "qpt/cli.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

TEST_CASE("settings parser keeps config sections") {
    std::istringstream is("# comment\nseed = 4\n[config]\ncount= 9 # trailing\n[run]\nversion = 1\n");
    const auto s = qpt::parse_settings(is, "mem");
    CHECK(s.at("seed") == "4");
    CHECK(s.at("count") == "9");
    CHECK_FALSE(s.count("version"));
    std::istringstream bad("seed 4\n");
    CHECK_THROWS_WITH_AS(qpt::parse_settings(bad, "mem"), "mem:1: expected key = value", qpt::ConfigError);
}

TEST_CASE("set specifications") {
    const auto u = qpt::parse_compact_spec("ball:0.2@0.3,0,0,0 + open_ball:0.1");
    REQUIRE(u.balls().size() == 2);
    CHECK(u.balls()[0].center[0] == 0.3);
    CHECK(u.balls()[1].open);
    CHECK(qpt::parse_compact_spec("empty").kind() == qpt::CompactSpec::Kind::empty);
    CHECK_THROWS_AS(qpt::parse_compact_spec("cube:1"), qpt::ConfigError);
    CHECK_THROWS_AS(qpt::parse_compact_spec("ball:x"), qpt::ConfigError);
    CHECK_THROWS_AS(qpt::parse_compact_spec("ball:0.1@1,2"), qpt::ConfigError);
}

TEST_CASE("config errors are collected") {
    try {
        (void)qpt::make_config("capacity", {{"res", "40"}, {"omega", "-1"}, {"bogus", "1"}});
        FAIL("expected ConfigError");
    } catch (const qpt::ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("res: must be odd") != std::string::npos);
        CHECK(msg.find("omega: must be > 0") != std::string::npos);
        CHECK(msg.find("bogus: unknown setting") != std::string::npos);
    }
    CHECK_THROWS_AS((void)qpt::make_config("nope", {}), qpt::ConfigError);
    const auto c = qpt::make_config("decay", {{"radii", "0.3, 0.1"}});
    CHECK(c.radii == std::vector<double>{0.3, 0.1});
    CHECK(c.echo.at("res") == "41");
}

TEST_CASE("run writes tables, reports and a replayable manifest") {
    const auto dir = std::filesystem::temp_directory_path() / "qpt_cli_test";
    std::filesystem::remove_all(dir);
    auto c = qpt::make_config("identities", {{"count", "3"}, {"n", "1"}, {"out", dir.string()}});
    std::ostringstream out;
    CHECK(qpt::run(c, out) == qpt::kExitPass);
    CHECK(std::filesystem::exists(dir / "identities.tsv"));
    const auto manifest = qpt::read_settings_file((dir / "identities.manifest").string());
    CHECK(manifest.at("count") == "3");
    CHECK(manifest.at("command") == "identities");
    std::ostringstream summary;
    CHECK(qpt::report({(dir / "identities.report").string()}, summary) == qpt::kExitPass);
    CHECK(summary.str().find("PASS 1/1") != std::string::npos);

    c = qpt::make_config("identities", {{"count", "3"}, {"n", "1"}, {"mutation", "nabla-sign-flip"}, {"out", dir.string()}});
    CHECK(qpt::run(c, out) == qpt::kExitCheckFailed);
    std::ostringstream failed;
    CHECK(qpt::report({(dir / "identities.report").string()}, failed) == qpt::kExitCheckFailed);
    CHECK(failed.str().find("FAIL 1/1: identities") != std::string::npos);

    std::ofstream(dir / "broken.report") << "[check x]\ninstances = ?\n";
    std::ostringstream ignored;
    CHECK_THROWS_AS(qpt::report({(dir / "broken.report").string()}, ignored), qpt::ConfigError);
    std::filesystem::remove_all(dir);
}
