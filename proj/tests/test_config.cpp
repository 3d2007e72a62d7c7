#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "lcm/config.hpp"

using namespace lcm;

TEST_CASE("defaults", "[config]")
{
    Config c = parse_config("");
    CHECK(c.window_lo == -4);
    CHECK(c.window_hi == 4);
    CHECK(c.prefix_bound == 3);
    CHECK(c.probe_depth == 6);
    auto s = c.search();
    CHECK(s.bound == 3);
    CHECK(s.lo == -4);
    CHECK(s.hi == 4);
}

TEST_CASE("overrides", "[config]")
{
    Config c = parse_config("[search]\nwindow_lo = -2 # narrower\n\n  prefix_bound=5\nprobe_depth = 9\r\n");
    CHECK(c.window_lo == -2);
    CHECK(c.window_hi == 4);
    CHECK(c.prefix_bound == 5);
    CHECK(c.probe_depth == 9);
    CHECK(c.search().bound == 5);
}

TEST_CASE("malformed files", "[config]")
{
    CHECK_THROWS_AS(parse_config("depth = 3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("window_lo"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("window_hi = many"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("window_lo = 3\nwindow_hi = 1"), std::invalid_argument);
    CHECK_THROWS_AS(load_config("/nonexistent/lcm.conf"), std::invalid_argument);
}

TEST_CASE("config file resolution", "[config]")
{
    auto path = std::filesystem::temp_directory_path() / "lcm_test_config.conf";
    {
        std::ofstream f(path);
        f << "window_hi = 7\n";
    }
    CHECK(resolve_config(path.string()).window_hi == 7);
    ::setenv("LCM_CONFIG", path.c_str(), 1);
    CHECK(resolve_config().window_hi == 7);
    ::unsetenv("LCM_CONFIG");
    CHECK(resolve_config().window_hi == 4);
    std::filesystem::remove(path);
}
