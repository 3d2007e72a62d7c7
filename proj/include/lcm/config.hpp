#ifndef LCM_CONFIG_HPP
#define LCM_CONFIG_HPP

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "groupoid.hpp"

namespace lcm {

struct Config {
    long window_lo = -4;
    long window_hi = 4;
    std::size_t prefix_bound = 3;
    std::size_t probe_depth = 6;

    SearchConfig search() const
    {
        SearchConfig s;
        s.bound = prefix_bound;
        s.lo = window_lo;
        s.hi = window_hi;
        return s;
    }
};

// key = value lines; '#' starts a comment, an optional [section] line is ignored.
inline Config parse_config(const std::string &text, Config c = {})
{
    std::istringstream in(text);
    std::string line;
    for (std::size_t no = 1; std::getline(in, line); ++no) {
        if (auto h = line.find('#'); h != std::string::npos)
            line.erase(h);
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty() || line.front() == '[')
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(no) + ": expected key = value");
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        try {
            if (key == "window_lo")
                c.window_lo = std::stol(val);
            else if (key == "window_hi")
                c.window_hi = std::stol(val);
            else if (key == "prefix_bound")
                c.prefix_bound = std::stoul(val);
            else if (key == "probe_depth")
                c.probe_depth = std::stoul(val);
            else
                throw std::invalid_argument("unknown key");
        } catch (const std::exception &e) {
            throw std::invalid_argument("config line " + std::to_string(no) + " (" + key + "): " + e.what());
        }
    }
    if (c.window_lo > c.window_hi)
        throw std::invalid_argument("config: window_lo exceeds window_hi");
    return c;
}

inline Config load_config(const std::string &path)
{
    std::ifstream f(path);
    if (!f)
        throw std::invalid_argument("cannot read config file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

// Explicit path, else $LCM_CONFIG, else defaults.
inline Config resolve_config(const std::string &path = {})
{
    if (!path.empty())
        return load_config(path);
    if (const char *env = std::getenv("LCM_CONFIG"); env && *env)
        return load_config(env);
    return {};
}

} // namespace lcm

#endif
