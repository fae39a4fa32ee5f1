#pragma once

#include <array>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>

namespace theta_tower
{

class ConfigError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Working precisions (in 1/24 q-units, indexed by m = 0..4) and run options.
struct Settings
{
    std::array<int, 5> qprec{241, 241, 241, 145, 97};
    std::array<int, 5> max_qprec{480, 480, 480, 288, 192};
    unsigned jobs = 1;
    std::optional<std::string> cache_dir;

    int precision_for(std::size_t m) const { return qprec.at(m); }
};

namespace detail
{
inline std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline long parse_config_int(const std::string& key, const std::string& value, long lo, long hi)
{
    std::size_t used = 0;
    long v = 0;
    try
    {
        v = std::stol(value, &used);
    }
    catch (const std::exception&)
    {
        throw ConfigError("config key " + key + ": not an integer: " + value);
    }
    if (used != value.size())
        throw ConfigError("config key " + key + ": not an integer: " + value);
    if (v < lo || v > hi)
        throw ConfigError("config key " + key + ": value " + value + " out of range");
    return v;
}
} // namespace detail

/// Applies one `key = value` setting. Keys: qprec.m0..m4, max_qprec.m0..m4, jobs, cache_dir.
inline void apply_setting(Settings& s, const std::string& key, const std::string& value)
{
    for (std::size_t m = 0; m <= 4; ++m)
    {
        const std::string suffix = ".m" + std::to_string(m);
        if (key == "qprec" + suffix)
        {
            s.qprec[m] = static_cast<int>(detail::parse_config_int(key, value, 1, 1 << 20));
            return;
        }
        if (key == "max_qprec" + suffix)
        {
            s.max_qprec[m] = static_cast<int>(detail::parse_config_int(key, value, 1, 1 << 20));
            return;
        }
    }
    if (key == "jobs")
    {
        s.jobs = static_cast<unsigned>(detail::parse_config_int(key, value, 1, 256));
        return;
    }
    if (key == "cache_dir")
    {
        s.cache_dir = value;
        return;
    }
    throw ConfigError("unknown config key: " + key);
}

/// Parses `key = value` lines; blank lines and lines starting with '#' are ignored.
inline Settings parse_config(std::istream& in, Settings s = {})
{
    std::string line;
    int lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        const std::string t = detail::trim(line.substr(0, line.find('#')));
        if (t.empty())
            continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        apply_setting(s, detail::trim(t.substr(0, eq)), detail::trim(t.substr(eq + 1)));
    }
    for (std::size_t m = 0; m <= 4; ++m)
        if (s.qprec[m] > s.max_qprec[m])
            throw ConfigError("qprec.m" + std::to_string(m) + " exceeds max_qprec.m" + std::to_string(m));
    return s;
}

inline Settings load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config file " + path);
    return parse_config(in);
}

} // namespace theta_tower
