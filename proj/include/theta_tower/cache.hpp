#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "blocks.hpp"
#include "enumerate.hpp"
#include "lattice.hpp"
#include "series.hpp"
#include "series_io.hpp"

namespace theta_tower
{

/// I/O failure in the cache directory; the message names the path.
class CacheError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

inline std::string fnv1a64_hex(const std::string& data)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data)
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

/// On-disk store of enumeration shells and series, one JSON file per entry:
/// {"format_version": V, "kind": ..., "key": ..., "payload": {...}, "checksum": fnv1a64(payload.dump())}.
/// Entries with a wrong version or checksum are ignored and recomputed by the caller.
class EnumerationCache
{
public:
    static constexpr int kFormatVersion = 1;
    static constexpr const char* kEnvVar = "THETA_TOWER_CACHE";

    explicit EnumerationCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    /// $THETA_TOWER_CACHE if set (it overrides the flag), else the flag value, else the fallback.
    static std::filesystem::path resolve_dir(const std::optional<std::string>& flag,
                                             const std::string& fallback = ".theta-tower-cache")
    {
        if (const char* env = std::getenv(kEnvVar); env && *env)
            return env;
        if (flag)
            return *flag;
        return fallback;
    }

    const std::filesystem::path& dir() const { return dir_; }

    static std::string shell_key(const std::string& lattice, long norm) { return lattice + "/" + std::to_string(norm); }

    std::filesystem::path shell_path(const std::string& lattice, long norm) const
    {
        return dir_ / ("shell-" + sanitize(lattice) + "-" + std::to_string(norm) + ".json");
    }

    std::filesystem::path series_path(const std::string& key) const
    {
        return dir_ / ("series-" + sanitize(key) + ".json");
    }

    void store_shell(const std::string& lattice, long norm, const std::vector<std::vector<long>>& vectors) const
    {
        nlohmann::json payload;
        payload["lattice"] = lattice;
        payload["norm"] = norm;
        payload["count"] = vectors.size();
        payload["vectors"] = vectors;
        write_entry(shell_path(lattice, norm), "shell", shell_key(lattice, norm), payload);
    }

    std::optional<std::vector<std::vector<long>>> load_shell(const std::string& lattice, long norm) const
    {
        auto payload = read_entry(shell_path(lattice, norm), "shell", shell_key(lattice, norm));
        if (!payload)
            return std::nullopt;
        try
        {
            auto v = payload->at("vectors").get<std::vector<std::vector<long>>>();
            if (v.size() != payload->at("count").get<std::size_t>())
                return std::nullopt;
            return v;
        }
        catch (const nlohmann::json::exception&)
        {
            return std::nullopt;
        }
    }

    void store_series(const std::string& key, const FourierExpansion& f) const
    {
        nlohmann::json payload;
        payload["series"] = to_json(f);
        write_entry(series_path(key), "series", key, payload);
    }

    std::optional<FourierExpansion> load_series(const std::string& key) const
    {
        auto payload = read_entry(series_path(key), "series", key);
        if (!payload)
            return std::nullopt;
        try
        {
            return series_from_json(payload->at("series"));
        }
        catch (const std::exception&)
        {
            return std::nullopt;
        }
    }

    /// E8 vectors of all even norms up to max_norm as doubled ambient coordinates; missing or
    /// invalid shells are recomputed and written back.
    E8Shells e8_shells(long max_norm) const
    {
        const GramLattice e8 = lattice_E8();
        std::vector<std::vector<std::vector<long>>> shells;
        bool complete = true;
        for (long n = 0; n <= max_norm && complete; n += 2)
        {
            auto s = load_shell("E8", n);
            if (!s)
                complete = false;
            else
                shells.push_back(std::move(*s));
        }
        if (!complete)
        {
            shells.assign(static_cast<std::size_t>(max_norm / 2 + 1), {});
            ShortVectorEnumerator en(e8.gram());
            en.for_each(max_norm, [&](std::span<const long> x, std::int64_t nrm) {
                shells[static_cast<std::size_t>(nrm / 2)].emplace_back(x.begin(), x.end());
            });
            for (std::size_t i = 0; i < shells.size(); ++i)
            {
                std::sort(shells[i].begin(), shells[i].end());
                store_shell("E8", static_cast<long>(2 * i), shells[i]);
            }
        }
        const auto& basis = e8.ambient()->basis;
        E8Shells out;
        out.max_norm = max_norm;
        for (const auto& shell : shells)
            for (const auto& x : shell)
            {
                if (x.size() != 8)
                    throw CacheError("malformed E8 shell vector in " + dir_.string());
                std::array<int, 8> w{};
                for (std::size_t i = 0; i < 8; ++i)
                    for (std::size_t k = 0; k < 8; ++k)
                        w[k] += static_cast<int>(x[i] * to_long(basis(i, k) * 2));
                out.vectors.push_back(w);
            }
        std::sort(out.vectors.begin(), out.vectors.end());
        return out;
    }

    struct Entry
    {
        std::string file;
        std::string kind;
        std::string key;
        std::string status; // "ok", or the reason the entry would be ignored
        std::size_t items = 0;
    };

    std::vector<Entry> inspect() const
    {
        std::vector<Entry> out;
        if (!std::filesystem::exists(dir_))
            return out;
        std::vector<std::filesystem::path> files;
        for (const auto& e : std::filesystem::directory_iterator(dir_))
            if (e.is_regular_file() && e.path().extension() == ".json")
                files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files)
        {
            Entry entry;
            entry.file = f.filename().string();
            try
            {
                const nlohmann::json j = parse_file(f);
                entry.kind = j.value("kind", "");
                entry.key = j.value("key", "");
                entry.status = validate(j);
                if (entry.status == "ok")
                {
                    const auto& p = j.at("payload");
                    entry.items = entry.kind == "shell" ? p.at("count").get<std::size_t>()
                                                        : p.at("series").at("terms").size();
                }
            }
            catch (const std::exception& ex)
            {
                entry.status = std::string("unreadable: ") + ex.what();
            }
            out.push_back(std::move(entry));
        }
        return out;
    }

    /// Removes all cache entries; returns how many files were deleted.
    std::size_t clear() const
    {
        std::size_t n = 0;
        if (!std::filesystem::exists(dir_))
            return 0;
        std::error_code ec;
        for (const auto& e : std::filesystem::directory_iterator(dir_, ec))
            if (e.is_regular_file() && e.path().extension() == ".json")
            {
                if (!std::filesystem::remove(e.path(), ec))
                    throw CacheError("cannot remove " + e.path().string() + ": " + ec.message());
                ++n;
            }
        if (ec)
            throw CacheError("cannot list " + dir_.string() + ": " + ec.message());
        return n;
    }

private:
    static std::string sanitize(const std::string& s)
    {
        std::string out;
        for (char c : s)
            out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.') ? c : '_';
        return out;
    }

    static nlohmann::json parse_file(const std::filesystem::path& p)
    {
        std::ifstream in(p);
        if (!in)
            throw CacheError("cannot read " + p.string());
        return nlohmann::json::parse(in);
    }

    static std::string validate(const nlohmann::json& j)
    {
        if (!j.is_object() || !j.contains("format_version") || !j.contains("payload") || !j.contains("checksum"))
            return "malformed";
        if (j.at("format_version") != kFormatVersion)
            return "format version mismatch";
        if (j.at("checksum") != fnv1a64_hex(j.at("payload").dump()))
            return "checksum mismatch";
        return "ok";
    }

    std::optional<nlohmann::json> read_entry(const std::filesystem::path& p, const std::string& kind,
                                             const std::string& key) const
    {
        if (!std::filesystem::exists(p))
            return std::nullopt;
        try
        {
            nlohmann::json j = parse_file(p);
            if (validate(j) != "ok" || j.value("kind", "") != kind || j.value("key", "") != key)
                return std::nullopt;
            return j.at("payload");
        }
        catch (const nlohmann::json::exception&)
        {
            return std::nullopt;
        }
    }

    void write_entry(const std::filesystem::path& p, const std::string& kind, const std::string& key,
                     const nlohmann::json& payload) const
    {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec)
            throw CacheError("cannot create cache directory " + dir_.string() + ": " + ec.message());
        nlohmann::json j;
        j["format_version"] = kFormatVersion;
        j["kind"] = kind;
        j["key"] = key;
        j["payload"] = payload;
        j["checksum"] = fnv1a64_hex(payload.dump());
        const auto tmp = p.string() + ".tmp";
        {
            std::ofstream out(tmp);
            if (!out)
                throw CacheError("cannot write " + tmp);
            out << j.dump() << "\n";
            if (!out)
                throw CacheError("write failed for " + tmp);
        }
        std::filesystem::rename(tmp, p, ec);
        if (ec)
            throw CacheError("cannot move " + tmp + " to " + p.string() + ": " + ec.message());
    }

    std::filesystem::path dir_;
};

} // namespace theta_tower
