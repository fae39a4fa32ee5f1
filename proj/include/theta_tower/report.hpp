#pragma once

#include <chrono>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace theta_tower
{

enum class CheckStatus
{
    pass,
    fail,
    skipped
};

inline const char* to_string(CheckStatus s)
{
    switch (s)
    {
    case CheckStatus::pass:
        return "pass";
    case CheckStatus::fail:
        return "fail";
    case CheckStatus::skipped:
        return "skipped";
    }
    return "?";
}

struct Check
{
    std::string id;
    std::string description;
    CheckStatus status = CheckStatus::fail;
    std::string expected;
    std::string actual;
    std::string provenance; // where the expected value comes from
};

/// Outcome of one verification suite. The body contains no timing data, so reports are
/// byte-identical across runs.
struct VerificationReport
{
    std::string suite;
    std::vector<Check> checks;
    std::chrono::duration<double> elapsed{}; // not part of the rendered body

    bool passed() const
    {
        for (const auto& c : checks)
            if (c.status == CheckStatus::fail)
                return false;
        return true;
    }

    std::size_t count(CheckStatus s) const
    {
        std::size_t n = 0;
        for (const auto& c : checks)
            n += c.status == s;
        return n;
    }

    /// Records a comparison; passes iff expected == actual.
    Check& expect(std::string id, std::string description, std::string expected, std::string actual,
                  std::string provenance)
    {
        const bool ok = expected == actual;
        checks.push_back({std::move(id), std::move(description), ok ? CheckStatus::pass : CheckStatus::fail,
                          std::move(expected), std::move(actual), std::move(provenance)});
        return checks.back();
    }

    Check& expect_true(std::string id, std::string description, bool ok, std::string detail, std::string provenance)
    {
        checks.push_back({std::move(id), std::move(description), ok ? CheckStatus::pass : CheckStatus::fail, "true",
                          ok ? "true" : "false: " + detail, std::move(provenance)});
        return checks.back();
    }

    void fail(std::string id, std::string description, std::string error, std::string provenance)
    {
        checks.push_back({std::move(id), std::move(description), CheckStatus::fail, "no error", std::move(error),
                          std::move(provenance)});
    }

    std::string render_text() const
    {
        std::ostringstream out;
        out << "suite " << suite << ": " << (passed() ? "PASS" : "FAIL") << " (" << count(CheckStatus::pass)
            << " passed, " << count(CheckStatus::fail) << " failed, " << count(CheckStatus::skipped)
            << " skipped)\n";
        for (const auto& c : checks)
        {
            out << "  [" << to_string(c.status) << "] " << c.id << ": " << c.description << "\n";
            if (c.status == CheckStatus::fail)
                out << "      expected: " << c.expected << "\n      actual:   " << c.actual << "\n";
            out << "      source: " << c.provenance << "\n";
        }
        return out.str();
    }

    nlohmann::json to_json() const
    {
        nlohmann::json j;
        j["suite"] = suite;
        j["passed"] = passed();
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& c : checks)
            arr.push_back({{"id", c.id},
                           {"description", c.description},
                           {"status", to_string(c.status)},
                           {"expected", c.expected},
                           {"actual", c.actual},
                           {"provenance", c.provenance}});
        j["checks"] = std::move(arr);
        return j;
    }
};

} // namespace theta_tower
