// Acceptance runner: `acceptance N` evaluates criterion N (1..12), `acceptance` evaluates all.
// Prints one line per criterion and exits nonzero on any failure.

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <theta_tower/theta_tower.hpp>

namespace tt = theta_tower;

namespace
{

struct Criterion
{
    int id;
    std::string title;
    std::string suite;
    std::vector<std::string> prefixes; // check ids selected from the suite report
    std::size_t min_checks;
    double budget_seconds;
};

struct Outcome
{
    bool ok = false;
    std::string detail;
};

const std::vector<Criterion>& criteria()
{
    static const std::vector<Criterion> list{
        {1, "eps4,1A1 table through q^3", "paper-tables", {"eps4-table-m1-"}, 4, 5},
        {2, "eps4,2A1 through q^2 and eps4,3A1 through q^1", "paper-tables", {"eps4-table-m2-", "eps4-table-m3-"}, 5, 30},
        {3, "eps4 equals the complement-dual count s_m for m = 1..4", "paper-tables", {"s-oracle-m"}, 4, 120},
        {4, "chain complements have 126, 60, 26, 8 roots", "lattice", {"complement-roots-m", "complement-shells-m"}, 8, 10},
        {5, "Golay code and Niemeier arithmetic", "golay", {"golay-", "niemeier-", "quasi-pullback-weight-m"}, 19, 30},
        {6, "theta sum = product, oddness, theta'(0) ~ eta^3", "paper-tables", {"theta-"}, 4, 5},
        {7, "eps6 constants and integrality", "heat", {"eps6-constant-m", "eps6-integrality-m"}, 4, 60},
        {8, "heat operator preserves cusp forms", "heat", {"cusp-preservation-"}, 4, 60},
        {9, "tower diagram edges and psi_{4,4A1} = theta^2", "tower-diagram", {"edge ", "psi-4-4A1-square"}, 0, 180},
        {10, "Delta24 product, valuation, alternation, cusp condition", "tower-diagram",
         {"delta24-", "theta-block-"}, 8, 120},
        {11, "discriminant forms and their orthogonal groups", "lattice", {"disc-", "orthogonal-"}, 17, 60},
        {12, "verify all is byte-identical across worker counts", "", {}, 0, 600},
    };
    return list;
}

bool starts_with_any(const std::string& s, const std::vector<std::string>& prefixes)
{
    for (const auto& p : prefixes)
        if (s.rfind(p, 0) == 0)
            return true;
    return false;
}

Outcome from_suite(const Criterion& c)
{
    tt::SuiteContext ctx;
    ctx.settings.jobs = 2;
    const tt::VerificationReport report = tt::run_suite(c.suite, ctx);
    std::size_t selected = 0, passed = 0;
    std::string first_failure;
    for (const auto& check : report.checks)
    {
        if (!starts_with_any(check.id, c.prefixes))
            continue;
        ++selected;
        if (check.status == tt::CheckStatus::pass)
            ++passed;
        else if (first_failure.empty())
            first_failure = check.id + ": expected " + check.expected + ", got " + check.actual;
    }
    std::size_t required = c.min_checks;
    if (c.id == 9)
        required = tt::TowerDiagram::edge_list().size() + 1;
    Outcome o;
    o.ok = selected >= required && passed == selected;
    o.detail = std::to_string(passed) + "/" + std::to_string(selected) + " checks";
    if (selected < required)
        o.detail += ", expected at least " + std::to_string(required);
    if (!first_failure.empty())
        o.detail += ", " + first_failure;
    return o;
}

std::string capture(const std::string& command, int& status)
{
    std::string out;
    FILE* pipe = ::popen(command.c_str(), "r");
    if (!pipe)
    {
        status = -1;
        return out;
    }
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
        out.append(buf.data(), n);
    status = ::pclose(pipe);
    return out;
}

Outcome determinism()
{
    const std::string cli = THETA_TOWER_CLI;
    int s1 = 0, s2 = 0;
    const std::string a = capture("env -u THETA_TOWER_CACHE '" + cli + "' verify --suite all --jobs 1 2>/dev/null", s1);
    const std::string b = capture("env -u THETA_TOWER_CACHE '" + cli + "' verify --suite all --jobs 4 2>/dev/null", s2);
    Outcome o;
    o.ok = s1 == 0 && s2 == 0 && !a.empty() && a == b;
    o.detail = std::to_string(a.size()) + " bytes, jobs 1 vs 4 " + (a == b ? "identical" : "differ") +
               ", exit statuses " + std::to_string(s1) + "/" + std::to_string(s2);
    return o;
}

bool run(const Criterion& c)
{
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try
    {
        o = c.id == 12 ? determinism() : from_suite(c);
    }
    catch (const std::exception& ex)
    {
        o = {false, std::string("error: ") + ex.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = secs < c.budget_seconds;
    const bool ok = o.ok && in_budget;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs/%.0fs", secs, c.budget_seconds);
    std::cout << "criterion " << c.id << ": " << (ok ? "PASS" : "FAIL") << " [" << timing << "] " << c.title << " ("
              << o.detail << (in_budget ? "" : ", over time budget") << ")\n";
    return ok;
}

} // namespace

int main(int argc, char** argv)
{
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i)
        ids.push_back(std::atoi(argv[i]));
    if (ids.empty())
        for (const auto& c : criteria())
            ids.push_back(c.id);
    bool all_ok = true;
    for (int id : ids)
    {
        if (id < 1 || id > static_cast<int>(criteria().size()))
        {
            std::cerr << "unknown criterion " << id << "\n";
            return 2;
        }
        all_ok = run(criteria()[static_cast<std::size_t>(id - 1)]) && all_ok;
    }
    return all_ok ? 0 : 1;
}
