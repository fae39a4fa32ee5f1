// Command-line front end: expansions, verification suites, representation numbers, cache.

#include <cmath>
#include <iostream>
#include <optional>
#include <regex>
#include <string>

#include <CLI11.hpp>

#include "theta_tower/theta_tower.hpp"

namespace tt = theta_tower;

namespace
{

enum ExitCode
{
    kPass = 0,
    kCheckFailure = 1,
    kUsage = 2,
    kResource = 3
};

struct UsageError : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

struct ResourceError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

const char* kUnitsHelp = R"(Series conventions:
  A term is printed as  q^(n)  r^(l_1,...,l_m)  c  with l given in eps-coordinates,
  i.e. l = sum_j l_j eps_j for the orthogonal roots eps_j of mA1, (eps_j, eps_j) = 2.
  JSON output stores integers: [a, [u_1..u_m], "p/q"] means c q^(a/24) prod zeta_j^(u_j/2),
  with u_j = 4 l_j. "qprec" is the exclusive watermark a < qprec (null for exact series).)";

struct ExpandRequest
{
    std::string form;
    std::size_t m = 1;
    bool m_given = false;
    std::string qmax = "3";
    std::string format = "table";
    std::optional<int> k, j, e;
};

/// Splits names like "phi10", "eta24" or "theta_block2" into base and trailing number.
std::pair<std::string, std::optional<int>> split_form(const std::string& name)
{
    static const std::vector<std::string> exact{"eps4",    "eps6",  "psi", "phi",  "theta_block",
                                                "delta24", "theta", "eta", "phi01"};
    if (std::find(exact.begin(), exact.end(), name) != exact.end())
        return {name, std::nullopt};
    static const std::regex re("^([a-z_]+)([0-9]+)$");
    std::smatch mt;
    if (std::regex_match(name, mt, re))
        return {mt[1], std::stoi(mt[2])};
    return {name, std::nullopt};
}

int qprec_from_qmax(const std::string& qmax)
{
    tt::Rational q;
    try
    {
        q = tt::parse_rational(qmax);
    }
    catch (const std::invalid_argument&)
    {
        throw UsageError("--qmax must be a rational number, got " + qmax);
    }
    if (q < 0)
        throw UsageError("--qmax must be nonnegative");
    if (q > 100000)
        throw ResourceError("--qmax " + qmax + " exceeds any configured limit");
    return static_cast<int>(tt::to_long(tt::floor(q * tt::kQUnit))) + 1;
}

tt::FourierExpansion build_expansion(const ExpandRequest& req, const tt::Settings& settings,
                                     const tt::EnumerationCache* cache)
{
    auto [base, suffix] = split_form(req.form);
    auto need = [&](const std::optional<int>& flag, const char* what) {
        if (flag)
            return *flag;
        if (suffix)
            return *suffix;
        throw UsageError(std::string("form ") + base + " needs " + what);
    };
    std::size_t m = req.m;
    int parameter = 0;
    if (base == "eps4" || base == "eps6" || base == "psi")
    {
        if (m < 1 || m > 4)
            throw UsageError("--m must be in 1..4");
    }
    else if (base == "phi")
    {
        parameter = need(req.k, "a weight (--k or phiK)");
        if (m < 1 || m > 4)
            throw UsageError("--m must be in 1..4");
    }
    else if (base == "theta_block")
    {
        parameter = need(req.j, "an index (--j or theta_blockJ)");
        if (req.m_given && m != 4)
            throw UsageError("theta_block lives on 4A1");
        m = 4;
    }
    else if (base == "delta24")
    {
        if (req.m_given && m != 4)
            throw UsageError("delta24 lives on 4A1");
        m = 4;
    }
    else if (base == "theta")
    {
        if (req.m_given && m != 1)
            throw UsageError("theta has one elliptic variable");
        m = 1;
    }
    else if (base == "eta")
    {
        parameter = need(req.e, "an exponent (--e or etaE)");
        if (parameter < 0)
            throw UsageError("eta exponent must be nonnegative");
        m = 0;
    }
    else if (base == "phi01")
    {
        if (m < 1 || m > 4)
            throw UsageError("--m must be in 1..4");
        parameter = req.j.value_or(1);
        if (parameter < 1 || static_cast<std::size_t>(parameter) > m)
            throw UsageError("phi01 variable (--j) must be in 1..m");
    }
    else
    {
        throw UsageError("unknown form: " + req.form);
    }

    const int qprec = qprec_from_qmax(req.qmax);
    if (qprec > settings.max_qprec.at(m))
        throw ResourceError("--qmax " + req.qmax + " needs precision " + std::to_string(qprec) + "/24 but max_qprec.m" +
                            std::to_string(m) + " is " + std::to_string(settings.max_qprec.at(m)));

    std::optional<tt::E8Shells> shells;
    if (cache && (base == "eps4" || base == "eps6"))
        shells = cache->e8_shells(tt::e8_norm_bound(qprec));
    const tt::E8Shells* sp = shells ? &*shells : nullptr;

    if (base == "eps4")
        return tt::eps4(m, qprec, sp);
    if (base == "eps6")
        return tt::eps6_form(m, qprec, sp).expansion;
    if (base == "psi")
        return tt::psi_diag(m, qprec).expansion;
    if (base == "phi")
    {
        if (parameter % 2 != 0 || parameter > 12 || (12 - parameter) / 2 > static_cast<int>(m))
            throw UsageError("phi" + std::to_string(parameter) + " is not a node for m = " + std::to_string(m));
        return tt::tower_form(parameter, m, qprec).expansion;
    }
    if (base == "theta_block")
    {
        if (parameter < 1 || parameter > 3)
            throw UsageError("theta_block index must be 1, 2 or 3");
        return tt::theta_block_j(parameter, qprec).expansion;
    }
    if (base == "delta24")
        return tt::delta24(qprec).expansion;
    if (base == "theta")
        return tt::theta(qprec);
    if (base == "eta")
        return tt::eta_pow(parameter, qprec);
    return tt::phi01_in(m, static_cast<std::size_t>(parameter - 1), qprec);
}

std::optional<tt::EnumerationCache> open_cache(const std::optional<std::string>& flag, bool required)
{
    const char* env = std::getenv(tt::EnumerationCache::kEnvVar);
    if (!required && !flag && !(env && *env))
        return std::nullopt;
    return tt::EnumerationCache(tt::EnumerationCache::resolve_dir(flag));
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact expansions and verification for the A1 tower of Jacobi forms.\n\n" + std::string(kUnitsHelp)};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "key = value settings file (qprec.mN, max_qprec.mN, jobs, cache_dir)");

    ExpandRequest req;
    auto* expand = app.add_subcommand("expand", "print the expansion of a named form");
    expand->add_option("form", req.form,
                       "eps4 | eps6 | psi | phi (--k) | theta_block (--j) | delta24 | theta | eta (--e) | phi01")
        ->required();
    auto* m_opt = expand->add_option("--m", req.m, "number of A1 factors (1..4)");
    expand->add_option("--qmax", req.qmax, "largest q-exponent to print (rational, inclusive)");
    expand->add_option("--format", req.format, "json or table")->check(CLI::IsMember({"json", "table"}));
    expand->add_option("--k", req.k, "weight for phi");
    expand->add_option("--j", req.j, "index for theta_block, variable for phi01");
    expand->add_option("--e", req.e, "exponent for eta");

    std::vector<std::string> suites;
    unsigned jobs = 0;
    std::string report_format = "text";
    auto* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("--suite", suites, "paper-tables | tower-diagram | heat | lattice | golay | all")
        ->default_val(std::vector<std::string>{"all"});
    verify->add_option("--jobs", jobs, "worker threads");
    verify->add_option("--format", report_format, "text or json")->check(CLI::IsMember({"text", "json"}));

    std::string lattice_name;
    long norm = 0;
    auto* repnum = app.add_subcommand("repnum", "count lattice vectors of a given norm");
    repnum->add_option("lattice", lattice_name, "E7 | D6 | A1+D4 | 4A1 | E8 | Niemeier")->required();
    repnum->add_option("norm", norm, "even norm (x, x)")->required();

    std::string cache_action;
    auto* cache_cmd = app.add_subcommand("cache", "manage the enumeration cache");
    cache_cmd->add_option("action", cache_action, "build | inspect | clear")
        ->required()
        ->check(CLI::IsMember({"build", "inspect", "clear"}));

    std::optional<std::string> cache_dir;
    for (auto* sub : {expand, verify, cache_cmd})
        sub->add_option("--cache-dir", cache_dir, "cache directory (THETA_TOWER_CACHE overrides)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    try
    {
        tt::Settings settings;
        if (!config_path.empty())
            settings = tt::load_config(config_path);
        if (!cache_dir && settings.cache_dir)
            cache_dir = settings.cache_dir;

        if (*expand)
        {
            req.m_given = m_opt->count() > 0;
            auto cache = open_cache(cache_dir, false);
            const auto f = build_expansion(req, settings, cache ? &*cache : nullptr);
            if (req.format == "json")
                std::cout << tt::to_json(f).dump() << "\n";
            else
                std::cout << tt::to_table(f);
            return kPass;
        }
        if (*verify)
        {
            if (jobs > 0)
                settings.jobs = jobs;
            std::vector<std::string> names;
            for (const auto& s : suites)
            {
                if (s == "all")
                    names.insert(names.end(), tt::suite_names().begin(), tt::suite_names().end());
                else if (std::find(tt::suite_names().begin(), tt::suite_names().end(), s) != tt::suite_names().end())
                    names.push_back(s);
                else
                    throw UsageError("unknown suite: " + s);
            }
            auto cache = open_cache(cache_dir, false);
            tt::SuiteContext ctx{settings, cache ? &*cache : nullptr};
            const auto reports = tt::run_suites(names, ctx);
            bool ok = true;
            for (const auto& r : reports)
            {
                ok = ok && r.passed();
                std::cerr << "suite " << r.suite << " finished in " << r.elapsed.count() << " s\n";
            }
            if (report_format == "json")
            {
                nlohmann::json j = nlohmann::json::array();
                for (const auto& r : reports)
                    j.push_back(r.to_json());
                std::cout << j.dump(2) << "\n";
            }
            else
            {
                std::cout << tt::render_reports(reports);
            }
            return ok ? kPass : kCheckFailure;
        }
        if (*repnum)
        {
            const auto& names = tt::repnum_lattice_names();
            if (std::find(names.begin(), names.end(), lattice_name) == names.end())
                throw UsageError("unsupported lattice: " + lattice_name);
            if (norm < 0 || norm % 2 != 0)
                throw UsageError("norm must be a nonnegative even integer");
            std::cout << tt::representation_number(lattice_name, norm).get_str() << "\n";
            return kPass;
        }
        if (*cache_cmd)
        {
            tt::EnumerationCache cache = *open_cache(cache_dir, true);
            if (cache_action == "clear")
            {
                std::cout << "removed " << cache.clear() << " entries from " << cache.dir().string() << "\n";
                return kPass;
            }
            if (cache_action == "build")
            {
                int top = 0;
                for (std::size_t m = 0; m <= 4; ++m)
                    top = std::max(top, settings.precision_for(m));
                const tt::E8Shells shells = cache.e8_shells(tt::e8_norm_bound(top));
                std::size_t stored = 0;
                for (const auto& spec : tt::TowerDiagram::node_specs(&shells))
                {
                    const int p = settings.precision_for(spec.m);
                    cache.store_series(tt::node_key(spec.name, p), spec.make(p).expansion);
                    ++stored;
                }
                std::cout << "cached E8 shells up to norm " << shells.max_norm / 2 * 2 << " and " << stored
                          << " diagram nodes in " << cache.dir().string() << "\n";
                return kPass;
            }
            for (const auto& e : cache.inspect())
                std::cout << e.file << "  " << e.kind << "  " << e.key << "  " << e.status << "  " << e.items
                          << "\n";
            return kPass;
        }
    }
    catch (const UsageError& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    catch (const tt::ConfigError& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    catch (const ResourceError& e)
    {
        std::cerr << "resource error: " << e.what() << "\n";
        return kResource;
    }
    catch (const tt::CacheError& e)
    {
        std::cerr << "cache error: " << e.what() << "\n";
        return kResource;
    }
    catch (const std::filesystem::filesystem_error& e)
    {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kResource;
    }
    catch (const std::bad_alloc&)
    {
        std::cerr << "resource error: out of memory\n";
        return kResource;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
