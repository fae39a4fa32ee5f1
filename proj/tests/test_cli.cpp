#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include <theta_tower/theta_tower.hpp>

namespace tt = theta_tower;
namespace fs = std::filesystem;

namespace
{

struct TempDir
{
    fs::path path;
    TempDir()
    {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        path = fs::temp_directory_path() /
               ("theta-tower-" + std::string(info->test_suite_name()) + "-" + info->name() + "-" +
                std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

struct CliRun
{
    int code = -1;
    std::string out;
};

CliRun run_cli(const std::string& args)
{
    CliRun r;
    const std::string cmd = "env -u THETA_TOWER_CACHE '" + std::string(THETA_TOWER_CLI) + "' " + args + " 2>/dev/null";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe)
        return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.out.append(buf.data(), n);
    const int status = ::pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

nlohmann::json read_json(const fs::path& p)
{
    std::ifstream in(p);
    return nlohmann::json::parse(in);
}

void write_json(const fs::path& p, const nlohmann::json& j)
{
    std::ofstream out(p);
    out << j.dump();
}

tt::Settings low_precision()
{
    tt::Settings s;
    s.qprec = {73, 73, 73, 73, 73};
    s.jobs = 2;
    return s;
}

} // namespace

TEST(Cache, ShellRoundTrip)
{
    TempDir d;
    tt::EnumerationCache cache(d.path);
    cache.store_shell("E8", 2, {{1, 0}, {0, 1}});
    const auto v = cache.load_shell("E8", 2);
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(v->size(), 2u);
    EXPECT_FALSE(cache.load_shell("E8", 4).has_value());
}

TEST(Cache, E8ShellNormFourHas2160Vectors)
{
    TempDir d;
    tt::EnumerationCache cache(d.path);
    const tt::E8Shells shells = cache.e8_shells(4);
    EXPECT_EQ(shells.vectors.size(), 1u + 240u + 2160u);
    const auto stored = cache.load_shell("E8", 4);
    ASSERT_TRUE(stored.has_value());
    EXPECT_EQ(stored->size(), 2160u);
    bool found = false;
    for (const auto& e : cache.inspect())
        if (e.key == "E8/4")
        {
            found = true;
            EXPECT_EQ(e.status, "ok");
            EXPECT_EQ(e.items, 2160u);
        }
    EXPECT_TRUE(found);
    // a second call reads the stored shells and agrees
    EXPECT_EQ(cache.e8_shells(4).vectors, shells.vectors);
}

TEST(Cache, VersionMismatchIsIgnored)
{
    TempDir d;
    tt::EnumerationCache cache(d.path);
    cache.store_shell("E8", 2, {{1}});
    const fs::path p = cache.shell_path("E8", 2);
    auto j = read_json(p);
    j["format_version"] = tt::EnumerationCache::kFormatVersion + 1;
    write_json(p, j);
    EXPECT_FALSE(cache.load_shell("E8", 2).has_value());
    EXPECT_EQ(cache.inspect().at(0).status, "format version mismatch");
}

TEST(Cache, ChecksumMismatchFallsBackToRecomputation)
{
    TempDir d;
    tt::EnumerationCache cache(d.path);
    const auto reference = cache.e8_shells(2).vectors;
    const fs::path p = cache.shell_path("E8", 2);
    auto j = read_json(p);
    j["payload"]["vectors"][0][0] = 99;
    write_json(p, j);
    EXPECT_EQ(cache.inspect().back().status, "checksum mismatch");
    EXPECT_FALSE(cache.load_shell("E8", 2).has_value());
    EXPECT_EQ(cache.e8_shells(2).vectors, reference);
    EXPECT_TRUE(cache.load_shell("E8", 2).has_value());
}

TEST(Cache, UnreadableDirectoryIsReported)
{
    TempDir d;
    const fs::path file = d.path / "plain-file";
    std::ofstream(file) << "x";
    tt::EnumerationCache cache(file / "sub");
    EXPECT_THROW(cache.store_shell("E8", 0, {{0}}), tt::CacheError);
}

TEST(Cache, ClearRemovesEntries)
{
    TempDir d;
    tt::EnumerationCache cache(d.path);
    cache.e8_shells(4);
    EXPECT_EQ(cache.clear(), 3u);
    EXPECT_TRUE(cache.inspect().empty());
}

TEST(Cache, EnvironmentOverridesFlag)
{
    ::setenv(tt::EnumerationCache::kEnvVar, "/tmp/from-env", 1);
    EXPECT_EQ(tt::EnumerationCache::resolve_dir(std::string("/tmp/from-flag")), fs::path("/tmp/from-env"));
    ::unsetenv(tt::EnumerationCache::kEnvVar);
    EXPECT_EQ(tt::EnumerationCache::resolve_dir(std::string("/tmp/from-flag")), fs::path("/tmp/from-flag"));
    EXPECT_EQ(tt::EnumerationCache::resolve_dir(std::nullopt), fs::path(".theta-tower-cache"));
}

TEST(Cache, TamperedSeriesFailsTheOffendingEdge)
{
    TempDir d;
    tt::EnumerationCache cache(d.path);
    tt::SuiteContext ctx{low_precision(), &cache};
    for (const auto& spec : tt::TowerDiagram::node_specs())
        cache.store_series(tt::node_key(spec.name, 73), spec.make(73).expansion);
    EXPECT_TRUE(tt::run_tower_diagram(ctx).passed());

    // a consistent entry with a wrong coefficient passes the checksum and must fail the edges
    auto f = *cache.load_series(tt::node_key("phi10,2A1", 73));
    f.add_term(tt::make_exponent(tt::kQUnit, {0, 0}), 7);
    cache.store_series(tt::node_key("phi10,2A1", 73), f);
    const auto report = tt::run_tower_diagram(ctx);
    EXPECT_FALSE(report.passed());
    bool named = false;
    for (const auto& c : report.checks)
        if (c.status == tt::CheckStatus::fail && c.id == "edge phi10,2A1 -> phi10,1A1 [pullback]")
            named = true;
    EXPECT_TRUE(named);
}

TEST(Config, ParsesKeysAndComments)
{
    std::istringstream in("# defaults\nqprec.m3 = 100  # inline\nmax_qprec.m4=200\njobs = 3\n\ncache_dir = /tmp/x\n");
    const tt::Settings s = tt::parse_config(in);
    EXPECT_EQ(s.precision_for(3), 100);
    EXPECT_EQ(s.max_qprec[4], 200);
    EXPECT_EQ(s.jobs, 3u);
    EXPECT_EQ(s.cache_dir, std::optional<std::string>("/tmp/x"));
    EXPECT_EQ(s.precision_for(1), tt::Settings{}.precision_for(1));
}

TEST(Config, RejectsBadInput)
{
    std::istringstream unknown("colour = red\n");
    EXPECT_THROW(tt::parse_config(unknown), tt::ConfigError);
    std::istringstream bad_value("qprec.m1 = many\n");
    EXPECT_THROW(tt::parse_config(bad_value), tt::ConfigError);
    std::istringstream no_equals("qprec.m1 240\n");
    EXPECT_THROW(tt::parse_config(no_equals), tt::ConfigError);
    EXPECT_THROW(tt::load_config("/nonexistent/theta.conf"), tt::ConfigError);
}

TEST(Report, PassFailAndSkipped)
{
    tt::VerificationReport r;
    r.suite = "demo";
    r.expect("a", "equal", "1", "1", "src");
    EXPECT_TRUE(r.passed());
    r.checks.push_back({"b", "skipped", tt::CheckStatus::skipped, "", "", "src"});
    EXPECT_TRUE(r.passed());
    r.expect("c", "differs", "1", "2", "src");
    EXPECT_FALSE(r.passed());
    const auto j = r.to_json();
    EXPECT_EQ(j.at("suite"), "demo");
    EXPECT_EQ(j.at("checks").size(), 3u);
    EXPECT_EQ(j.at("checks")[2].at("status"), "fail");
}

TEST(Report, DeterministicAcrossWorkerCounts)
{
    tt::SuiteContext one{low_precision(), nullptr};
    one.settings.jobs = 1;
    tt::SuiteContext many = one;
    many.settings.jobs = 4;
    const std::vector<std::string> names{"tower-diagram", "lattice"};
    EXPECT_EQ(tt::render_reports(tt::run_suites(names, one)), tt::render_reports(tt::run_suites(names, many)));
}

TEST(Report, CacheIndependent)
{
    TempDir d;
    tt::EnumerationCache cache(d.path);
    tt::SuiteContext without{low_precision(), nullptr};
    tt::SuiteContext with{low_precision(), &cache};
    const std::vector<std::string> names{"tower-diagram"};
    const std::string a = tt::render_reports(tt::run_suites(names, without));
    const std::string b = tt::render_reports(tt::run_suites(names, with));
    const std::string c = tt::render_reports(tt::run_suites(names, with));
    EXPECT_EQ(a, b);
    EXPECT_EQ(b, c);
}

TEST(Cli, ExpandJsonRoundTrips)
{
    const CliRun r = run_cli("expand eps4 --m 1 --qmax 3 --format json");
    ASSERT_EQ(r.code, 0);
    const tt::FourierExpansion f = tt::series_from_json(nlohmann::json::parse(r.out));
    EXPECT_EQ(f, tt::eps4(1, 3 * tt::kQUnit + 1));
}

TEST(Cli, ExpandTable)
{
    const CliRun r = run_cli("expand eps4 --m 2 --qmax 1 --format table");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("r^(1/2,-1/2)"), std::string::npos);
    EXPECT_NE(r.out.find("precision:"), std::string::npos);
    const CliRun eta = run_cli("expand eta --e 0 --format json");
    ASSERT_EQ(eta.code, 0);
    const auto j = nlohmann::json::parse(eta.out);
    ASSERT_EQ(j.at("terms").size(), 1u);
    EXPECT_EQ(j.at("terms")[0][2], "1/1");
}

TEST(Cli, ExpandDelta24StartsAtQ3)
{
    const CliRun r = run_cli("expand delta24 --qmax 4 --format json");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(tt::series_from_json(nlohmann::json::parse(r.out)).valuation(), 3 * tt::kQUnit);
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run_cli("expand bogus").code, 2);
    EXPECT_EQ(run_cli("expand eps4 --m 9").code, 2);
    EXPECT_EQ(run_cli("expand eps4 --m 1 --qmax 1000").code, 3);
    EXPECT_EQ(run_cli("repnum E7 3").code, 2);
    EXPECT_EQ(run_cli("repnum A2 2").code, 2);
    EXPECT_EQ(run_cli("verify --suite nope").code, 2);
    EXPECT_EQ(run_cli("").code, 2);
    EXPECT_EQ(run_cli("--config /nonexistent/theta.conf repnum E7 2").code, 2);
}

TEST(Cli, Repnum)
{
    EXPECT_EQ(run_cli("repnum E7 2").out, "126\n");
    EXPECT_EQ(run_cli("repnum D6 2").out, "60\n");
    EXPECT_EQ(run_cli("repnum A1+D4 2").out, "26\n");
    EXPECT_EQ(run_cli("repnum 4A1 2").out, "8\n");
    EXPECT_EQ(run_cli("repnum Niemeier 4").out, "195408\n");
}

TEST(Cli, VerifySuites)
{
    const CliRun g = run_cli("verify --suite golay");
    EXPECT_EQ(g.code, 0);
    EXPECT_NE(g.out.find("overall: PASS"), std::string::npos);
    const CliRun j = run_cli("verify --suite lattice --format json");
    ASSERT_EQ(j.code, 0);
    EXPECT_EQ(nlohmann::json::parse(j.out).at(0).at("suite"), "lattice");
}

TEST(Cli, CorruptedCacheFailsVerification)
{
    TempDir d;
    const std::string dir = "--cache-dir '" + d.path.string() + "'";
    const fs::path conf = d.path / "low.conf";
    std::ofstream(conf) << "qprec.m0 = 73\nqprec.m1 = 73\nqprec.m2 = 73\nqprec.m3 = 73\nqprec.m4 = 73\n";
    const std::string cfg = "--config '" + conf.string() + "' ";
    ASSERT_EQ(run_cli(cfg + "cache build " + dir).code, 0);
    EXPECT_EQ(run_cli(cfg + "verify --suite tower-diagram " + dir).code, 0);

    tt::EnumerationCache cache(d.path);
    auto f = *cache.load_series(tt::node_key("phi8,3A1", 73));
    f.add_term(tt::make_exponent(tt::kQUnit, {0, 0, 0}), 1);
    cache.store_series(tt::node_key("phi8,3A1", 73), f);

    const CliRun r = run_cli(cfg + "verify --suite tower-diagram " + dir);
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("[fail] edge phi8,3A1 -> phi8,2A1 [pullback]"), std::string::npos);

    EXPECT_EQ(run_cli(cfg + "cache clear " + dir).code, 0);
    EXPECT_EQ(run_cli(cfg + "verify --suite tower-diagram " + dir).code, 0);
}
