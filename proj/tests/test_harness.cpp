#include "doctest.h"

#include "suq2/harness.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace suq2;
using namespace suq2::literals;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    auto p = fs::temp_directory_path() / ("suq2_test_harness_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

RunConfig small(std::set<Suite> suites)
{
    RunConfig c;
    c.suites = std::move(suites);
    c.n_max = 2_h;
    c.threads = 2;
    return c;
}

} // namespace

TEST_CASE("suite names round trip")
{
    for (auto s : all_suites()) CHECK(parse_suite(to_string(s)) == s);
    CHECK_FALSE(parse_suite("nope").has_value());
    CHECK(format_q(0.5) == "0.5");
    CHECK(format_q(0.3) == "0.3");
}

TEST_CASE("config validation")
{
    RunConfig c;
    CHECK_THROWS_WITH_AS(validate(c), doctest::Contains("suites"), ConfigError);
    c.suites = {Suite::Decompose};
    CHECK_NOTHROW(validate(c));
    c.qs = {0.5, 1.0};
    CHECK_THROWS_WITH_AS(validate(c), doctest::Contains("q"), ConfigError);
    c.qs = {};
    CHECK_THROWS_AS(validate(c), ConfigError);
    c.qs = {0.5};
    c.tol.gram = 0.0;
    CHECK_THROWS_WITH_AS(validate(c), doctest::Contains("tol-gram"), ConfigError);
    c.tol = {};
    c.suites = {Suite::KqDecay};
    c.n_max = 3_h;
    CHECK_THROWS_WITH_AS(validate(c), doctest::Contains("kq-decay"), ConfigError);
    c.suites = {Suite::Commutators};
    c.n_max = 5_hh;
    CHECK_THROWS_WITH_AS(validate(c), doctest::Contains("commutators"), ConfigError);
    CHECK_THROWS_AS(run(small({})), ConfigError);
}

TEST_CASE("decompose run: one exact report per q")
{
    const auto res = run(small({Suite::Decompose}));
    REQUIRE(res.reports.size() == 3);
    for (const auto& r : res.reports) {
        CHECK(r.suite == "decompose");
        CHECK(r.pass);
        CHECK(r.metric("max_entry_deviation") == 0.0);
        CHECK(r.key.twice_nmax == 4);
    }
    CHECK(res.reports[0].key.q < res.reports[1].key.q);
    CHECK(res.all_pass());
}

TEST_CASE("relations run: ten reports per q, verdict follows the metric")
{
    auto c = small({Suite::Relations});
    c.qs = {0.5};
    c.n_max = 4_h;
    const auto res = run(c);
    REQUIRE(res.reports.size() == 10);
    std::size_t prime = 0;
    for (const auto& r : res.reports) {
        CHECK(r.pass == (r.metric("defect_norm") <= c.tol.relation));
        if (r.key.subject.rfind("pi_prime:", 0) == 0) {
            ++prime;
            CHECK(r.pass);
        }
    }
    CHECK(prime == 5);
    CHECK(res.all_pass() == std::all_of(res.reports.begin(), res.reports.end(), [](const auto& r) { return r.pass; }));
}

TEST_CASE("emission: files, CSV header, plot naming")
{
    auto c = small({Suite::KqDecay});
    c.qs = {0.5};
    c.n_max = 5_h;
    c.emit_plot_data = true;
    c.out_dir = scratch("emit");
    const auto res = run(c);
    const auto paths = emit(c, res);
    CHECK(paths.size() == 4);
    CHECK(fs::exists(c.out_dir / "report.json"));
    CHECK(fs::exists(c.out_dir / "kq_alpha_star_q0.5.dat"));
    CHECK(fs::exists(c.out_dir / "kq_beta_q0.5.dat"));
    const auto csv = slurp(c.out_dir / "report.csv");
    CHECK(csv.rfind("suite,q,twice_nmax,subject,pass,metrics,thresholds\n", 0) == 0);
    std::istringstream plot(slurp(c.out_dir / "kq_beta_q0.5.dat"));
    std::string line;
    std::getline(plot, line);
    CHECK(line[0] == '#');
    double n = 0, y = 0;
    plot >> n >> y;
    CHECK(n == 0.0);
    CHECK(std::isfinite(y));

    const auto doc = nlohmann::json::parse(slurp(c.out_dir / "report.json"));
    CHECK(doc.contains("payload"));
    CHECK(doc.contains("timing"));
    CHECK(doc["payload_hash"] == payload_hash(res.reports));
    CHECK(doc["payload"]["reports"].size() == res.reports.size());
    fs::remove_all(c.out_dir);
}

TEST_CASE("empty report list gives a header-only CSV")
{
    CHECK(report_csv({}) == "suite,q,twice_nmax,subject,pass,metrics,thresholds\n");
    CHECK(nlohmann::json::parse(payload_json({}))["reports"].empty());
}

TEST_CASE("unwritable output directory")
{
    const auto blocker = scratch("blocker");
    std::ofstream(blocker) << "x";
    auto c = small({Suite::Family});
    c.out_dir = blocker / "sub";
    const auto res = run(c);
    try {
        (void)emit(c, res);
        FAIL("expected EmitError");
    } catch (const EmitError& e) {
        CHECK(std::string(e.what()).find(blocker.string()) != std::string::npos);
    }
    fs::remove(blocker);
}

TEST_CASE("determinism: identical payloads and JSON modulo timing")
{
    auto c = small({Suite::Relations, Suite::Adjoint, Suite::Decompose, Suite::Asymptotics, Suite::Family,
                    Suite::Minimality});
    c.qs = {0.3, 0.7};
    const auto a = run(c);
    c.threads = 1;
    const auto b = run(c);
    CHECK(payload_json(a.reports) == payload_json(b.reports));
    CHECK(payload_hash(a.reports) == payload_hash(b.reports));
    auto ja = nlohmann::json::parse(report_json(c, a));
    auto jb = nlohmann::json::parse(report_json(c, b));
    ja.erase("timing");
    jb.erase("timing");
    CHECK(ja.dump() == jb.dump());
}
