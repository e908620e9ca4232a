#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cuspdet/cli.hpp"
#include "cuspdet/zetadet.hpp"
#include "json.hpp"

using namespace cuspdet;

namespace {

struct Out {
    int code;
    std::string out, err;
};

Out call(std::vector<std::string> args)
{
    args.insert(args.begin(), "cuspdet");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream o, e;
    int c = cli::run(static_cast<int>(argv.size()), argv.data(), o, e);
    return {c, o.str(), e.str()};
}

std::string temp_path(const std::string& name) { return std::string("/tmp/cuspdet_test_") + name; }

}  // namespace

TEST_CASE("bad input exits with 1")
{
    auto r = call({"det", "--bogus", "1"});
    CHECK(r.code == 1);
    CHECK(r.err.find("error") != std::string::npos);
    r = call({"det", "--alpha", "1.2"});
    CHECK(r.code == 1);
    CHECK(r.err.find("0 <= alpha < 1") != std::string::npos);
    r = call({"det", "--delta", "0.1"});
    CHECK(r.code == 1);
    r = call({"frobnicate"});
    CHECK(r.code == 1);
    r = call({"det", "--format", "xml"});
    CHECK(r.code == 1);
}

TEST_CASE("eig csv")
{
    auto r = call({"eig", "--a", "1", "--alpha", "0.3", "--lambda-max", "60", "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("k,j,r,lambda,residual", 0) == 0);
    // first eigenvalue: r = 4.266280192960181 in mode 0
    CHECK(r.out.find("0,1,4.26628019296") != std::string::npos);
}

TEST_CASE("count csv")
{
    auto r = call({"count", "--a", "2", "--alpha", "0.3", "--lambda-max", "100", "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("lambda,N_empirical,weyl_bound,pass", 0) == 0);
}

TEST_CASE("det json matches the library")
{
    auto r = call({"det", "--a", "1", "--alpha", "0.3", "--format", "json"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("schema_version") == 1);
    CHECK(std::fabs(j.at("logdet").get<double>() - (-0.6189805712351705)) < 1e-12);
    auto rep = zetadet::DeterminantReport::from_json(r.out);
    CHECK(rep.alpha == 0.3);
}

TEST_CASE("config file with flag override")
{
    std::string path = temp_path("cfg.txt");
    {
        std::ofstream f(path);
        f << "# test config\n"
          << "a = 1\n"
          << "alpha = 0.3\n"
          << "format = json\n";
    }
    auto r1 = call({"det", "--config", path});
    REQUIRE(r1.code == 0);
    auto j1 = nlohmann::json::parse(r1.out);
    CHECK(j1.at("alpha").get<double>() == 0.3);
    auto r2 = call({"det", "--config", path, "--alpha", "0"});
    REQUIRE(r2.code == 0);
    auto j2 = nlohmann::json::parse(r2.out);
    CHECK(j2.at("alpha").get<double>() == 0.0);
    CHECK(std::fabs(j2.at("logdet").get<double>() - 0.9410942558020001) < 1e-12);
    std::remove(path.c_str());
}

TEST_CASE("output file")
{
    std::string path = temp_path("eig.csv");
    auto r = call({"eig", "--lambda-max", "40", "--alpha", "0.3", "--format", "csv", "--output", path});
    REQUIRE(r.code == 0);
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str().rfind("k,j,r,lambda,residual", 0) == 0);
    std::remove(path.c_str());
}

TEST_CASE("zeta and sweep")
{
    auto z = call({"zeta", "--alpha", "0.3", "--s", "1.5", "--k-max", "5", "--format", "json"});
    REQUIRE(z.code == 0);
    auto j = nlohmann::json::parse(z.out);
    CHECK(std::fabs(j.at("value").get<double>() - 0.0366469219859923) < 1e-10);
    CHECK(call({"zeta", "--s", "0.5"}).code == 1);

    auto s = call({"sweep", "--alpha", "0.3", "--mode", "mu", "--grid", "0,1,4", "--format", "csv"});
    REQUIRE(s.code == 0);
    CHECK(s.out.rfind("a,alpha,mu,delta,logdet,est_error", 0) == 0);
    int lines = 0;
    for (char c : s.out) lines += c == '\n';
    CHECK(lines == 4);
}

TEST_CASE("asym csv")
{
    auto r = call({"asym", "--alpha", "0.3", "--mode", "a", "--grid", "5,10", "--format", "csv"});
    REQUIRE(r.code == 0);
    auto rep = zetadet::ResidualReport::from_csv(r.out);
    REQUIRE(rep.rows.size() == 2);
    CHECK(rep.rows[0].grid_value == 5.0);
}

TEST_CASE("verify csv round trip and determinism")
{
    auto r1 = call({"verify", "ramanujan", "--format", "csv"});
    CHECK(r1.code == 0);
    auto rows = cli::parse_verify_csv(r1.out);
    REQUIRE(!rows.empty());
    for (const auto& row : rows) CHECK(row.pass);
    CHECK(cli::verify_csv(rows) == r1.out);
    auto r8 = call({"verify", "ramanujan", "--format", "csv", "--parallelism", "8"});
    CHECK(r8.out == r1.out);
    auto js = call({"verify", "hypergeom", "--quick", "--format", "json"});
    CHECK(js.code == 0);
    CHECK(nlohmann::json::parse(js.out).at("rows").is_array());
    CHECK(call({"verify", "nothing"}).code == 1);
}

TEST_CASE("run config validation")
{
    cli::RunConfig c;
    c.command = "det";
    CHECK_NOTHROW(c.validate());
    c.parallelism = 0;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c.parallelism = 1;
    c.a = -1.0;
    CHECK_THROWS_AS(c.validate(), DomainError);
}
