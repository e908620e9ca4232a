#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace cuspdet::cli {

struct RunConfig {
    std::string command;   // eig | count | zeta | det | asym | verify | sweep
    std::string selector;  // verify target
    double a = 1.0;
    double alpha = 0.0;
    double mu = 0.0;
    double delta = 0.06;
    double lambda_max = 100.0;
    double s = 1.5;
    long k_max = 10;
    double r_max = 40.0;
    std::string mode = "a";  // asym and sweep: grid over a or mu
    std::vector<double> grid;
    std::string output;
    std::string format = "json";
    int parallelism = 1;
    bool quick = false;
    void validate() const;  // throws DomainError naming the violated constraint
};

// `key = value` lines, '#' starts a comment
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

struct VerifyRow {
    int criterion = 0;  // acceptance criterion the row belongs to, 0 for extra invariants
    std::string group;
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerifyOptions {
    bool quick = false;
    int parallelism = 1;
};

// selector: specfun, hypergeom, ramanujan, spectrum, zetadet, all
std::vector<VerifyRow> verify_suite(const std::string& selector, const VerifyOptions& opt);
// rows of one acceptance criterion (1..8)
std::vector<VerifyRow> criterion_rows(int criterion, const VerifyOptions& opt);
// invariants outside the acceptance criteria for one selector
std::vector<VerifyRow> extra_rows(const std::string& selector, const VerifyOptions& opt);

std::string verify_csv(const std::vector<VerifyRow>& rows);
std::vector<VerifyRow> parse_verify_csv(const std::string& text);
std::string verify_json(const std::vector<VerifyRow>& rows);

// full command line; exit 0 success, 1 validation error, 2 numeric failure
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cuspdet::cli
