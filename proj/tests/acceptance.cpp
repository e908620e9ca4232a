#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "cuspdet/cli.hpp"

using namespace cuspdet;

namespace {

// runtime budgets in seconds, criteria 1..8
constexpr double kBudget[9] = {0, 10, 60, 60, 30, 300, 600, 900, 1200};

const char* kTitle[10] = {"",
                          "Bessel kernel",
                          "uniform asymptotics",
                          "hypergeometric identities",
                          "Ramanujan summation",
                          "spectrum",
                          "strip equivalence",
                          "determinant a-asymptotics",
                          "determinant mu-asymptotics",
                          "reproducibility"};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main()
{
    cli::VerifyOptions p1;
    std::vector<std::vector<cli::VerifyRow>> rows(9);
    bool all_ok = true;

    for (int c = 1; c <= 8; ++c) {
        auto t0 = std::chrono::steady_clock::now();
        std::string note;
        bool ok = true;
        try {
            rows[c] = cli::criterion_rows(c, p1);
        } catch (const std::exception& e) {
            ok = false;
            note = std::string(" exception: ") + e.what();
        }
        double dt = seconds_since(t0);
        int failed = 0;
        for (const auto& r : rows[c]) failed += !r.pass;
        if (rows[c].empty()) ok = false;
        if (failed) ok = false;
        if (dt > kBudget[c]) ok = false;
        all_ok = all_ok && ok;
        std::printf("criterion %d (%s): %s  rows %zu, failed %d, %.1f s of %.0f s%s\n", c, kTitle[c],
                    ok ? "PASS" : "FAIL", rows[c].size(), failed, dt, kBudget[c], note.c_str());
        for (const auto& r : rows[c])
            if (!r.pass)
                std::printf("    failed row: %s  measured %.6g  tolerance %.6g\n", r.name.c_str(), r.measured,
                            r.tolerance);
        std::fflush(stdout);
    }

    // 9: `verify all` at parallelism 1 (assembled from the rows above, in suite order) and 8
    {
        auto t0 = std::chrono::steady_clock::now();
        std::vector<cli::VerifyRow> serial;
        auto append = [&](const std::vector<cli::VerifyRow>& v) { serial.insert(serial.end(), v.begin(), v.end()); };
        const std::vector<std::pair<std::string, std::vector<int>>> order = {
            {"specfun", {1, 2}}, {"hypergeom", {3}}, {"ramanujan", {4}}, {"spectrum", {5}}, {"zetadet", {6, 7, 8}}};
        bool ok = true;
        std::string note;
        try {
            for (const auto& [sel, cs] : order) {
                for (int c : cs) append(rows[c]);
                append(cli::extra_rows(sel, p1));
            }
            cli::VerifyOptions p8;
            p8.parallelism = 8;
            std::string a = cli::verify_csv(serial);
            std::string b = cli::verify_csv(cli::verify_suite("all", p8));
            if (a != b) {
                ok = false;
                note = " outputs differ";
            }
        } catch (const std::exception& e) {
            ok = false;
            note = std::string(" exception: ") + e.what();
        }
        all_ok = all_ok && ok;
        std::printf("criterion 9 (%s): %s  parallelism 1 vs 8 byte comparison, %.1f s%s\n", kTitle[9],
                    ok ? "PASS" : "FAIL", seconds_since(t0), note.c_str());
    }
    return all_ok ? 0 : 1;
}
