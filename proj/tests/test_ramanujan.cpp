#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "cuspdet/ramanujan.hpp"
#include "cuspdet/specfun.hpp"

using namespace cuspdet;
using namespace cuspdet::ramanujan;

namespace {

HalfPlaneFunction power(double s) { return {[s](Complex z) { return std::pow(z, -s); }, 0.0, 0.0}; }

}  // namespace

TEST_CASE("closed form R-sums")
{
    CHECK(std::fabs(ramanujan_sum(power(2.0)) - (kPi * kPi / 6.0 - 1.0)) < 1e-12);
    CHECK(std::fabs(ramanujan_sum(power(1.0)) - kEulerGamma) < 1e-12);
    // log: 1/2 log(2 pi) - 1
    HalfPlaneFunction lg{[](Complex z) { return std::log(z); }, 0.0, 0.0};
    CHECK(std::fabs(ramanujan_sum(lg) - (0.5 * std::log(2.0 * kPi) - 1.0)) < 1e-12);
    CHECK(std::fabs(ramanujan_sum(lg) + 2.0 * specfun::bose_arctan_integral(1.0)) < 1e-13);
    // e^{-x}: 1/(e-1) - 1/e
    HalfPlaneFunction ex{[](Complex z) { return std::exp(-z); }, -1.0, 1.0};
    CHECK(std::fabs(ramanujan_sum(ex) - (1.0 / (std::exp(1.0) - 1.0) - std::exp(-1.0))) < 1e-12);
}

TEST_CASE("R-sum of a power equals zeta minus the integral")
{
    for (double s : {1.25, 1.5, 2.5, 4.0})
        CHECK(std::fabs(ramanujan_sum(power(s)) - (specfun::riemann_zeta(s) - 1.0 / (s - 1.0))) < 1e-11);
}

TEST_CASE("split check")
{
    for (double s : {1.5, 2.0, 3.0}) {
        auto sc = sum_split_check(power(s), 10000, 1.0 / (s - 1.0));
        CHECK_FALSE(sc.skipped);
        CHECK(sc.residual < 1e-8);
        CHECK(std::fabs(sc.spot_k100) < std::fabs(sc.spot_k10));
    }
}

TEST_CASE("shifted kernel vanishes")
{
    auto f = power(1.5);
    double k1 = std::fabs(shifted_kernel_integral(f, 1.0));
    double k50 = std::fabs(shifted_kernel_integral(f, 50.0));
    CHECK(k50 < 1e-3 * k1);
}

TEST_CASE("linearity")
{
    HalfPlaneFunction lg{[](Complex z) { return std::log(z); }, 0.0, 0.0};
    CHECK(linearity_residual(power(2.0), lg, 0.7, -3.1) < 1e-13);
}

TEST_CASE("kernel stays bounded at small t")
{
    auto b = kernel_boundedness(power(2.0));
    CHECK(b.bounded);
    for (double v : b.values) CHECK(std::isfinite(v));
    // limit of the integrand at t -> 0: -f'(1)/pi
    CHECK(std::fabs(kernel_integrand(power(2.0), 1e-8) - 2.0 / kPi) < 1e-6);
}

TEST_CASE("Hurwitz profile in mu")
{
    for (const auto& row : hurwitz_mu_profile({0.0, 0.5, 3.0, 20.0}))
        CHECK(std::fabs(row.difference) < 1e-10 * std::max(1.0, std::fabs(row.euler_maclaurin)));
}
