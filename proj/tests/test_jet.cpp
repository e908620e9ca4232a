#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "cuspdet/jet.hpp"
#include "cuspdet/specfun.hpp"

using namespace cuspdet;
using jet::Jet;

TEST_CASE("arithmetic round trip")
{
    Jet x = Jet::variable(0.7);
    Jet y = (x * x + 3.0) / (x + 1.0);
    Jet back = y * (x + 1.0) - 3.0 - x * x;
    for (int e = Jet::LO; e <= 4; ++e) CHECK(std::fabs(back[e]) < 1e-14);
}

TEST_CASE("exp and log are inverse")
{
    Jet x = Jet::variable(0.4, 2.0);
    Jet r = jet::log(jet::exp(x));
    for (int e = 0; e <= 5; ++e) CHECK(std::fabs(r[e] - x[e]) < 1e-13);
}

TEST_CASE("Taylor coefficients of gamma")
{
    Jet g = jet::gamma(Jet::variable(2.5));
    CHECK(std::fabs(g[0] - specfun::gamma_fn(2.5)) < 1e-14);
    CHECK(std::fabs(g[1] - specfun::gamma_fn(2.5) * specfun::digamma(2.5)) < 1e-13);
}

TEST_CASE("gamma pole through reflection")
{
    // Gamma(eps) = 1/eps - gamma_E + O(eps)
    Jet g = jet::gamma(Jet::variable(0.0));
    CHECK(g.valuation() == -1);
    CHECK(std::fabs(g[-1] - 1.0) < 1e-14);
    CHECK(std::fabs(g[0] + kEulerGamma) < 1e-13);
    // Gamma(-1 + eps) = -1/eps + (gamma_E - 1) + O(eps)
    Jet h = jet::gamma(Jet::variable(-1.0));
    CHECK(std::fabs(h[-1] + 1.0) < 1e-14);
    CHECK(std::fabs(h[0] - (kEulerGamma - 1.0)) < 1e-13);
    Jet r = jet::rgamma(Jet::variable(-2.0));
    CHECK(std::fabs(r[0]) < 1e-15);
    CHECK(std::fabs(r[1] - 2.0) < 1e-13);
}

TEST_CASE("Hurwitz pole at one")
{
    for (double q : {0.3, 1.0, 2.2}) {
        Jet h = jet::hurwitz(Jet::variable(1.0), q);
        CHECK(std::fabs(h[-1] - 1.0) < 1e-13);
        CHECK(std::fabs(h[0] + specfun::digamma(q)) < 1e-12);
    }
    Jet h = jet::hurwitz(Jet::variable(-1.0), 0.7);
    CHECK(std::fabs(h[0] - specfun::hurwitz_zeta(-1.0, 0.7)) < 1e-13);
    CHECK(std::fabs(h[1] - specfun::hurwitz_zeta_ds(-1.0, 0.7)) < 1e-12);
}

TEST_CASE("powers and trigonometric jets")
{
    Jet s = Jet::variable(0.0);
    Jet p = jet::pow(2.0, s);  // 2^eps
    CHECK(std::fabs(p[2] - std::log(2.0) * std::log(2.0) / 2.0) < 1e-15);
    Jet c = jet::cospi(s);
    CHECK(std::fabs(c[2] + kPi * kPi / 2.0) < 1e-13);
    Jet b = jet::binomial(Jet::variable(0.5), 2);
    CHECK(std::fabs(b[0] - (0.5 * -0.5 / 2.0)) < 1e-15);
    Jet q = jet::pochhammer(Jet::variable(1.0), 3);
    CHECK(std::fabs(q[0] - 6.0) < 1e-14);
    CHECK(std::fabs(q[1] - 11.0) < 1e-13);
}

TEST_CASE("composition with Taylor data")
{
    // exp(0.2 + d), taylor coefficients e^0.2/n!
    std::vector<double> t;
    double f = 1.0;
    for (int n = 0; n < 8; ++n) {
        t.push_back(std::exp(0.2) / f);
        f *= n + 1;
    }
    Jet d = Jet::variable(0.0, 3.0);
    Jet a = jet::compose(t, d);
    Jet b = jet::exp(Jet::constant(0.2) + d);
    for (int e = 0; e <= 6; ++e) CHECK(std::fabs(a[e] - b[e]) < 1e-12 * std::max(1.0, std::fabs(b[e])));
}
