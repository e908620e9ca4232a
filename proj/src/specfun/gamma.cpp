#include <cmath>
#include <limits>

#include "cuspdet/specfun.hpp"

namespace cuspdet::specfun {

namespace {

const double kB2k[21] = {
    1.0,
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
    -7709321041217.0 / 510.0,
    2577687858367.0 / 6.0,
    -26315271553053477373.0 / 1919190.0,
    2929993913841559.0 / 6.0,
    -261082718496449122051.0 / 13530.0};

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// log Gamma for x >= 15 by Stirling
double lgamma_stirling(double x)
{
    double s = (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * kPi);
    double xx = 1.0 / (x * x), p = 1.0 / x;
    for (int k = 1; k <= 10; ++k) {
        s += kB2k[k] / (2.0 * k * (2.0 * k - 1.0)) * p;
        p *= xx;
    }
    return s;
}

}  // namespace

double bernoulli_b2k(int k)
{
    if (k < 0 || k > 30) throw DomainError("bernoulli_b2k: index out of range");
    if (k <= 20) return kB2k[k];
    // B_2k = (-1)^{k+1} 2 (2k)! zeta(2k) / (2 pi)^{2k}
    double z = 0.0;
    for (int n = 1; n <= 20; ++n) z += std::pow(n, -2.0 * k);
    double lf = log_gamma_abs(2.0 * k + 1.0) - 2.0 * k * std::log(2.0 * kPi);
    double v = 2.0 * std::exp(lf) * z;
    return (k % 2 == 1) ? v : -v;
}

double sinpi(double x)
{
    double r = x - 2.0 * std::round(0.5 * x);  // [-1, 1]
    if (r == 0.0 || r == 1.0 || r == -1.0) return 0.0;
    if (r > 0.5) return std::sin(kPi * (1.0 - r));
    if (r < -0.5) return -std::sin(kPi * (1.0 + r));
    return std::sin(kPi * r);
}

double cospi(double x) { return sinpi(x + 0.5); }

double log_gamma_abs(double x)
{
    if (is_nonpositive_integer(x)) throw DomainError("log_gamma: pole at non-positive integer");
    if (x < 0.5) {
        // reflection
        return std::log(kPi / std::fabs(sinpi(x))) - log_gamma_abs(1.0 - x);
    }
    double shift = 0.0;
    double prod = 1.0;
    while (x < 15.0) {
        prod *= x;
        if (prod > 1e250) {
            shift += std::log(prod);
            prod = 1.0;
        }
        x += 1.0;
    }
    shift += std::log(prod);
    return lgamma_stirling(x) - shift;
}

double gamma_fn(double x)
{
    if (is_nonpositive_integer(x)) throw DomainError("gamma: pole at non-positive integer");
    return std::tgamma(x);
}

double digamma(double x)
{
    if (is_nonpositive_integer(x)) throw DomainError("digamma: pole at non-positive integer");
    if (x < 0.5) return digamma(1.0 - x) - kPi * cospi(x) / sinpi(x);
    double acc = 0.0;
    while (x < 15.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    double xx = 1.0 / (x * x), p = xx;
    double s = std::log(x) - 0.5 / x;
    for (int k = 1; k <= 10; ++k) {
        s -= kB2k[k] / (2.0 * k) * p;
        p *= xx;
    }
    return s + acc;
}

double polygamma(int n, double x)
{
    if (n == 0) return digamma(x);
    if (n < 0) throw DomainError("polygamma: negative order");
    if (!(x > 0.0)) throw DomainError("polygamma: requires x > 0 for n >= 1");
    // psi^(n)(x) = psi^(n)(x+1) + (-1)^{n+1} n! / x^{n+1}
    double nfact = std::tgamma(n + 1.0);
    double sign = (n % 2 == 1) ? 1.0 : -1.0;  // (-1)^{n+1}
    double acc = 0.0;
    double lim = 20.0 + 2.0 * n;
    while (x < lim) {
        acc += sign * nfact / std::pow(x, n + 1);
        x += 1.0;
    }
    // asymptotic: (-1)^{n+1} [ (n-1)!/x^n + n!/(2 x^{n+1}) + sum B_2k (2k+n-1)!/((2k)! x^{2k+n}) ]
    double s = std::tgamma(static_cast<double>(n)) / std::pow(x, n) + nfact / (2.0 * std::pow(x, n + 1));
    for (int k = 1; k <= 12; ++k) {
        double lt = log_gamma_abs(2.0 * k + n) - log_gamma_abs(2.0 * k + 1.0) - (2.0 * k + n) * std::log(x);
        s += kB2k[k] * std::exp(lt);
    }
    return acc + sign * s;
}

GammaResult gamma_digamma(double x)
{
    if (!std::isfinite(x)) throw DomainError("gamma_digamma: non-finite argument");
    if (is_nonpositive_integer(x)) throw DomainError("gamma_digamma: pole at non-positive integer");
    GammaResult r;
    r.log_gamma = log_gamma_abs(x);
    r.gamma = (x > 171.6) ? std::numeric_limits<double>::infinity() : gamma_fn(x);
    r.digamma = digamma(x);
    return r;
}

}  // namespace cuspdet::specfun
