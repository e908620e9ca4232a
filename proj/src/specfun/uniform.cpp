#include <cmath>
#include <limits>
#include <mutex>

#include "cuspdet/specfun.hpp"

namespace cuspdet::specfun {

namespace {

double u1(double p) { return (3.0 * p - 5.0 * p * p * p) / 24.0; }

// eta2 computed from the reduced Bessel value, free of the nu*xi cancellation
double eta2_remainder(double nu, double x)
{
    double p = debye_p(x);
    return log_bessel_k_uniform_rest(nu, x) - 0.5 * std::log(kPi / (2.0 * nu)) +
           0.25 * std::log1p(x * x) + u1(p) / nu;
}

double scaled_remainder(double nu, double x)
{
    double m = std::max(nu * nu * x * x, nu * nu);
    return std::fabs(eta2_remainder(nu, x)) * m;
}

double calibrate(const UniformConfig& cfg)
{
    double best = 0.0;
    // x grid at nu = A0
    for (int i = 0; i <= 800; ++i) {
        double x = std::pow(10.0, -4.0 + 8.0 * i / 800.0);
        best = std::max(best, scaled_remainder(cfg.A0, x));
    }
    // the nu*x >= B0 branch with nu < A0
    for (int i = 0; i <= 200; ++i) {
        double nu = std::pow(10.0, -2.0 + (std::log10(cfg.A0) + 2.0) * i / 200.0);
        for (int j = 0; j <= 12; ++j) {
            double z = cfg.B0 * std::pow(2.0, j);
            best = std::max(best, scaled_remainder(nu, z / nu));
        }
    }
    return cfg.safety * best;
}

}  // namespace

double uniform_log_K_terms(double nu, double x)
{
    if (!(nu > 0.0) || !(x > 0.0)) throw DomainError("uniform expansion: requires nu > 0, x > 0");
    return 0.5 * std::log(kPi / (2.0 * nu)) - nu * debye_xi(x) - 0.25 * std::log1p(x * x) -
           u1(debye_p(x)) / nu;
}

double eta2_constant(const UniformConfig& cfg)
{
    static const UniformConfig def{};
    if (cfg.A0 == def.A0 && cfg.B0 == def.B0 && cfg.safety == def.safety) {
        static const double c = calibrate(def);
        return c;
    }
    return calibrate(cfg);
}

CertifiedValue uniform_log_K_certified(double nu, double x, const UniformConfig& cfg)
{
    if (!(nu > 0.0) || !(x > 0.0)) throw DomainError("uniform expansion: requires nu > 0, x > 0");
    if (!(nu >= cfg.A0 || nu * x >= cfg.B0))
        throw DomainError("uniform expansion: requires nu >= A0 or nu*x >= B0");
    CertifiedValue r;
    r.value = uniform_log_K_terms(nu, x);
    double c = eta2_constant(cfg);
    double eps = std::numeric_limits<double>::epsilon();
    double scale = nu * std::sqrt(1.0 + x * x) + nu * std::asinh(1.0 / x) + std::fabs(r.value) + 1.0;
    r.abs_error_bound = c / std::max(nu * nu * x * x, nu * nu) + 8.0 * eps * scale;
    return r;
}

double uniform_log_K_remainder(double nu, double x) { return eta2_remainder(nu, x); }

}  // namespace cuspdet::specfun
