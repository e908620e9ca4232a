#pragma once

#include <functional>

#include "cuspdet/specfun.hpp"
#include "cuspdet/zetadet.hpp"

namespace cuspdet::zetadet::detail {

struct Mode {
    long k = 0;
    double u = 0.0;
    double T = 0.0;
    double nu0 = 0.0;
    specfun::LogBesselK K0;  // log K_{nu0}(u) and its order cumulants
    double J0 = 0.0;         // e^u K_{nu0}(u)
    double D0() const { return K0.d1; }
};

Mode make_mode(const SpectralZetaParams& p, long k);

// F(t) for t >= nu0, Taylor in t - nu0 close to nu0
double F_value(const Mode& m, double t);
double F_value(const Mode& m, double t, double d);  // d = t - nu0 supplied exactly
// f(t) for t >= nu0, Taylor in t - nu0 close to nu0
double f_value(const Mode& m, double t);
double f_value(const Mode& m, double t, double d);

// F(T) - rho(T), rho = log K_T(u) minus the four-term uniform expansion
double Q_value(const Mode& m);

// int over theta in [th_a, th_b] of g(theta); when th_a == 0 the variable theta = v^pw is used
struct ThetaIntegral {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
};
ThetaIntegral theta_integral(const std::function<double(double)>& g, double th_a, double th_b,
                             int pw, double rel_tol = 1e-12);

// theta beyond which exp(-rate theta) (1 + theta)^2 < 1e-18
double theta_cutoff(double rate);

// nu0 cosh(theta) - nu0 without cancellation
double theta_gap(double nu0, double th);

int endpoint_power(double s);

}  // namespace cuspdet::zetadet::detail
