#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cuspdet/common.hpp"

namespace cuspdet::ramanujan {

using Complex = std::complex<double>;

// analytic on Re z > a0 with exponential type < 2 pi (attested by the caller, not verified)
struct HalfPlaneFunction {
    std::function<Complex(Complex)> eval;
    double a0 = 0.5;
    double declared_type = 0.0;
};

// 1/2 f(1) + i int_0^inf (f(1+it) - f(1-it)) / (e^{2 pi t} - 1) dt, real part
double ramanujan_sum(const HalfPlaneFunction& f, const WorkingPrecision& wp = default_precision());

// the real integrand, with the difference quotient taken explicitly
double kernel_integrand(const HalfPlaneFunction& f, double t);

// int_0^inf (f(k+it) - f(k-it)) / (e^{2 pi t} - 1) dt, expected to vanish as k grows
double shifted_kernel_integral(const HalfPlaneFunction& f, double k);

struct SplitCheck {
    double partial_sum = 0.0;     // sum_{k=1}^{K} f(k)
    double tail_estimate = 0.0;   // Euler-Maclaurin tail sum_{k>K} f(k)
    double integral = 0.0;        // int_1^inf f
    double ramanujan = 0.0;
    double residual = 0.0;
    double spot_k10 = 0.0;
    double spot_k100 = 0.0;
    bool skipped = false;
    std::string reason;
};

// integral: optional closed form for int_1^inf f; quadrature otherwise
SplitCheck sum_split_check(const HalfPlaneFunction& f, long K = 10000,
                           std::optional<double> integral = std::nullopt);

struct ProfileRow {
    double mu = 0.0;
    double s = 0.0;
    double ramanujan_route = 0.0;   // (1+mu)^{1-s}/(s-1) + R-sum of (x+mu)^{-s}
    double euler_maclaurin = 0.0;   // specfun Hurwitz zeta
    double difference = 0.0;
};

std::vector<ProfileRow> hurwitz_mu_profile(const std::vector<double>& mu_grid,
                                           const std::vector<double>& s_grid = {-0.25, 0.0, 0.25});

// |R(af + bg) - aR(f) - bR(g)|
double linearity_residual(const HalfPlaneFunction& f, const HalfPlaneFunction& g, double a, double b);

struct BoundednessCheck {
    std::vector<double> t;
    std::vector<double> values;
    bool bounded = true;
};
BoundednessCheck kernel_boundedness(const HalfPlaneFunction& f,
                                    const std::vector<double>& t = {1e-3, 1e-6, 1e-8});

}  // namespace cuspdet::ramanujan
