#pragma once

#include <functional>
#include <vector>

namespace cuspdet::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
    bool converged = true;
};

using Fn = std::function<double(double)>;

// globally adaptive Gauss-Kronrod 7/15, largest error bisected first, ties broken by position
Result gauss_kronrod(const Fn& f, double a, double b, double abs_tol, double rel_tol,
                     int max_depth = 40);

// [a, inf) through t = a + L u/(1-u), L = max(1, |a|);
// geometric panels with an extrapolated tail when the mapped integrand is too singular
Result gauss_kronrod_inf(const Fn& f, double a, double abs_tol, double rel_tol,
                         int max_depth = 40);

struct Rule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

// n-point Gauss-Legendre, Newton on P_n
const Rule& gauss_legendre(int n);

// fixed composite Gauss-Legendre over [a,b] with `panels` equal panels
double composite_gl(const Fn& f, double a, double b, int panels, int n = 20);

// tanh-sinh on [a,b]; f receives (x, x - a, b - x) so endpoint singularities keep full precision
using EndpointFn = std::function<double(double, double, double)>;
Result tanh_sinh(const EndpointFn& f, double a, double b, double rel_tol, int max_level = 10);

}  // namespace cuspdet::quad
