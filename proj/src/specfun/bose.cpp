#include <cmath>

#include "cuspdet/quadrature.hpp"
#include "cuspdet/specfun.hpp"

namespace cuspdet::specfun {

double bose_arctan_integral(double c)
{
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("bose_arctan_integral: requires c > 0");
    auto f = [c](double t) {
        if (t == 0.0) return 1.0 / (2.0 * kPi * c);
        return std::atan(t / c) / std::expm1(2.0 * kPi * t);
    };
    auto a = quad::gauss_kronrod(f, 0.0, 1.0, 1e-17, 1e-14);
    auto b = quad::gauss_kronrod_inf(f, 1.0, 1e-19, 1e-14);
    if (!a.converged || !b.converged) throw NumericError("bose_arctan_integral: quadrature failed");
    return a.value + b.value;
}

}  // namespace cuspdet::specfun
