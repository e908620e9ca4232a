#include <cmath>

#include "cuspdet/jet.hpp"
#include "cuspdet/specfun.hpp"

namespace cuspdet::specfun {

namespace {

void check_zeta_args(double s, double q)
{
    if (!std::isfinite(s)) throw DomainError("zeta: non-finite s");
    if (s == 1.0) throw DomainError("zeta: pole at s = 1");
    if (!(q > 0.0)) throw DomainError("hurwitz zeta: q must be > 0");
}

}  // namespace

double hurwitz_zeta(double s, double q)
{
    check_zeta_args(s, q);
    return jet::hurwitz(jet::Jet::constant(s), q)[0];
}

double hurwitz_zeta_ds(double s, double q)
{
    check_zeta_args(s, q);
    return jet::hurwitz(jet::Jet::variable(s), q)[1];
}

double riemann_zeta(double s) { return hurwitz_zeta(s, 1.0); }

ZetaResult zeta_functions(double s, double q)
{
    check_zeta_args(s, q);
    ZetaResult r;
    jet::Jet z1 = jet::hurwitz(jet::Jet::variable(s), 1.0);
    jet::Jet zq = (q == 1.0) ? z1 : jet::hurwitz(jet::Jet::variable(s), q);
    r.zeta = z1[0];
    r.dzeta = z1[1];
    r.hurwitz = zq[0];
    r.dhurwitz = zq[1];
    return r;
}

LaurentAtOne hurwitz_laurent_at_one(double q)
{
    if (!(q > 0.0)) throw DomainError("hurwitz zeta: q must be > 0");
    LaurentAtOne l;
    l.residue = 1.0;
    l.finite_part = -digamma(q);
    return l;
}

double exp_integral_E1_scaled(double x)
{
    if (!(x > 0.0)) throw DomainError("E1: requires x > 0");
    if (x <= 1.0) {
        double s = 0.0, term = 1.0;
        for (int k = 1; k < 60; ++k) {
            term *= -x / k;
            double t = -term / k;
            s += t;
            if (std::fabs(t) < 1e-18 * std::fabs(s)) break;
        }
        return std::exp(x) * (-kEulerGamma - std::log(x) + s);
    }
    // continued fraction, modified Lentz
    const double tiny = 1e-300;
    double b = x + 1.0, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 10000; ++i) {
        double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        double del = c * d;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return h;
}

double exp_integral_E1(double x) { return exp_integral_E1_scaled(x) * std::exp(-x); }

}  // namespace cuspdet::specfun
