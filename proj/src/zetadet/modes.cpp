#include <cmath>
#include <functional>
#include <limits>
#include <mutex>

#include "cuspdet/quadrature.hpp"
#include "internal.hpp"

namespace cuspdet::zetadet {

using detail::Mode;

double SpectralZetaParams::nu0() const { return std::sqrt(0.25 + mu); }

void SpectralZetaParams::validate() const
{
    g.validate();
    if (!(mu >= 0.0) || !std::isfinite(mu)) throw DomainError("spectral zeta: requires mu >= 0");
    if (!(delta > 0.0 && delta < 0.125)) throw DomainError("spectral zeta: requires 0 < delta < 1/8");
    double h = 0.5 / delta;
    if (std::fabs(h - std::round(h)) < 1e-9) throw DomainError("spectral zeta: 1/(2 delta) must not be an integer");
}

void check_strip_point(double s)
{
    if (!(s > 1.0 && s < 2.0)) throw DomainError("strip point: requires 1 < s < 2");
}

bool mode_present(const SpectralZetaParams& p, long k) { return !(k == 0 && p.g.alpha == 0.0); }

double split_point(const SpectralZetaParams& p, long k)
{
    double nu0 = p.nu0();
    if (k == 0) return 2.0 * nu0;
    return 2.0 * std::pow(static_cast<double>(std::labs(k)), p.delta) * nu0;
}

namespace detail {

namespace {

// int_0^inf exp(-u (cosh x - 1)) w(x) dx for weights growing at most like exp(t x)
double cosh_integral(double t, double u, const std::function<double(double)>& w)
{
    double xs = std::asinh(t / u);
    auto phi = [&](double x) { return -u * (std::cosh(x) - 1.0) + t * x; };
    double top = phi(xs), step = 1.0 / std::sqrt(u * std::cosh(xs) + 1.0);
    double xe = xs + step;
    while (top - phi(xe) < 42.0) xe += step;
    auto g = [&](double x) { return std::exp(-u * (std::cosh(x) - 1.0)) * w(x); };
    double v = 0.0;
    if (xs > 0.0) v += quad::gauss_kronrod(g, 0.0, xs, 0.0, 1e-14).value;
    v += quad::gauss_kronrod(g, xs, xe, 0.0, 1e-14).value;
    return v;
}

}  // namespace

Mode make_mode(const SpectralZetaParams& p, long k)
{
    p.validate();
    if (!mode_present(p, k)) throw DomainError("mode k = 0 is excluded when alpha = 0");
    Mode m;
    m.k = k;
    m.u = spectrum::mode_frequency(p.g, k);
    m.nu0 = p.nu0();
    m.T = split_point(p, k);
    m.K0 = specfun::log_bessel_k(m.nu0, m.u);
    // u + peak without the u - sqrt(nu0^2 + u^2) cancellation
    double n0 = m.nu0, u = m.u;
    m.J0 = std::exp(n0 * std::asinh(n0 / u) - n0 * n0 / (u + std::hypot(n0, u)) + m.K0.rest);
    return m;
}

namespace {

const double kTaylorGap = 1e-3;
const double kDifferenceRoute = 1.0;

// e^u K_t(u) - e^u K_{nu0}(u) with cosh(tx) - cosh(nu0 x) as a product of sinh
double K_difference(const Mode& m, double t, double d)
{
    double sp = 0.5 * (t + m.nu0), sm = 0.5 * d;
    return cosh_integral(t, m.u, [&](double x) { return 2.0 * std::sinh(sp * x) * std::sinh(sm * x); });
}

// nu asinh(nu/u) - sqrt(nu^2+u^2) at t minus its value at nu0
double peak_difference(const Mode& m, double t)
{
    double n0 = m.nu0, u = m.u;
    double d2 = (t - n0) * (t + n0);
    return t * std::asinh(t / u) - n0 * std::asinh(n0 / u) -
           d2 / (std::sqrt(t * t + u * u) + std::sqrt(n0 * n0 + u * u));
}

}  // namespace

double F_value(const Mode& m, double t) { return F_value(m, t, t - m.nu0); }

double F_value(const Mode& m, double t, double d)
{
    const auto& c = m.K0;
    if (std::fabs(d) < kTaylorGap) {
        double a = c.d2 - c.d1 / m.nu0;
        return a * d * d / 2.0 + c.d3 * d * d * d / 6.0 + c.d4 * d * d * d * d / 24.0;
    }
    double lin = d * (t + m.nu0) * c.d1 / (2.0 * m.nu0);
    if (d > 0.0 && d < kDifferenceRoute) {
        double y = K_difference(m, t, d) / m.J0;
        if (std::isfinite(y)) return std::log1p(y) - lin;
    }
    auto kt = specfun::log_bessel_k(t, m.u);
    return peak_difference(m, t) + (kt.rest - c.rest) - lin;
}

double f_value(const Mode& m, double t) { return f_value(m, t, t - m.nu0); }

double f_value(const Mode& m, double t, double d)
{
    const auto& c = m.K0;
    if (d == 0.0) return 0.0;
    if (std::fabs(d) < kTaylorGap) {
        double a = c.d2 - c.d1 / m.nu0;
        return a * d + c.d3 * d * d / 2.0 + c.d4 * d * d * d / 6.0;
    }
    return specfun::log_bessel_k(t, m.u).d1 - (t / m.nu0) * c.d1;
}

double Q_value(const Mode& m)
{
    double T = m.T, u = m.u;
    double r2 = T * T + u * u;
    double pp = T / std::sqrt(r2);
    double u1 = (3.0 * pp - 5.0 * pp * pp * pp) / 24.0;
    const auto& c = m.K0;
    return peak_difference(m, T) + 0.5 * std::log(kPi / 2.0) - 0.25 * std::log(r2) - u1 / T - c.rest -
           (T - m.nu0) * (T + m.nu0) * c.d1 / (2.0 * m.nu0);
}

double theta_cutoff(double rate)
{
    double th = 40.0 / rate;
    for (int i = 0; i < 50; ++i) th = (41.5 + 2.0 * std::log1p(th)) / rate;
    return std::min(th, 650.0);
}

double theta_gap(double nu0, double th)
{
    double h = std::sinh(0.5 * th);
    return 2.0 * nu0 * h * h;
}

int endpoint_power(double s) { return std::max(1, static_cast<int>(std::ceil(2.0 / (4.0 - 2.0 * s) - 1e-12))); }

ThetaIntegral theta_integral(const std::function<double(double)>& g, double th_a, double th_b, int pw,
                             double rel_tol)
{
    ThetaIntegral out;
    if (!(th_b > th_a)) return out;
    KahanSum acc, err;
    auto add = [&](const quad::Result& r) {
        acc.add(r.value);
        err.add(r.error);
        if (!r.converged) out.converged = false;
    };
    double lo = th_a;
    if (th_a == 0.0) {
        double first = std::min(1.0, th_b);
        double vb = std::pow(first, 1.0 / pw);
        add(quad::gauss_kronrod(
            [&](double v) {
                if (v <= 0.0) return 0.0;
                double th = std::pow(v, pw);
                return g(th) * pw * std::pow(v, pw - 1);
            },
            0.0, vb, 1e-16, rel_tol));
        lo = first;
    }
    while (lo < th_b) {
        double hi = std::min(th_b, lo + 8.0);
        add(quad::gauss_kronrod(g, lo, hi, 1e-17, rel_tol));
        lo = hi;
    }
    out.value = acc.value();
    out.error = err.value();
    return out;
}

}  // namespace detail

double f_mu_k(const SpectralZetaParams& p, long k, double t)
{
    Mode m = detail::make_mode(p, k);
    double v = detail::f_value(m, std::fabs(t));
    return t < 0.0 ? -v : v;
}

double F_mu_k(const SpectralZetaParams& p, long k, double t)
{
    Mode m = detail::make_mode(p, k);
    return detail::F_value(m, std::fabs(t));
}

namespace {

double F_bound_scale(const SpectralZetaParams& p, long k, double t)
{
    double n0 = p.nu0();
    double kk = std::max(1.0, static_cast<double>(std::labs(k)));
    return (t * t - n0 * n0) * std::pow(kk, 4.0 * p.delta - 2.0) / (p.g.a * p.g.a);
}

}  // namespace

double F_bound_constant(const SpectralZetaParams& p)
{
    p.validate();
    double best = 0.0;
    for (long k = 2; k <= 50; ++k) {
        Mode m = detail::make_mode(p, k);
        for (int i = 1; i <= 16; ++i) {
            double t = m.nu0 + (m.T - m.nu0) * i / 16.0;
            double sc = F_bound_scale(p, k, t);
            if (sc > 0.0) best = std::max(best, std::fabs(detail::F_value(m, t)) / sc);
        }
    }
    return 2.0 * best;
}

double F_bound(const SpectralZetaParams& p, long k, double t) { return F_bound_constant(p) * F_bound_scale(p, k, t); }

StripQuadrature mode_zeta_strip_q(const SpectralZetaParams& p, long k, double s)
{
    check_strip_point(s);
    Mode m = detail::make_mode(p, k);
    double n0 = m.nu0;
    auto g = [&](double th) {
        double d = detail::theta_gap(n0, th);
        return std::pow(n0 * std::sinh(th), 1.0 - 2.0 * s) * detail::f_value(m, n0 + d, d);
    };
    double thT = std::acosh(m.T / n0);
    double thmax = std::max(thT, detail::theta_cutoff(2.0 * s - 2.0));
    auto a = detail::theta_integral(g, 0.0, thT, detail::endpoint_power(s));
    auto b = detail::theta_integral(g, thT, thmax, 1);
    if (!a.converged || !b.converged)
        throw NumericError("mode_zeta_strip: quadrature did not converge (k = " + std::to_string(k) +
                           ", s = " + std::to_string(s) + ")");
    double pref = std::sin(kPi * s) / kPi;
    return {pref * (a.value + b.value), std::fabs(pref) * (a.error + b.error)};
}

double mode_zeta_strip(const SpectralZetaParams& p, long k, double s) { return mode_zeta_strip_q(p, k, s).value; }

ModeTermValues split_terms_strip(const SpectralZetaParams& p, long k, double s)
{
    check_strip_point(s);
    Mode m = detail::make_mode(p, k);
    double n0 = m.nu0, T = m.T, u = m.u;
    double pref = std::sin(kPi * s) / kPi;
    double thT = std::acosh(T / n0);
    int pw = detail::endpoint_power(s);
    auto need = [&](const detail::ThetaIntegral& r, const char* what) {
        if (!r.converged) throw NumericError(std::string("split_terms_strip: quadrature for ") + what + " did not converge");
        return r.value;
    };
    auto with_f = [&](double th) {
        double d = detail::theta_gap(n0, th);
        return std::pow(n0 * std::sinh(th), 1.0 - 2.0 * s) * detail::f_value(m, n0 + d, d);
    };
    ModeTermValues v;
    v.L = pref * need(detail::theta_integral(with_f, 0.0, thT, pw), "L");
    double thmax = std::max(thT, detail::theta_cutoff(2.0 * s - 2.0));
    v.M = pref * need(detail::theta_integral(with_f, thT, thmax, 1), "M");
    v.I = mode_zeta_strip(p, k, s);
    double FT = detail::F_value(m, T);
    double base = (T - n0) * (T + n0);
    v.A = pref * std::exp(-s * std::log(base)) * FT;
    v.A_product = std::sin(kPi * s) / kPi * std::pow(base, -s) * FT;
    auto with_F = [&](double th) {
        double d = detail::theta_gap(n0, th);
        return (n0 + d) * std::pow(n0 * std::sinh(th), -1.0 - 2.0 * s) * detail::F_value(m, n0 + d, d);
    };
    v.B = 2.0 * s * pref * need(detail::theta_integral(with_F, 0.0, thT, pw), "B");
    double D0 = m.D0();
    v.R = pref * (D0 / (2.0 * n0)) * std::pow(base, 1.0 - s) / (1.0 - s);
    auto lin = [&](double th) {
        double t = n0 * std::cosh(th);
        return std::pow(n0 * std::sinh(th), 1.0 - 2.0 * s) * (-t * D0 / n0);
    };
    v.R_quadrature = pref * need(detail::theta_integral(lin, thT, thmax, 1), "R");
    double thmax1 = std::max(thT, detail::theta_cutoff(2.0 * s - 1.0));
    auto dlk = [&](double th) {
        double t = n0 * std::cosh(th);
        return std::pow(n0 * std::sinh(th), 1.0 - 2.0 * s) * specfun::log_bessel_k(t, u).d1;
    };
    v.Mtilde = pref * need(detail::theta_integral(dlk, thT, thmax1, 1), "Mtilde");
    return v;
}

DecompositionCheck dlogK_decomposition_raw(double u, double t)
{
    if (!(u > 0.0) || !(t > 0.0)) throw DomainError("dlogK decomposition: requires u > 0, t > 0");
    DecompositionCheck c;
    c.derivative = specfun::log_bessel_k(t, u).d1;
    double r2 = t * t + u * u, r = std::sqrt(r2);
    double du1 = (-13.0 * t / (r2 * r) + 15.0 * t * t * t / (r2 * r2 * r)) / 24.0;
    c.explicit_terms = std::asinh(t / u) - 0.5 * t / r2 - du1;
    c.residual = std::fabs(c.derivative - c.explicit_terms);
    // divided-difference budget for the derivative of the certified remainder
    double C = specfun::eta2_constant();
    double dt = 0.5 * t;
    double worst = 0.0;
    for (double tt : {t - dt, t, t + dt}) worst = std::max(worst, C / std::max(u * u, tt * tt));
    c.budget = 4.0 * worst / dt;
    return c;
}

DecompositionCheck dlogK_decomposition_check(const SpectralZetaParams& p, long k, double t)
{
    p.validate();
    double T = split_point(p, k);
    if (t < T) {
        DecompositionCheck c;
        c.skipped = true;
        c.reason = "t below the split point T_k";
        return c;
    }
    return dlogK_decomposition_raw(spectrum::mode_frequency(p.g, k), t);
}

TermDerivatives term_derivatives_at_zero(const SpectralZetaParams& p, long k)
{
    Mode m = detail::make_mode(p, k);
    TermDerivatives d;
    double FT = detail::F_value(m, m.T);
    d.dA0 = FT;
    d.dB0 = 0.0;
    d.mtilde_remainder = -specfun::uniform_log_K_remainder(m.T, m.u / m.T);
    double base = (m.T - m.nu0) * (m.T + m.nu0);
    auto A = [&](double s) { return std::sin(kPi * s) / kPi * std::pow(base, -s) * FT; };
    const double h = 1e-3;
    d.dA0_finite_difference = (8.0 * (A(h) - A(-h)) - (A(2.0 * h) - A(-2.0 * h))) / (12.0 * h);
    return d;
}

}  // namespace cuspdet::zetadet
