#include <cmath>
#include <vector>

#include "cuspdet/specfun.hpp"

namespace cuspdet::specfun {

namespace {

// sinh(t) - t without cancellation
double sinh_minus_id(double t)
{
    double a = std::fabs(t);
    if (a < 0.5) {
        double t2 = t * t, term = t * t2 / 6.0, s = term;
        for (int k = 2; k < 12; ++k) {
            term *= t2 / ((2.0 * k) * (2.0 * k + 1.0));
            s += term;
            if (std::fabs(term) < 1e-18 * std::fabs(s)) break;
        }
        return s;
    }
    return std::sinh(t) - t;
}

double cosh_minus_one(double t)
{
    double h = std::sinh(0.5 * t);
    return 2.0 * h * h;
}

void check_x(double x, const char* who)
{
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError(std::string(who) + ": requires x > 0");
}

// K_nu(x) = 1/2 int exp(-x cosh t + nu t) dt, trapezoid centred on the saddle t* = asinh(nu/x)
LogBesselK saddle_trapezoid(double v, double tstar, double C, double peak, double sgn)
{
    double h = std::min(0.12, 0.4 / std::sqrt(C));
    auto dphi = [&](double tau) { return -C * cosh_minus_one(tau) - v * sinh_minus_id(tau); };
    const double cut = -50.0;
    std::vector<double> taus, ws;
    taus.reserve(256);
    ws.reserve(256);
    taus.push_back(0.0);
    ws.push_back(1.0);
    for (int n = 1;; ++n) {
        double tp = n * h, tm = -n * h;
        double ep = dphi(tp), em = dphi(tm);
        if (ep < cut && em < cut) break;
        if (ep >= cut) {
            taus.push_back(tp);
            ws.push_back(std::exp(ep));
        }
        if (em >= cut) {
            taus.push_back(tm);
            ws.push_back(std::exp(em));
        }
        if (n > 200000) throw NumericError("bessel_K: quadrature range did not close");
    }
    KahanSum m0, m1;
    for (size_t i = 0; i < ws.size(); ++i) {
        m0.add(ws[i]);
        m1.add(ws[i] * taus[i]);
    }
    double M0 = m0.value();
    double mean = m1.value() / M0;
    KahanSum c2, c3, c4;
    for (size_t i = 0; i < ws.size(); ++i) {
        double d = taus[i] - mean;
        double w = ws[i] / M0;
        c2.add(w * d * d);
        c3.add(w * d * d * d);
        c4.add(w * d * d * d * d);
    }
    LogBesselK r;
    r.rest = std::log(0.5 * h * M0);
    r.peak = peak;
    r.log_k = peak + r.rest;  // peak == 0 gives the reduced value
    r.d1 = sgn * (tstar + mean);
    r.d2 = c2.value();
    r.d3 = sgn * c3.value();
    r.d4 = c4.value() - 3.0 * r.d2 * r.d2;
    return r;
}

}  // namespace

LogBesselK log_bessel_k(double nu, double x)
{
    check_x(x, "bessel_K");
    if (!std::isfinite(nu)) throw DomainError("bessel_K: non-finite order");
    double sgn = (nu < 0.0) ? -1.0 : 1.0;
    double v = std::fabs(nu);
    double tstar = std::asinh(v / x);
    double C = std::hypot(x, v);
    return saddle_trapezoid(v, tstar, C, -C + v * tstar, sgn);
}

double log_bessel_k_uniform_rest(double nu, double x)
{
    if (!(nu > 0.0) || !(x > 0.0)) throw DomainError("uniform expansion: requires nu > 0, x > 0");
    return saddle_trapezoid(nu, std::asinh(1.0 / x), nu * std::sqrt(1.0 + x * x), 0.0, 1.0).log_k;
}

double log_bessel_K(double nu, double x) { return log_bessel_k(nu, x).log_k; }

double bessel_K_real_order(double nu, double x) { return std::exp(log_bessel_k(nu, x).log_k); }

double dlog_bessel_K_dorder(double t, double x) { return log_bessel_k(t, x).d1; }

double imag_order_theta(double nu, double x)
{
    double v = std::fabs(nu);
    double ts = (v < x) ? std::asin(v / x) : 0.5 * kPi;
    double eta = (v > 0.0) ? std::min(0.5, 3.0 / v) : 0.5;
    return std::min(ts, 0.5 * kPi - eta);
}

// K_{i nu}(x) = 1/2 int exp(-x cosh(t + i theta) + i nu (t + i theta)) dt on the shifted line
ImagOrderK bessel_K_imag_order_scaled_theta(double nu, double x, double theta)
{
    check_x(x, "bessel_K_imag_order");
    if (!std::isfinite(nu)) throw DomainError("bessel_K_imag_order: non-finite order");
    double sgn = (nu < 0.0) ? -1.0 : 1.0;
    double v = std::fabs(nu);
    double ct = std::cos(theta), st = std::sin(theta);
    double xc = x * ct, xs = x * st;
    double d = 0.5 * (0.5 * kPi - theta);
    d = std::min(d, std::sqrt(10.0 / xc));
    d = std::min(d, 0.8);
    auto growth = [&](double y) { return -x * std::cos(theta + y) - v * (theta + y) + xc + v * theta; };
    double G = std::max({0.0, growth(d), growth(-d)});
    double h = 2.0 * kPi * d / (55.0 + G);
    double tmax = std::acosh(1.0 + (50.0 + G) / xc);
    long nmax = static_cast<long>(std::ceil(tmax / h));
    if (nmax > 20000000) throw NumericError("bessel_K_imag_order: quadrature too long");
    double lin = v - xs;  // phase = lin*t - xs*(sinh t - t)
    KahanSum sv, sd;
    sv.add(1.0);
    sd.add(-theta);
    for (long n = 1; n <= nmax; ++n) {
        double t = n * h;
        double a = std::exp(-xc * cosh_minus_one(t));
        double ph = lin * t - xs * sinh_minus_id(t);
        double cp = std::cos(ph), sp = std::sin(ph);
        sv.add(2.0 * a * cp);
        sd.add(2.0 * (-theta * a * cp - t * a * sp));
    }
    ImagOrderK r;
    r.scaled = 0.5 * h * sv.value();
    r.dscaled = sgn * 0.5 * h * sd.value();
    r.log_scale = -xc - v * theta;
    r.theta = theta;
    return r;
}

ImagOrderK bessel_K_imag_order_scaled(double nu, double x)
{
    check_x(x, "bessel_K_imag_order");
    return bessel_K_imag_order_scaled_theta(nu, x, imag_order_theta(nu, x));
}

double bessel_K_imag_order(double nu, double x)
{
    ImagOrderK r = bessel_K_imag_order_scaled(nu, x);
    return r.scaled * std::exp(r.log_scale);
}

}  // namespace cuspdet::specfun
