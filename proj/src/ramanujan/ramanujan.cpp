#include "cuspdet/ramanujan.hpp"

#include <cmath>

#include "cuspdet/quadrature.hpp"
#include "cuspdet/specfun.hpp"

namespace cuspdet::ramanujan {

namespace {

const Complex I(0.0, 1.0);

void check_eval(const Complex& v)
{
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw NumericError("ramanujan: non-finite evaluation of f");
}

// t / (e^{2 pi t} - 1), finite at t = 0
double bose_kernel(double t)
{
    if (t == 0.0) return 1.0 / (2.0 * kPi);
    return t / std::expm1(2.0 * kPi * t);
}

double shifted_integrand(const HalfPlaneFunction& f, double k, double t)
{
    double tt = std::max(t, 1e-9);
    Complex fp = f.eval(Complex(k, tt)), fm = f.eval(Complex(k, -tt));
    check_eval(fp);
    check_eval(fm);
    Complex q = I * (fp - fm) / tt;
    return q.real() * bose_kernel(tt);
}

double kernel_quadrature(const HalfPlaneFunction& f, double k, const WorkingPrecision& wp)
{
    auto g = [&](double t) { return shifted_integrand(f, k, t); };
    double rel = std::max(wp.relative_target * 0.1, 1e-14);
    auto a = quad::gauss_kronrod(g, 0.0, 1.0, 1e-16, rel);
    auto b = quad::gauss_kronrod_inf(g, 1.0, 1e-16, rel);
    if (!a.converged || !b.converged) throw NumericError("ramanujan: kernel quadrature did not converge");
    return a.value + b.value;
}

// f^{(n)}(x0) by trapezoid on a circle of radius r
double circle_derivative(const HalfPlaneFunction& f, double x0, double r, int n)
{
    const int m = 64;
    Complex acc(0.0, 0.0);
    for (int j = 0; j < m; ++j) {
        double th = 2.0 * kPi * j / m;
        Complex w = std::polar(1.0, th);
        Complex v = f.eval(x0 + r * w);
        check_eval(v);
        acc += v * std::polar(1.0, -n * th);
    }
    return (acc / static_cast<double>(m)).real() * std::tgamma(n + 1.0) / std::pow(r, n);
}

}  // namespace

double kernel_integrand(const HalfPlaneFunction& f, double t)
{
    if (!(t >= 0.0)) throw DomainError("kernel_integrand: requires t >= 0");
    return shifted_integrand(f, 1.0, t);
}

double ramanujan_sum(const HalfPlaneFunction& f, const WorkingPrecision& wp)
{
    if (!f.eval) throw DomainError("ramanujan_sum: empty function");
    if (!(f.a0 < 1.0)) throw DomainError("ramanujan_sum: requires a0 < 1");
    Complex f1 = f.eval(Complex(1.0, 0.0));
    check_eval(f1);
    return 0.5 * f1.real() + kernel_quadrature(f, 1.0, wp);
}

double shifted_kernel_integral(const HalfPlaneFunction& f, double k)
{
    return kernel_quadrature(f, k, default_precision());
}

SplitCheck sum_split_check(const HalfPlaneFunction& f, long K, std::optional<double> integral)
{
    SplitCheck r;
    if (K < 10) throw DomainError("sum_split_check: K must be >= 10");
    auto fr = [&](double x) {
        Complex v = f.eval(Complex(x, 0.0));
        check_eval(v);
        return v.real();
    };
    if (integral) {
        r.integral = *integral;
    } else {
        auto q = quad::gauss_kronrod_inf(fr, 1.0, 1e-15, 1e-13);
        if (!q.converged || !std::isfinite(q.value)) {
            r.skipped = true;
            r.reason = "classical series appears divergent (integral of f over [1, inf) does not converge)";
            return r;
        }
        r.integral = q.value;
    }
    KahanSum ps;
    for (long k = 1; k <= K; ++k) ps.add(fr(static_cast<double>(k)));
    r.partial_sum = ps.value();
    // sum_{k>K} f(k) = int_K^inf f - f(K)/2 - f'(K)/12 + f'''(K)/720 - f^(5)(K)/30240
    double x0 = static_cast<double>(K);
    auto q = quad::gauss_kronrod_inf(fr, x0, 1e-18, 1e-13);
    if (!q.converged) {
        r.skipped = true;
        r.reason = "tail integral did not converge";
        return r;
    }
    double rad = 0.5 * (x0 - f.a0);
    r.tail_estimate = q.value - 0.5 * fr(x0) - circle_derivative(f, x0, rad, 1) / 12.0 +
                      circle_derivative(f, x0, rad, 3) / 720.0 - circle_derivative(f, x0, rad, 5) / 30240.0;
    r.ramanujan = ramanujan_sum(f);
    r.residual = std::fabs(r.partial_sum + r.tail_estimate - r.integral - r.ramanujan);
    r.spot_k10 = shifted_kernel_integral(f, 10.0);
    r.spot_k100 = shifted_kernel_integral(f, 100.0);
    return r;
}

std::vector<ProfileRow> hurwitz_mu_profile(const std::vector<double>& mu_grid, const std::vector<double>& s_grid)
{
    std::vector<ProfileRow> out;
    for (double mu : mu_grid) {
        if (!(mu >= 0.0)) throw DomainError("hurwitz_mu_profile: requires mu >= 0");
        for (double s : s_grid) {
            if (s == 1.0) throw DomainError("hurwitz_mu_profile: s = 1 is a pole");
            HalfPlaneFunction f{[mu, s](Complex z) { return std::pow(z + mu, -s); }, 0.5, 0.0};
            ProfileRow row;
            row.mu = mu;
            row.s = s;
            row.ramanujan_route = std::pow(1.0 + mu, 1.0 - s) / (s - 1.0) + ramanujan_sum(f);
            row.euler_maclaurin = specfun::hurwitz_zeta(s, 1.0 + mu);
            row.difference = std::fabs(row.ramanujan_route - row.euler_maclaurin);
            out.push_back(row);
        }
    }
    return out;
}

double linearity_residual(const HalfPlaneFunction& f, const HalfPlaneFunction& g, double a, double b)
{
    HalfPlaneFunction h{[&](Complex z) { return a * f.eval(z) + b * g.eval(z); }, std::max(f.a0, g.a0),
                        std::max(f.declared_type, g.declared_type)};
    return std::fabs(ramanujan_sum(h) - a * ramanujan_sum(f) - b * ramanujan_sum(g));
}

BoundednessCheck kernel_boundedness(const HalfPlaneFunction& f, const std::vector<double>& t)
{
    BoundednessCheck r;
    double ref = std::fabs(kernel_integrand(f, 1e-2));
    for (double x : t) {
        double v = kernel_integrand(f, x);
        r.t.push_back(x);
        r.values.push_back(v);
        if (!std::isfinite(v) || std::fabs(v) > 10.0 * ref + 1.0) r.bounded = false;
    }
    return r;
}

}  // namespace cuspdet::ramanujan
