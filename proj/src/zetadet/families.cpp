#include <cmath>
#include <functional>
#include <limits>

#include "cuspdet/parallel.hpp"
#include "cuspdet/quadrature.hpp"
#include "internal.hpp"

namespace cuspdet::zetadet {

using detail::Mode;
using jet::Jet;

namespace {

const double kSqrtPi = 1.772453850905516027298167483341145;
const double kCut = 1e-19;

// g(t) = u^{-m} G(t/u)
struct Family {
    std::string name;
    int m = 0;
    std::function<double(double)> G;
    std::function<Jet(const Jet&)> mellin;  // int_0^inf tau^{z-1} G, continued
    std::vector<double> small;              // G = sum small[n] tau^n near 0
    struct Term {
        double e;  // tau^{-e} (log tau)^b
        int b;
        double c;
    };
    std::vector<Term> large;
};

std::vector<double> binom_series(double x, int n)  // binom(x, q), q = 0..n
{
    std::vector<double> b(n + 1);
    b[0] = 1.0;
    for (int q = 1; q <= n; ++q) b[q] = b[q - 1] * (x - q + 1) / q;
    return b;
}

Family make_arcsinh()
{
    Family f;
    f.name = "arcsinh";
    f.m = 0;
    f.G = [](double t) { return std::asinh(t); };
    f.mellin = [](const Jet& z) {
        return -(jet::gamma((z + 1.0) * 0.5) * jet::gamma(z * -0.5)) / (z * (2.0 * kSqrtPi));
    };
    const int nq = 60;
    f.small.assign(2 * nq + 2, 0.0);
    double c = 1.0;  // binom(2q, q) / 4^q
    for (int q = 0; q <= nq; ++q) {
        if (q > 0) c *= (2.0 * q - 1.0) / (2.0 * q);
        f.small[2 * q + 1] = ((q % 2) ? -1.0 : 1.0) * c / (2.0 * q + 1.0);
        if (q == 0) {
            f.large.push_back({0.0, 0, std::log(2.0)});
            f.large.push_back({0.0, 1, 1.0});
        } else if (q <= 20) {
            f.large.push_back({2.0 * q, 0, ((q % 2) ? 1.0 : -1.0) * c / (2.0 * q)});
        }
    }
    return f;
}

Family make_log()
{
    Family f;
    f.name = "log";
    f.m = 1;
    f.G = [](double t) { return -0.5 * t / (1.0 + t * t); };
    f.mellin = [](const Jet& z) { return (-kPi / 4.0) / jet::cospi(z * 0.5); };
    const int nq = 60;
    f.small.assign(2 * nq + 2, 0.0);
    for (int q = 0; q <= nq; ++q) {
        double sg = (q % 2) ? -1.0 : 1.0;
        f.small[2 * q + 1] = -0.5 * sg;
        if (q <= 20) f.large.push_back({1.0 + 2.0 * q, 0, -0.5 * sg});
    }
    return f;
}

Family make_u1()
{
    Family f;
    f.name = "U1";
    f.m = 2;
    f.G = [](double t) {
        double r2 = 1.0 + t * t, r = std::sqrt(r2);
        return (13.0 * t / (r2 * r) - 15.0 * t * t * t / (r2 * r2 * r)) / 24.0;
    };
    auto mw = [](const Jet& w) {
        Jet g2 = jet::gamma(0.5 - w * 0.5);
        Jet a = jet::gamma(w * 0.5) * g2 * (3.0 / (2.0 * kSqrtPi));
        Jet b = jet::gamma(w * 0.5 + 1.0) * g2 * (5.0 / kSqrtPi);
        return (a - b) / 24.0;
    };
    f.mellin = [mw](const Jet& z) { return (z - 1.0) * mw(z - 1.0); };
    const int nq = 60;
    auto bh = binom_series(-0.5, nq + 1), b3 = binom_series(-1.5, nq + 1);
    f.small.assign(2 * nq + 2, 0.0);
    for (int q = 1; q <= nq; ++q) {
        double w = 3.0 * bh[q] - 5.0 * b3[q - 1];
        f.small[2 * q - 1] = -2.0 * q * w / 24.0;
    }
    for (int q = 0; q <= 20; ++q)
        f.large.push_back({2.0 + 2.0 * q, 0, (1.0 + 2.0 * q) * (3.0 * bh[q] - 5.0 * b3[q]) / 24.0});
    return f;
}

const Family& family(const std::string& name)
{
    static const Family a = make_arcsinh(), l = make_log(), u = make_u1();
    if (name == "arcsinh") return a;
    if (name == "log") return l;
    if (name == "U1") return u;
    throw DomainError("unknown family: " + name);
}

// u^{m-1+2s} h_k(s) = int_{tau_k}^inf (tau^2 - eps^2)^{-s} G(tau) dtau, quadrature to Lambda plus expanded tail
Jet near_mode_integral(const Family& f, double tau, double eps, double s0)
{
    const double Lam = std::max(4.0, tau);
    std::vector<double> mom(Jet::HI + 1, 0.0);
    if (Lam > tau) {
        const auto& rule = quad::gauss_legendre(24);
        double a = tau, w = std::min(0.25 * tau, 0.5);
        while (a < Lam) {
            double b = std::min(Lam, a + w);
            double c = 0.5 * (a + b), h = 0.5 * (b - a);
            for (size_t i = 0; i < rule.nodes.size(); ++i) {
                double x = c + h * rule.nodes[i];
                double L = std::log((x - eps) * (x + eps));
                double base = h * rule.weights[i] * f.G(x) * std::exp(-s0 * L);
                double pw = 1.0;
                for (int n = 0; n <= Jet::HI; ++n) {
                    mom[n] += base * pw;
                    pw *= -L / (n + 1);
                }
            }
            a = b;
            w = std::min(2.0 * w, 0.5);
        }
    }
    Jet acc;
    for (int n = 0; n <= Jet::HI; ++n) acc.at(n) = mom[n];
    Jet S = Jet::variable(s0);
    double lL = std::log(Lam);
    double r = (eps / Lam) * (eps / Lam);
    Jet coef = Jet::constant(1.0);
    double rj = 1.0;
    for (int j = 0; j < 60; ++j) {
        if (j > 0) {
            coef = coef * (S + (j - 1.0)) / static_cast<double>(j);
            rj *= r;
            if (rj < kCut) break;
        }
        Jet inner;
        for (const auto& t : f.large) {
            if (std::pow(Lam, -t.e) < kCut) continue;
            Jet am1 = S * 2.0 + (2.0 * j + t.e - 1.0);
            Jet pw = jet::exp(-am1 * lL);
            Jet ia = inverse(am1);
            if (t.b == 0)
                inner += pw * ia * t.c;
            else
                inner += pw * (ia * lL + ia * ia) * t.c;
        }
        acc += coef * inner * std::pow(eps, 2.0 * j);
    }
    return acc;
}

// the same quantity through the Mellin transform minus the small-tau part (needs tau_k < 1)
Jet far_mode_integral_scaled(const Family& f, double u, double tau, double nu0, double s0)
{
    Jet S = Jet::variable(s0);
    Jet acc;
    Jet coef = Jet::constant(1.0);
    double ratio = (nu0 / (u * tau)) * (nu0 / (u * tau));
    double rj = 1.0;
    for (int j = 0; j < 200; ++j) {
        if (j > 0) {
            coef = coef * (S + (j - 1.0)) / static_cast<double>(j);
            rj *= ratio;
            if (rj < kCut) break;
        }
        Jet z = 1.0 - S * 2.0 - 2.0 * j;
        Jet inner = f.mellin(z);
        for (size_t n = 0; n < f.small.size(); ++n) {
            if (f.small[n] == 0.0) continue;
            if (std::fabs(f.small[n]) * std::pow(tau, n) < kCut) break;
            Jet zn = z + static_cast<double>(n);
            inner -= jet::pow(tau, zn) / zn * f.small[n];
        }
        // u^{1-m-2s-2j}
        acc += coef * inner * jet::pow(u, 1.0 - f.m - S * 2.0 - 2.0 * j) * std::pow(nu0, 2.0 * j);
    }
    return acc;
}

Jet near_mode_family(const Family& f, const Mode& m, double s0)
{
    Jet S = Jet::variable(s0);
    Jet in = near_mode_integral(f, m.T / m.u, m.nu0 / m.u, s0);
    return in * jet::pow(m.u, 1.0 - f.m - S * 2.0);
}

const double kFarTau = 0.5;

struct Cutoffs {
    long K0 = 1;  // families: near modes |k| <= K0
    long KQ = 1;  // F - rho: explicit modes |k| <= KQ
    long KR = 1;  // linear family: explicit modes |k| <= KR
    int N = 20;   // large-argument expansion order
};

double tau_of(const SpectralZetaParams& p, long k)
{
    double u = spectrum::mode_frequency(p.g, k);
    return split_point(p, k) / u;
}

Cutoffs choose_cutoffs(const SpectralZetaParams& p, int shift, int hankel)
{
    Cutoffs c;
    double al = p.g.alpha;
    long base = std::max<long>(1, static_cast<long>(std::ceil(2.0 * al)) - 1);
    // negative modes have the smaller frequency; monotone beyond the first far mode
    long K = base;
    while (tau_of(p, -(K + 1)) > kFarTau) ++K;
    c.K0 = K + 3 * shift;
    double X0 = p.nu0() * p.nu0();
    auto u_of = [&](long k) { return 2.0 * kPi * p.g.a * (static_cast<double>(k) - al); };
    K = base;
    while (true) {
        double u = u_of(K + 1), T = split_point(p, K + 1);
        if (u >= std::max(50.0, 8.0 * T * T)) break;
        ++K;
    }
    c.KQ = K + shift * std::max<long>(5, K / 4);
    K = base;
    while (u_of(K + 1) < std::max(50.0, 8.0 * X0)) ++K;
    c.KR = K + shift * std::max<long>(5, K / 4);
    c.N = hankel - 4 * shift;
    return c;
}

std::vector<long> modes_up_to(const SpectralZetaParams& p, long K)
{
    std::vector<long> ks;
    for (long k = -K; k <= K; ++k)
        if (mode_present(p, k)) ks.push_back(k);
    return ks;
}

// sum over |k| > K of |k + alpha|^{-w} |k|^{v} (Laurent jets in s), binomial in alpha/k
Jet power_sum(double w_const, const Jet& v, double alpha, long K)
{
    Jet acc;
    double q = K + 1.0;
    double b = 1.0;
    for (int l = 0; l < 200; l += 1) {
        if (l > 0) b *= (-w_const - l + 1.0) / l;
        if (l % 2 == 1) continue;
        double mag = std::fabs(b) * std::pow(alpha / q, l);
        if (l > 0 && (alpha == 0.0 || mag < kCut)) break;
        acc += jet::hurwitz((w_const + l) - v, q) * (2.0 * b * std::pow(alpha, l));
    }
    return acc;
}

Jet far_family(const Family& f, const SpectralZetaParams& p, const Cutoffs& c, double s0)
{
    Jet S = Jet::variable(s0);
    double a = p.g.a, al = p.g.alpha, nu0 = p.nu0(), d = p.delta;
    double twopia = 2.0 * kPi * a;
    long K = c.K0;
    double umin = twopia * (K + 1.0 - al);
    double taumax = split_point(p, K + 1) / umin;
    double ratio = (nu0 / (umin * taumax)) * (nu0 / (umin * taumax));
    Jet acc;
    Jet coef = Jet::constant(1.0);
    double rj = 1.0;
    for (int j = 0; j < 200; ++j) {
        if (j > 0) {
            coef = coef * (S + (j - 1.0)) / static_cast<double>(j);
            rj *= ratio;
            if (rj < kCut) break;
        }
        double nj = std::pow(nu0, 2.0 * j);
        Jet z = 1.0 - S * 2.0 - 2.0 * j;
        // Mellin part: sum_k u_k^{1-m-2s-2j}
        Jet w = S * 2.0 + (f.m - 1.0 + 2.0 * j);
        Jet hs = jet::hurwitz(w, K + 1.0 + al) + jet::hurwitz(w, K + 1.0 - al);
        acc += coef * f.mellin(z) * jet::pow(twopia, -w) * hs * nj;
        // small-tau part: u^{-m-n} T^{z+n}
        for (size_t n = 0; n < f.small.size(); ++n) {
            if (f.small[n] == 0.0) continue;
            if (std::fabs(f.small[n]) * std::pow(taumax, n) * rj < kCut) break;
            Jet zn = z + static_cast<double>(n);
            Jet ps = power_sum(f.m + static_cast<double>(n), zn * d, al, K);
            acc -= coef * ps * jet::pow(2.0 * nu0, zn) / zn * (f.small[n] * std::pow(twopia, -(f.m + double(n))) * nj);
        }
    }
    return acc;
}

Jet family_total(const std::string& name, const SpectralZetaParams& p, const Cutoffs& c, double s0,
                 int parallelism)
{
    const Family& f = family(name);
    auto ks = modes_up_to(p, c.K0);
    auto parts = spectrum::parallel_map<Jet>(ks.size(), parallelism, [&](size_t i) {
        Mode m = detail::make_mode(p, ks[i]);
        return near_mode_family(f, m, s0);
    });
    Jet acc;
    for (const auto& j : parts) acc += j;
    acc += far_family(f, p, c, s0);
    return acc;
}

std::vector<double> poly_derivative(const std::vector<double>& c)
{
    std::vector<double> d(c.size() > 1 ? c.size() - 1 : 1, 0.0);
    for (size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
    return d;
}

double poly_eval(const std::vector<double>& c, double x)
{
    double r = 0.0;
    for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
}

// linear family: sum_k D_k/(2 nu0) (T_k^2 - nu0^2)^{1-s}/(1-s)
Jet linear_family(const SpectralZetaParams& p, const Cutoffs& c, double s0, int parallelism,
                  const std::vector<Mode>* modes = nullptr)
{
    Jet S = Jet::variable(s0);
    double nu0 = p.nu0(), X0 = nu0 * nu0, al = p.g.alpha, d = p.delta;
    Jet acc;
    auto ks = modes_up_to(p, c.KR);
    std::vector<Mode> local;
    if (!modes) {
        local = spectrum::parallel_map<Mode>(ks.size(), parallelism,
                                             [&](size_t i) { return detail::make_mode(p, ks[i]); });
        modes = &local;
    }
    Jet one_minus = 1.0 - S;
    for (const auto& m : *modes) {
        if (std::labs(m.k) > c.KR) continue;
        double base = (m.T - nu0) * (m.T + nu0);
        acc += jet::pow(base, one_minus) / one_minus * (m.D0() / (2.0 * nu0));
    }
    auto cn = specfun::hankel_log_coefficients(c.N);
    double twopia = 2.0 * kPi * p.g.a;
    long K = c.KR;
    double umin = twopia * (K + 1.0 - al);
    Jet pre = jet::pow(4.0 * X0, one_minus) / one_minus;
    for (int n = 1; n <= c.N; ++n) {
        double dn = poly_eval(poly_derivative(cn[n - 1]), X0);
        if (dn == 0.0) continue;
        if (std::fabs(dn) * std::pow(umin, -n) < kCut) continue;
        Jet inner;
        double q4 = 1.0;
        for (int i = 0; i < 200; ++i) {
            if (i > 0) q4 *= -0.25 * std::pow(K + 1.0, -2.0 * d);
            if (std::fabs(q4) < kCut) break;
            Jet v = one_minus * (2.0 * d) - 2.0 * d * i;
            inner += jet::binomial(one_minus, i) * power_sum(n, v, al, K) * std::pow(-0.25, i);
        }
        acc += pre * inner * (dn * std::pow(twopia, -n));
    }
    return acc;
}

// coefficient table of F - rho = sum_{n,i} q[n][i] X_T^i u^{-n} for large u
std::vector<std::vector<double>> q_table(double X0, int N)
{
    std::vector<std::vector<double>> q(N + 1, std::vector<double>(N + 2, 0.0));
    auto add = [&](int n, int i, double v) {
        if (n >= 1 && n <= N && i <= N + 1) q[n][i] += v;
    };
    auto bhalf = binom_series(0.5, N + 1), bmh = binom_series(-0.5, N + 1), bm3 = binom_series(-1.5, N + 1);
    for (int i = 1; 2 * i <= N; ++i) add(2 * i, i, -0.25 * ((i % 2) ? 1.0 : -1.0) / i);
    for (int i = 1; 2 * i - 1 <= N; ++i) add(2 * i - 1, i, -bhalf[i]);
    double c = 1.0;
    for (int i = 0; 2 * i + 1 <= N; ++i) {
        if (i > 0) c *= (2.0 * i - 1.0) / (2.0 * i);
        add(2 * i + 1, i + 1, ((i % 2) ? -1.0 : 1.0) * c / (2.0 * i + 1.0));
    }
    for (int i = 0; 2 * i + 1 <= N; ++i) {
        add(2 * i + 1, i, -3.0 * bmh[i] / 24.0);
        add(2 * i + 3, i + 1, 5.0 * bm3[i] / 24.0);
    }
    auto cn = specfun::hankel_log_coefficients(N);
    for (int n = 1; n <= N; ++n) {
        double v = poly_eval(cn[n - 1], X0), dv = poly_eval(poly_derivative(cn[n - 1]), X0);
        add(n, 0, -v + X0 * dv);
        add(n, 1, -dv);
    }
    return q;
}

struct QSums {
    double near = 0.0;
    double far = 0.0;
    double abs_near = 0.0;
    double max_abs = 0.0;
};

QSums q_sums(const SpectralZetaParams& p, const Cutoffs& c, const std::vector<Mode>& modes)
{
    QSums r;
    KahanSum acc, aabs;
    for (const auto& m : modes) {
        if (std::labs(m.k) > c.KQ) continue;
        double v = detail::Q_value(m);
        acc.add(v);
        aabs.add(std::fabs(v));
        r.max_abs = std::max(r.max_abs, std::fabs(v));
    }
    r.near = acc.value();
    r.abs_near = aabs.value();
    double nu0 = p.nu0(), X0 = nu0 * nu0, al = p.g.alpha, d = p.delta;
    double twopia = 2.0 * kPi * p.g.a;
    auto q = q_table(X0, c.N);
    KahanSum far;
    long K = c.KQ;
    double umin = twopia * (K + 1.0 - al);
    double Xmax = std::pow(split_point(p, K + 1), 2);
    for (int n = 1; n <= c.N; ++n) {
        for (size_t i = 0; i < q[n].size(); ++i) {
            double qq = q[n][i];
            if (qq == 0.0) continue;
            if (std::fabs(qq) * std::pow(Xmax, static_cast<double>(i)) * std::pow(umin, -n) < 1e-30) continue;
            if (n - 2.0 * d * i <= 1.0) {
                if (std::fabs(qq) < 1e-12 * std::max(1.0, X0)) continue;
                throw NumericError("non-convergent tail in family A_minus_rho (n = " + std::to_string(n) +
                                   ", i = " + std::to_string(i) + ")");
            }
            Jet ps = power_sum(n, Jet::constant(2.0 * d * i), al, K);
            far.add(qq * std::pow(twopia, -n) * std::pow(4.0 * X0, static_cast<double>(i)) * ps[0]);
        }
    }
    r.far = far.value();
    return r;
}

struct Assembly {
    std::map<std::string, double> contrib;  // to zeta'(0)
    double numeric = 0.0;                    // explicit sum of F - rho, to zeta'(0)
    double c_minus2 = 0.0, c_minus1 = 0.0;
    double magnitude = 0.0;
    Cutoffs cut;
};

Assembly assemble(const SpectralZetaParams& p, int shift, const LogdetOptions& opt)
{
    Assembly a;
    a.cut = choose_cutoffs(p, shift, opt.hankel_order);
    const Cutoffs& c = a.cut;
    long Kmax = std::max(c.KQ, c.KR);
    auto ks = modes_up_to(p, Kmax);
    auto modes = spectrum::parallel_map<Mode>(ks.size(), opt.parallelism,
                                              [&](size_t i) { return detail::make_mode(p, ks[i]); });
    Jet S = Jet::variable(0.0);
    Jet sinj = jet::sinpi(S) / kPi;
    Jet total;
    for (const char* name : {"arcsinh", "log", "U1"}) {
        Jet j = family_total(name, p, c, 0.0, opt.parallelism);
        total += j;
        a.contrib[name] = (sinj * j)[1];
    }
    Jet lin = linear_family(p, c, 0.0, opt.parallelism, &modes);
    total += lin;
    a.contrib["linear"] = (sinj * lin)[1];
    QSums qs = q_sums(p, c, modes);
    a.numeric = qs.near;
    a.contrib["A_minus_rho_tail"] = qs.far;
    a.c_minus2 = total[-2];
    a.c_minus1 = total[-1];
    double mag = qs.abs_near;
    for (const auto& [k, v] : a.contrib) mag = std::max(mag, std::fabs(v));
    a.magnitude = mag;
    return a;
}

}  // namespace

jet::Jet family_jet(const SpectralZetaParams& p, const std::string& name, double s0, long near_cutoff)
{
    p.validate();
    Cutoffs c = choose_cutoffs(p, 0, 20);
    if (near_cutoff >= 0) {
        c.K0 = std::max(c.K0, near_cutoff);
        c.KR = std::max(c.KR, near_cutoff);
    }
    if (name == "R") return linear_family(p, c, s0, 1);
    return family_total(name, p, c, s0, 1);
}

double family_mode_value(const SpectralZetaParams& p, const std::string& name, long k, double s)
{
    Mode m = detail::make_mode(p, k);
    if (name == "R") {
        double base = (m.T - m.nu0) * (m.T + m.nu0);
        return m.D0() / (2.0 * m.nu0) * std::pow(base, 1.0 - s) / (1.0 - s);
    }
    const Family& f = family(name);
    double tau = m.T / m.u;
    if (tau > kFarTau) return near_mode_family(f, m, s)[0];
    return far_mode_integral_scaled(f, m.u, tau, m.nu0, s)[0];
}

double family_mode_value_route(const SpectralZetaParams& p, const std::string& name, long k, double s, bool far)
{
    Mode m = detail::make_mode(p, k);
    const Family& f = family(name);
    double tau = m.T / m.u;
    if (far) return far_mode_integral_scaled(f, m.u, tau, m.nu0, s)[0];
    return near_mode_family(f, m, s)[0];
}

double family_mode_quadrature(const SpectralZetaParams& p, const std::string& name, long k, double s)
{
    Mode m = detail::make_mode(p, k);
    double n0 = m.nu0, u = m.u;
    std::function<double(double)> g;
    double rate;
    if (name == "R") {
        double D0 = m.D0();
        g = [=](double t) { return -t * D0 / n0; };
        rate = 2.0 * s - 2.0;
    } else {
        const Family& f = family(name);
        g = [&f, u](double t) { return std::pow(u, -f.m) * f.G(t / u); };
        rate = 2.0 * s - 1.0 + f.m;
    }
    double thT = std::acosh(m.T / n0);
    double thmax = std::max(thT, detail::theta_cutoff(rate));
    auto r = detail::theta_integral(
        [&](double th) {
            double t = n0 * std::cosh(th);
            return std::pow(n0 * std::sinh(th), 1.0 - 2.0 * s) * g(t);
        },
        thT, thmax, 1);
    if (!r.converged) throw NumericError("family_mode_quadrature: no convergence");
    return r.value;
}

std::map<std::string, FamilyValue> regularized_family_sums(const SpectralZetaParams& p, const LogdetOptions& opt)
{
    p.validate();
    Assembly a = assemble(p, 0, opt);
    std::map<std::string, FamilyValue> out;
    for (const auto& [k, v] : a.contrib) {
        FamilyValue fv;
        fv.value = -v;
        out[k] = fv;
    }
    out["arcsinh"].diagnostics["near_modes"] = static_cast<double>(a.cut.K0);
    out["log"].diagnostics["near_modes"] = static_cast<double>(a.cut.K0);
    out["U1"].diagnostics["near_modes"] = static_cast<double>(a.cut.K0);
    out["linear"].diagnostics["near_modes"] = static_cast<double>(a.cut.KR);
    out["A_minus_rho_tail"].diagnostics["explicit_modes"] = static_cast<double>(a.cut.KQ);
    out["A_minus_rho_tail"].diagnostics["explicit_sum"] = -a.numeric;
    return out;
}

DeterminantReport logdet(const SpectralZetaParams& p, const LogdetOptions& opt)
{
    p.validate();
    Assembly a = assemble(p, 0, opt);
    DeterminantReport r;
    r.a = p.g.a;
    r.alpha = p.g.alpha;
    r.mu = p.mu;
    r.delta = p.delta;
    KahanSum sum;
    for (const auto& [k, v] : a.contrib) {
        r.family_contributions[k] = -v;
        sum.add(-v);
    }
    r.numeric_remainder = -a.numeric;
    sum.add(r.numeric_remainder);
    r.logdet = sum.value();
    double eps = std::numeric_limits<double>::epsilon();
    double amp = a.magnitude / std::max(std::fabs(r.logdet), 1e-300);
    double round = 64.0 * eps * a.magnitude;
    double trunc = 0.0;
    if (opt.error_estimate) {
        Assembly b = assemble(p, 1, opt);
        KahanSum sb;
        for (const auto& [k, v] : b.contrib) sb.add(-v);
        sb.add(-b.numeric);
        trunc = std::fabs(sb.value() - r.logdet);
    }
    r.est_error = trunc + round;
    r.diagnostics["cancellation_amplification"] = amp;
    r.diagnostics["pole_coefficient_m2"] = a.c_minus2;
    r.diagnostics["pole_coefficient_m1"] = a.c_minus1;
    r.diagnostics["cutoff_variation"] = trunc;
    r.diagnostics["near_modes_families"] = static_cast<double>(a.cut.K0);
    r.diagnostics["near_modes_A_minus_rho"] = static_cast<double>(a.cut.KQ);
    r.diagnostics["near_modes_linear"] = static_cast<double>(a.cut.KR);
    return r;
}

namespace {

// int_T^inf (t^2-nu0^2)^{-s} rho'(t) dt, rho = log K minus its four-term expansion
double rho_part(const Mode& m, double s)
{
    double n0 = m.nu0, u = m.u;
    auto drho = [&](double t) {
        auto dc = dlogK_decomposition_raw(u, t);
        return dc.derivative - dc.explicit_terms;
    };
    double thT = std::acosh(m.T / n0);
    double thmax = std::max(thT, detail::theta_cutoff(2.0 * s + 1.0));
    auto r = detail::theta_integral(
        [&](double th) { return std::pow(n0 * std::sinh(th), 1.0 - 2.0 * s) * drho(n0 * std::cosh(th)); },
        thT, thmax, 1);
    if (!r.converged) throw NumericError("remainder integral did not converge");
    return r.value;
}

}  // namespace

StripReassembly strip_mode_sums(const SpectralZetaParams& p, double s, long K, int parallelism)
{
    check_strip_point(s);
    p.validate();
    auto ks = modes_up_to(p, K);
    double pref = std::sin(kPi * s) / kPi;
    struct Pair {
        double fam = 0.0, direct = 0.0;
    };
    auto parts = spectrum::parallel_map<Pair>(ks.size(), parallelism, [&](size_t i) {
        long k = ks[i];
        Mode m = detail::make_mode(p, k);
        ModeTermValues v = split_terms_strip(p, k, s);
        double h = 0.0;
        for (const char* name : {"arcsinh", "log", "U1", "R"}) h += family_mode_value(p, name, k, s);
        Pair pr;
        pr.fam = v.A + v.B + pref * (rho_part(m, s) + h);
        pr.direct = v.I;
        return pr;
    });
    StripReassembly out;
    KahanSum f, d;
    for (const auto& pr : parts) {
        f.add(pr.fam);
        d.add(pr.direct);
    }
    out.families = f.value();
    out.direct = d.value();
    return out;
}

StripReassembly strip_reassembly(const SpectralZetaParams& p, double s, long K, double r_max, int parallelism)
{
    StripReassembly out = strip_mode_sums(p, s, K, parallelism);
    spectrum::Truncation tr;
    tr.k_max = K;
    tr.r_max = r_max;
    auto ze = spectrum::zeta_eig(p.g, p.mu, s, tr, parallelism);
    out.eig = ze.value;
    double terr = 0.0;
    for (const auto& md : ze.modes) terr += md.tail_error;
    out.eig_error = terr;
    return out;
}

}  // namespace cuspdet::zetadet
