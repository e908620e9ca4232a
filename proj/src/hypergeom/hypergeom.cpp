#include "cuspdet/hypergeom.hpp"

#include <cmath>
#include <vector>

#include "cuspdet/quadrature.hpp"
#include "cuspdet/specfun.hpp"

namespace cuspdet::hypergeom {

namespace {

constexpr long kMaxTerms = 100000;

bool nonpos_int(double x) { return x <= 0.0 && x == std::floor(x); }

double dist_to_int(double x) { return std::fabs(x - std::round(x)); }

// log|Gamma| and sign, for ratios that would overflow
struct LogGamma {
    double log_abs;
    int sign;
};

LogGamma lg(double x)
{
    int sign = 1;
    if (x < 0.0 && static_cast<long long>(std::floor(x)) % 2 != 0) sign = -1;
    return {specfun::log_gamma_abs(x), sign};
}

// prod Gamma(num) / prod Gamma(den); poles in den give 0
double gamma_ratio(std::initializer_list<double> num, std::initializer_list<double> den)
{
    for (double d : den)
        if (nonpos_int(d)) return 0.0;
    double l = 0.0;
    int sign = 1;
    for (double n : num) {
        if (nonpos_int(n)) throw DomainError("hypergeometric: Gamma pole in a connection coefficient");
        LogGamma g = lg(n);
        l += g.log_abs;
        sign *= g.sign;
    }
    for (double d : den) {
        LogGamma g = lg(d);
        l -= g.log_abs;
        sign *= g.sign;
    }
    return sign * std::exp(l);
}

void check_c(double c, const char* who)
{
    if (!std::isfinite(c)) throw DomainError(std::string(who) + ": non-finite parameter");
    if (nonpos_int(c)) throw DomainError(std::string(who) + ": pole, lower parameter is a non-positive integer");
}

// Aitken delta-squared on the last three partial sums
double aitken(double s0, double s1, double s2)
{
    double d = s2 - 2.0 * s1 + s0;
    if (d == 0.0) return s2;
    return s2 - (s2 - s1) * (s2 - s1) / d;
}

// generic pFq series with up to three upper and two lower parameters
double pfq_series(const std::vector<double>& up, const std::vector<double>& lo, double z,
                  double target)
{
    target = std::max(1e-17, 1e-3 * target);
    KahanSum sum;
    sum.add(1.0);
    double term = 1.0;
    int small = 0;
    double az = std::fabs(z);
    double s_prev2 = 0.0, s_prev1 = 1.0;
    for (long n = 0; n < kMaxTerms; ++n) {
        double r = z / (n + 1.0);
        for (double a : up) r *= (a + n);
        for (double b : lo) r /= (b + n);
        term *= r;
        sum.add(term);
        double s = sum.value();
        if (term == 0.0) return s;
        // geometric tail allowance
        if (std::fabs(r) < 1.0 && std::fabs(term) < target * std::fabs(s) * std::max(1.0 - az, 1e-3)) {
            if (++small >= 2) return s;
        } else {
            small = 0;
        }
        s_prev2 = s_prev1;
        s_prev1 = s;
        if (!std::isfinite(s)) throw NumericError("hypergeometric series overflow");
    }
    double s = sum.value();
    double acc = aitken(s_prev2, s_prev1, s);
    if (std::fabs(acc - s) > 1e3 * target * std::max(1.0, std::fabs(acc)))
        throw NumericError("hypergeometric series did not converge within 1e5 terms");
    return acc;
}

}  // namespace

double gauss_2f1_series(double a, double b, double c, double z, const WorkingPrecision& wp)
{
    check_c(c, "gauss_2f1");
    if (!(std::fabs(z) < 1.0)) throw DomainError("gauss_2f1 series: requires |z| < 1");
    return pfq_series({a, b}, {c}, z, wp.relative_target);
}

double gauss_2f1(double a, double b, double c, double z, const WorkingPrecision& wp)
{
    check_c(c, "gauss_2f1");
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(z))
        throw DomainError("gauss_2f1: non-finite argument");
    if (!(z < 1.0)) throw DomainError("gauss_2f1: requires z < 1");
    if (z == 0.0) return 1.0;
    // terminating series is exact everywhere
    if (nonpos_int(a) || nonpos_int(b)) {
        double n = nonpos_int(a) ? a : b;
        KahanSum s;
        double term = 1.0;
        s.add(term);
        for (long k = 0; k < static_cast<long>(-n); ++k) {
            term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
            s.add(term);
        }
        return s.value();
    }
    if (std::fabs(z) <= 0.5) return pfq_series({a, b}, {c}, z, wp.relative_target);
    if (z < -0.5) {
        double w = z / (z - 1.0);
        return std::pow(1.0 - z, -a) * gauss_2f1(a, c - b, c, w, wp);
    }
    // z in (1/2, 1)
    double s = a + b - c;
    if (dist_to_int(s) < 1e-5) return pfq_series({a, b}, {c}, z, wp.relative_target);
    double w = 1.0 - z;
    double A = gamma_ratio({c, c - a - b}, {c - a, c - b});
    double B = gamma_ratio({c, a + b - c}, {a, b});
    double f1 = (A == 0.0) ? 0.0 : pfq_series({a, b}, {1.0 + s}, w, wp.relative_target);
    double f2 = (B == 0.0) ? 0.0 : pfq_series({c - a, c - b}, {1.0 - s}, w, wp.relative_target);
    return A * f1 + B * std::pow(w, -s) * f2;
}

double gauss_2f1_euler(double a, double b, double c, double z, const WorkingPrecision& wp)
{
    if (!(c > b && b > 0.0)) throw DomainError("Euler integral: requires c > b > 0");
    if (!(z <= 1.0)) throw DomainError("Euler integral: requires z <= 1");
    if (z == 1.0 && !(c - a - b > 0.0)) throw DomainError("Euler integral: z = 1 requires c - a - b > 0");
    // power substitutions absorb both endpoint singularities; at z = 1 the factor (1-t)^{-a} joins them
    const double e = z == 1.0 ? c - b - a : c - b;
    if (z == 1.0) {
        a = 0.0;
        z = 0.0;
    }
    auto left = [&](double, double v, double) {
        double t = std::pow(v, 1.0 / b);
        return std::pow(1.0 - t, e - 1.0) * std::pow(1.0 - z * t, -a) / b;
    };
    auto right = [&](double, double v, double) {
        double omt = std::pow(v, 1.0 / e);
        double t = 1.0 - omt;
        return std::pow(t, b - 1.0) * std::pow(1.0 - z * t, -a) / e;
    };
    double tol = std::max(wp.relative_target, 1e-14);
    auto r1 = quad::tanh_sinh(left, 0.0, std::pow(0.5, b), tol, 12);
    auto r2 = quad::tanh_sinh(right, 0.0, std::pow(0.5, e), tol, 12);
    if (!r1.converged || !r2.converged) throw NumericError("Euler integral: quadrature did not converge");
    return gamma_ratio({c}, {b, c - b}) * (r1.value + r2.value);
}

double generalized_3f2(double a1, double a2, double a3, double b1, double b2, double z,
                       const WorkingPrecision& wp)
{
    check_c(b1, "generalized_3f2");
    check_c(b2, "generalized_3f2");
    if (!(std::fabs(z) < 1.0)) throw DomainError("generalized_3f2: requires |z| < 1");
    return pfq_series({a1, a2, a3}, {b1, b2}, z, wp.relative_target);
}

double gauss_value_at_1(double a, double b, double c)
{
    check_c(c, "gauss_value_at_1");
    if (!(c - a - b > 0.0)) throw DomainError("gauss_value_at_1: diverges unless c - a - b > 0");
    return gamma_ratio({c, c - a - b}, {c - a, c - b});
}

std::map<std::string, IdentityResidual> identity_residuals(const HypergeomParams& p)
{
    std::map<std::string, IdentityResidual> out;
    const double a = p.a, b = p.b, c = p.c, z = p.z;
    const WorkingPrecision& wp = default_precision();
    auto record = [&](const std::string& key, auto&& fn) {
        IdentityResidual r;
        try {
            fn(r);
        } catch (const std::exception& e) {
            r.skipped = true;
            r.reason = e.what();
        }
        out[key] = r;
    };
    auto set = [](IdentityResidual& r, double lhs, double rhs, double scale) {
        r.residual = std::fabs(lhs - rhs);
        r.relative = r.residual / std::max({1.0, std::fabs(lhs), std::fabs(scale)});
    };
    auto skip = [](IdentityResidual& r, const char* why) {
        r.skipped = true;
        r.reason = why;
    };
    if (nonpos_int(c) || !(z < 1.0)) {
        for (const char* k : {"pfaff_a", "pfaff_b", "linear_transformation", "contiguous", "extraction_a1",
                              "extraction_3f2_one", "extraction_3f2_two"})
            out[k] = IdentityResidual{0.0, 0.0, true, "c is a pole or z >= 1"};
        return out;
    }
    // LHS by an evaluation route independent of the Pfaff map
    auto direct = [&](double aa, double bb, double cc, double zz) {
        if (std::fabs(zz) < 0.95) return gauss_2f1_series(aa, bb, cc, zz, wp);
        if (cc > bb && bb > 0.0) return gauss_2f1_euler(aa, bb, cc, zz, wp);
        if (cc > aa && aa > 0.0) return gauss_2f1_euler(bb, aa, cc, zz, wp);
        throw DomainError("no independent evaluation route for this z");
    };
    double w = z / (z - 1.0);
    record("pfaff_a", [&](IdentityResidual& r) {
        double lhs = direct(a, b, c, z);
        set(r, lhs, std::pow(1.0 - z, -a) * gauss_2f1(a, c - b, c, w, wp), 0.0);
    });
    record("pfaff_b", [&](IdentityResidual& r) {
        double lhs = direct(a, b, c, z);
        set(r, lhs, std::pow(1.0 - z, -b) * gauss_2f1(b, c - a, c, w, wp), 0.0);
    });
    record("linear_transformation", [&](IdentityResidual& r) {
        double s = a + b - c;
        if (!(z > 0.0)) return skip(r, "requires 0 < z < 1");
        if (dist_to_int(s) < 1e-3) return skip(r, "a + b - c is (near) an integer");
        if (nonpos_int(a) || nonpos_int(b)) return skip(r, "terminating series");
        double lhs = direct(a, b, c, z);
        double t1 = gamma_ratio({c, s}, {a, b}) * std::pow(1.0 - z, -s) *
                    gauss_2f1_series(c - a, c - b, 1.0 - s, 1.0 - z, wp);
        double t2 = gamma_ratio({c, -s}, {c - a, c - b}) * gauss_2f1_series(a, b, 1.0 + s, 1.0 - z, wp);
        set(r, lhs, t1 + t2, std::max(std::fabs(t1), std::fabs(t2)));
    });
    record("contiguous", [&](IdentityResidual& r) {
        if (nonpos_int(c - 1.0)) return skip(r, "c - 1 is a non-positive integer");
        double t1 = (a - 1.0 + (b + 1.0 - c) * z) * gauss_2f1(a, b, c, z, wp);
        double t2 = (c - a) * gauss_2f1(a - 1.0, b, c, z, wp);
        double t3 = (c - 1.0) * (1.0 - z) * gauss_2f1(a, b, c - 1.0, z, wp);
        set(r, t1 + t2, t3, std::max({std::fabs(t1), std::fabs(t2), std::fabs(t3)}));
    });
    record("extraction_a1", [&](IdentityResidual& r) {
        double lhs = gauss_2f1(a, 1.0, c, z, wp);
        double rhs = 1.0 + a / c * z + a * (a + 1.0) / (c * (c + 1.0)) * z * z * gauss_2f1(a + 2.0, 1.0, c + 2.0, z, wp);
        set(r, lhs, rhs, 0.0);
    });
    record("extraction_3f2_one", [&](IdentityResidual& r) {
        if (!(std::fabs(z) < 1.0)) return skip(r, "requires |z| < 1");
        double lhs = gauss_2f1(a, b, c, z, wp);
        double rhs = 1.0 + a * b / c * z * generalized_3f2(a + 1.0, b + 1.0, 1.0, c + 1.0, 2.0, z, wp);
        set(r, lhs, rhs, 0.0);
    });
    record("extraction_3f2_two", [&](IdentityResidual& r) {
        if (!(std::fabs(z) < 1.0)) return skip(r, "requires |z| < 1");
        double lhs = gauss_2f1(a, b, c, z, wp);
        double rhs = 1.0 + a * b / c * z +
                     a * (a + 1.0) * b * (b + 1.0) / (c * (c + 1.0)) * 0.5 * z * z *
                         generalized_3f2(a + 2.0, b + 2.0, 1.0, c + 2.0, 3.0, z, wp);
        set(r, lhs, rhs, 0.0);
    });
    return out;
}

TailIntegralCheck tail_integral_check(double mu, double nu, double u)
{
    if (!(mu > 0.0)) throw DomainError("tail_integral: requires mu > 0");
    if (!(u > 0.0)) throw DomainError("tail_integral: requires u > 0");
    const WorkingPrecision& wp = default_precision();
    TailIntegralCheck r;
    // y = v^{1/mu}
    auto f = [&](double, double v, double) { return std::pow(1.0 + std::pow(v, 1.0 / mu), -nu) / mu; };
    auto q = quad::tanh_sinh(f, 0.0, std::pow(u, mu), 1e-14, 12);
    if (!q.converged) throw NumericError("tail_integral: quadrature did not converge");
    r.quadrature = q.value;
    r.form_euler = std::pow(u, mu) * std::pow(1.0 + u, -nu) / mu * gauss_2f1(nu, 1.0, mu + 1.0, u / (1.0 + u), wp);
    double d = nu - mu;
    if (nonpos_int(d) || nonpos_int(d + 1.0)) {
        r.form_beta_valid = false;
    } else {
        r.form_beta = std::pow(u, -d) / (-d) * gauss_2f1(nu, d, d + 1.0, -1.0 / u, wp) +
                      gamma_ratio({mu, d}, {nu});
    }
    double scale = std::max(std::fabs(r.quadrature), 1e-300);
    r.max_relative_spread = std::fabs(r.form_euler - r.quadrature) / scale;
    if (r.form_beta_valid) {
        r.max_relative_spread = std::max({r.max_relative_spread, std::fabs(r.form_beta - r.quadrature) / scale,
                                          std::fabs(r.form_beta - r.form_euler) / scale});
    }
    return r;
}

double tail_integral(double mu, double nu, double u)
{
    if (!(mu > 0.0)) throw DomainError("tail_integral: requires mu > 0");
    if (!(u > 0.0)) throw DomainError("tail_integral: requires u > 0");
    return std::pow(u, mu) * std::pow(1.0 + u, -nu) / mu * gauss_2f1(nu, 1.0, mu + 1.0, u / (1.0 + u));
}

}  // namespace cuspdet::hypergeom
