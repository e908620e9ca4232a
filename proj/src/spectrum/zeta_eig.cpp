#include <cmath>

#include "cuspdet/quadrature.hpp"
#include "cuspdet/specfun.hpp"
#include "cuspdet/spectrum.hpp"

namespace cuspdet::spectrum {

namespace {

double u1(double p) { return (3.0 * p - 5.0 * p * p * p) / 24.0; }
double u1p(double p) { return (3.0 - 15.0 * p * p) / 24.0; }

double H(double r, double nu0sq, double s) { return std::pow(r * r + nu0sq, -s); }
double Hp(double r, double nu0sq, double s) { return -2.0 * s * r * std::pow(r * r + nu0sq, -s - 1.0); }

// r with zero_phase(r, u) = phi, starting right of r0
double invert_phase(double phi, double u, double r0)
{
    double r = r0;
    for (int it = 0; it < 100; ++it) {
        double d = (zero_phase(r, u) - phi) / zero_phase_derivative(r, u);
        double rn = r - d;
        if (rn <= u) rn = 0.5 * (r + u);
        if (std::fabs(rn - r) < 1e-15 * rn) return rn;
        r = rn;
    }
    return r;
}

}  // namespace

double zero_phase(double nu, double u)
{
    if (!(nu > u)) throw DomainError("zero_phase: requires nu > u");
    double w = std::sqrt((nu - u) * (nu + u));
    double p = nu / w;
    return nu * std::acosh(nu / u) - w + 0.25 * kPi + u1(p) / nu;
}

double zero_phase_derivative(double nu, double u)
{
    double w = std::sqrt((nu - u) * (nu + u));
    double p = nu / w;
    double dp = -u * u / (w * w * w);
    return std::acosh(nu / u) + u1p(p) * dp / nu - u1(p) / (nu * nu);
}

double mode_zero_ceiling(double u, double r_max) { return std::max(r_max, 2.0 * u + 40.0); }

ModeZeta mode_zeta_from_zeros(const std::vector<EigenvalueRecord>& zeros, double u, double mu, double s)
{
    if (!(s > 1.0)) throw DomainError("zeta_eig: diverges unless s > 1");
    if (zeros.empty()) throw NumericError("mode zeta: no zeros to calibrate the phase tail");
    const double nu0sq = 0.25 + mu;
    ModeZeta m;
    m.k = zeros.front().k;
    m.zeros = static_cast<int>(zeros.size());
    KahanSum acc;
    for (const auto& z : zeros) acc.add(H(z.r, nu0sq, s));
    m.explicit_sum = acc.value();
    const int J = static_cast<int>(zeros.size());
    const double rJ = zeros.back().r;
    auto eps = [&](int idx) { return zero_phase(zeros[idx].r, u) - kPi * zeros[idx].j; };
    const double phiJ = zero_phase(rJ, u);
    // midpoint Euler-Maclaurin in the zero index m = 1, 2, ... beyond J
    auto r_of = [&](double mm) { return invert_phase(phiJ + kPi * mm, u, rJ + 1e-9); };
    const double rh = r_of(0.5);
    // r = rh v^{-beta} flattens the algebraic decay; log singularity at v = 0 left to tanh-sinh
    const double beta = 1.0 / (2.0 * s - 1.0);
    auto integrand = [&](double, double v, double) {
        double r = rh * std::pow(v, -beta);
        if (!(r < 1e150)) return 0.0;
        // H(r) v^{-beta-1} = H(r) (r/rh)^{2s}
        double hv = std::pow(r * r / (rh * rh * (r * r + nu0sq)), s);
        return hv * zero_phase_derivative(r, u) / kPi * rh * beta;
    };
    auto q = quad::tanh_sinh(integrand, 0.0, 1.0, 1e-13, 12);
    if (!q.converged) throw NumericError("mode zeta: phase tail quadrature did not converge");
    double g1 = Hp(rh, nu0sq, s) * kPi / zero_phase_derivative(rh, u);
    m.phase_tail = q.value + g1 / 24.0;
    // next Euler-Maclaurin term as an error proxy
    const double hh = 0.25;
    double g3 = (H(r_of(0.5 + 2 * hh), nu0sq, s) - 2.0 * H(r_of(0.5 + hh), nu0sq, s) +
                 2.0 * H(r_of(0.5 - hh), nu0sq, s) - H(r_of(0.5 - 2 * hh), nu0sq, s)) /
                (2.0 * hh * hh * hh);
    double em = 7.0 / 5760.0 * std::fabs(g3);
    // drift of the calibrated phase offset, extrapolated to infinity assuming 1/nu decay
    double drift;
    if (J >= 2) {
        int qd = std::min(5, J - 1);
        double r0 = zeros[J - 1 - qd].r;
        drift = std::fabs(eps(J - 1) - eps(J - 1 - qd)) * r0 / (rJ - r0);
    } else {
        drift = std::fabs(eps(J - 1));
    }
    m.tail_error = drift / kPi * H(rJ, nu0sq, s) + em + q.error;
    return m;
}

ModeZeta mode_zeta_eig(const Geometry& g, long k, double mu, double s, double r_max)
{
    double u = mode_frequency(g, k);
    auto z = find_mode_zeros(g, k, mode_zero_ceiling(u, r_max));
    return mode_zeta_from_zeros(z, u, mu, s);
}

ZetaEig zeta_eig(const Geometry& g, double mu, double s, const Truncation& tr, int parallelism)
{
    g.validate();
    if (!(s > 1.0)) throw DomainError("zeta_eig: diverges unless s > 1");
    if (!(mu >= 0.0)) throw DomainError("zeta_eig: requires mu >= 0");
    if (tr.k_max < 0) throw DomainError("zeta_eig: requires k_max >= 0");
    std::vector<long> ks;
    for (long k = -tr.k_max; k <= tr.k_max; ++k)
        if (!(k == 0 && g.alpha == 0.0)) ks.push_back(k);
    ZetaEig out;
    out.modes = parallel_map<ModeZeta>(ks.size(), parallelism,
                                       [&](size_t i) { return mode_zeta_eig(g, ks[i], mu, s, tr.r_max); });
    KahanSum v, e;
    for (const auto& m : out.modes) {
        v.add(m.value());
        e.add(m.tail_error);
    }
    out.value = v.value();
    // modes beyond k_max: N_k(r) <= Phi(r)/pi + 1 with zeros above u_k
    auto I = quad::gauss_kronrod_inf([s](double rho) { return std::pow(rho, -2.0 * s) * std::acosh(rho); }, 1.0,
                                     1e-16, 1e-12);
    double c = 2.0 * kPi * g.a;
    double q1 = tr.k_max + 1.0 + g.alpha, q2 = tr.k_max + 1.0 - g.alpha;
    out.mode_tail_bound = 1.25 * std::pow(c, -2.0 * s) * (specfun::hurwitz_zeta(2.0 * s, q1) + specfun::hurwitz_zeta(2.0 * s, q2)) +
                          I.value / kPi * std::pow(c, 1.0 - 2.0 * s) *
                              (specfun::hurwitz_zeta(2.0 * s - 1.0, q1) + specfun::hurwitz_zeta(2.0 * s - 1.0, q2));
    out.tail_bound = e.value() + out.mode_tail_bound;
    return out;
}

}  // namespace cuspdet::spectrum
