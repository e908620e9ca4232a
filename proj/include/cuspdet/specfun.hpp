#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cuspdet/common.hpp"

namespace cuspdet::specfun {

// ---- Gamma family
struct GammaResult {
    double gamma;
    double log_gamma;  // log|Gamma|
    double digamma;
};
GammaResult gamma_digamma(double x);
double gamma_fn(double x);
double log_gamma_abs(double x);
double digamma(double x);
double polygamma(int n, double x);  // x > 0 or non-integer x <= 0 for n == 0
double bernoulli_b2k(int k);        // B_{2k}, k = 0..30
double sinpi(double x);
double cospi(double x);

// ---- zeta
struct ZetaResult {
    double zeta;
    double dzeta;
    double hurwitz;
    double dhurwitz;
};
ZetaResult zeta_functions(double s, double q);
double riemann_zeta(double s);
double hurwitz_zeta(double s, double q);
double hurwitz_zeta_ds(double s, double q);
// zeta_H(s,q) = 1/(s-1) + finite_part + O(s-1)
struct LaurentAtOne {
    double residue = 1.0;
    double finite_part = 0.0;
};
LaurentAtOne hurwitz_laurent_at_one(double q);

// ---- exponential integral
double exp_integral_E1(double x);
double exp_integral_E1_scaled(double x);  // e^x E1(x)

// ---- modified Bessel K, real order
struct LogBesselK {
    double log_k = 0.0;
    // cumulants of the order variable: d^n/dnu^n log K_nu(x), n = 1..4
    double d1 = 0.0, d2 = 0.0, d3 = 0.0, d4 = 0.0;
    // log_k = peak + rest, peak = nu asinh(nu/x) - sqrt(nu^2 + x^2)
    double peak = 0.0, rest = 0.0;
};
LogBesselK log_bessel_k(double nu, double x);
double bessel_K_real_order(double nu, double x);
double log_bessel_K(double nu, double x);
double dlog_bessel_K_dorder(double t, double x);

// ---- modified Bessel K, imaginary order
// K_{i nu}(x) = scaled * exp(log_scale); theta is the contour shift actually used
struct ImagOrderK {
    double scaled = 0.0;
    double dscaled = 0.0;  // d/dnu, same scale
    double log_scale = 0.0;
    double theta = 0.0;
};
double imag_order_theta(double nu, double x);
ImagOrderK bessel_K_imag_order_scaled(double nu, double x);
ImagOrderK bessel_K_imag_order_scaled_theta(double nu, double x, double theta);
double bessel_K_imag_order(double nu, double x);

// ---- uniform (large order) expansion of log K_nu(nu x)
struct UniformConfig {
    double A0 = 25.0;
    double B0 = 25.0;
    double safety = 2.0;
};
double debye_p(double z);
double debye_xi(double z);
double uniform_log_K_terms(double nu, double x);  // the four explicit terms
// log K_nu(nu x) + nu xi(x), evaluated without forming the exponential part
double log_bessel_k_uniform_rest(double nu, double x);
// log K_nu(nu x) minus the four terms
double uniform_log_K_remainder(double nu, double x);
double eta2_constant(const UniformConfig& cfg = UniformConfig{});
CertifiedValue uniform_log_K_certified(double nu, double x,
                                       const UniformConfig& cfg = UniformConfig{});

// ---- U_k, A_k polynomials with exact rational coefficients
struct PolynomialSeq {
    char kind = 'U';  // 'U' or 'A'
    int degree_index = 0;
    // coefficients of t^0, t^1, ... as "num/den" strings and as doubles
    std::vector<std::string> coefficients;
    std::vector<double> values;
    double eval(double t) const;
    double deriv(double t) const;
};
struct AsymptoticPolynomials {
    std::vector<PolynomialSeq> U;
    std::vector<PolynomialSeq> A;
    double V01_U1 = 0.0;  // total variation of U_1 on [0,1]
    std::vector<double> V01;  // total variations of U_0..U_n on [0,1]
};
AsymptoticPolynomials asymptotic_polynomials(int n);
std::string asymptotic_polynomials_json(const AsymptoticPolynomials& ap);
// residuals (as exact strings "0" when zero) of U_{k+1} - 1/2 t^2(1-t^2)U_k' - 1/8 int_0^t w U_k
// with w = 1 - 5x^2 (weighted = true) or w = 1 (weighted = false)
std::vector<std::string> u_recursion_residuals(int n, bool weighted);

// log S(nu, u) = log sum_j A_j(nu) u^{-j} = sum_{n>=1} c_n(X) u^{-n}, X = nu^2;
// returns c_1..c_nmax as polynomial coefficient vectors in X
std::vector<std::vector<double>> hankel_log_coefficients(int nmax);

// ---- Bose-weighted arctan integral
double bose_arctan_integral(double c);

}  // namespace cuspdet::specfun
