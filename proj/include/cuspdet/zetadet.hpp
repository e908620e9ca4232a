#pragma once

#include <map>
#include <string>
#include <vector>

#include "cuspdet/jet.hpp"
#include "cuspdet/spectrum.hpp"

namespace cuspdet::zetadet {

struct SpectralZetaParams {
    spectrum::Geometry g;
    double mu = 0.0;
    double delta = 0.06;
    double nu0() const;
    void validate() const;  // throws DomainError naming the violated constraint
};

void check_strip_point(double s);  // 1 < s < 2

double split_point(const SpectralZetaParams& p, long k);  // T_k
bool mode_present(const SpectralZetaParams& p, long k);

double f_mu_k(const SpectralZetaParams& p, long k, double t);
double F_mu_k(const SpectralZetaParams& p, long k, double t);

// C0 such that |F(t)| <= C0 (t^2 - nu0^2) |k|^{4 delta - 2} / a^2 on [nu0, T_k], fitted on k in [2, 50]
double F_bound_constant(const SpectralZetaParams& p);
double F_bound(const SpectralZetaParams& p, long k, double t);

struct StripQuadrature {
    double value = 0.0;
    double error = 0.0;
};
StripQuadrature mode_zeta_strip_q(const SpectralZetaParams& p, long k, double s);
double mode_zeta_strip(const SpectralZetaParams& p, long k, double s);

struct ModeTermValues {
    double I = 0.0;
    double L = 0.0, M = 0.0, A = 0.0, B = 0.0, R = 0.0, Mtilde = 0.0;
    double R_quadrature = 0.0;  // R from its defining integral; R holds the closed form
    double A_product = 0.0;     // A from the explicit product formula
};
ModeTermValues split_terms_strip(const SpectralZetaParams& p, long k, double s);

struct DecompositionCheck {
    double residual = 0.0;
    double budget = 0.0;
    double derivative = 0.0;  // d/dt log K_t(u)
    double explicit_terms = 0.0;
    bool skipped = false;
    std::string reason;
};
// d/dt log K_t(u) against asinh(t/u) - t/(2(t^2+u^2)) - d/dt[U_1(p)/t]
DecompositionCheck dlogK_decomposition_check(const SpectralZetaParams& p, long k, double t);
DecompositionCheck dlogK_decomposition_raw(double u, double t);

struct TermDerivatives {
    double dA0 = 0.0;
    double dB0 = 0.0;
    double mtilde_remainder = 0.0;  // -(log K minus its three-term expansion) at T_k
    double dA0_finite_difference = 0.0;
};
TermDerivatives term_derivatives_at_zero(const SpectralZetaParams& p, long k);

struct FamilyValue {
    double value = 0.0;  // contribution to log det
    std::map<std::string, double> diagnostics;
};

struct LogdetOptions {
    int parallelism = 1;
    int hankel_order = 20;
    bool error_estimate = true;  // second pass with shifted cutoffs
};

// contributions of each family to log det = -zeta'(0)
std::map<std::string, FamilyValue> regularized_family_sums(const SpectralZetaParams& p,
                                                           const LogdetOptions& opt = LogdetOptions{});

struct DeterminantReport {
    int schema_version = 1;
    double a = 0.0, alpha = 0.0, mu = 0.0, delta = 0.0;
    double logdet = 0.0;
    std::map<std::string, double> family_contributions;
    double numeric_remainder = 0.0;
    double est_error = 0.0;
    std::map<std::string, double> diagnostics;
    std::string to_json() const;
    static DeterminantReport from_json(const std::string& text);
};

DeterminantReport logdet(const SpectralZetaParams& p, const LogdetOptions& opt = LogdetOptions{});

// Laurent jet of sum_k h_k(s) for one family around s0 (families: "arcsinh", "log", "U1", "R")
jet::Jet family_jet(const SpectralZetaParams& p, const std::string& family, double s0, long near_cutoff = -1);
// the same family term for a single mode, evaluated by the engine's per-mode formula
double family_mode_value(const SpectralZetaParams& p, const std::string& family, long k, double s);
// per-mode value through a forced route: Mellin transform (far = true) or quadrature plus expanded tail
double family_mode_value_route(const SpectralZetaParams& p, const std::string& family, long k, double s, bool far);
// the same family term for a single mode by direct quadrature in t
double family_mode_quadrature(const SpectralZetaParams& p, const std::string& family, long k, double s);

struct StripReassembly {
    double families = 0.0;    // sum over |k| <= K from the family engine
    double direct = 0.0;      // sum over |k| <= K of mode_zeta_strip
    double eig = 0.0;         // zeta_eig over the same modes
    double eig_error = 0.0;
};
// families and direct only; eig fields left at zero
StripReassembly strip_mode_sums(const SpectralZetaParams& p, double s, long K, int parallelism = 1);
StripReassembly strip_reassembly(const SpectralZetaParams& p, double s, long K, double r_max,
                                 int parallelism = 1);

enum class AsymptoticMode { A, Mu };
double asymptotic_formula(const spectrum::Geometry& g, AsymptoticMode mode, double value);

struct ResidualRow {
    double grid_value = 0.0;
    double logdet = 0.0;
    double formula = 0.0;
    double residual = 0.0;
    double est_error = 0.0;
};
struct ResidualReport {
    std::vector<ResidualRow> rows;
    bool monotone_decay = false;
    bool final_within_threshold = false;
    double threshold = 0.0;
    std::string csv() const;
    static ResidualReport from_csv(const std::string& text);
};
// a-mode: grid over a with mu = 0; mu-mode: grid over mu at the given a
ResidualReport residual_report(const spectrum::Geometry& g, AsymptoticMode mode,
                               const std::vector<double>& grid, double delta = 0.06,
                               const LogdetOptions& opt = LogdetOptions{});

}  // namespace cuspdet::zetadet
