#pragma once

#include <string>
#include <vector>

#include "cuspdet/common.hpp"
#include "cuspdet/parallel.hpp"

namespace cuspdet::spectrum {

struct Geometry {
    double a = 1.0;
    double alpha = 0.0;
    void validate() const;
};

struct EigenvalueRecord {
    long k = 0;
    int j = 0;
    double r = 0.0;
    double lambda = 0.0;
    double residual = 0.0;    // |K_{ir}(u_k)| in the scaled normalisation
    double derivative = 0.0;  // d/dnu of the scaled K at the root
    double central_difference = 0.0;
    bool certified = false;   // residual and simplicity criteria both met
};

struct CountReport {
    double lambda = 0.0;
    long N_empirical = 0;
    double weyl_bound = 0.0;
    bool pass = false;
};

double mode_frequency(const Geometry& g, long k);

// scaled K_{i nu}(u) and its nu-derivative with a fixed contour angle, used for root finding
struct ScaledK {
    double value;
    double derivative;
};
ScaledK scaled_imag_K(double nu, double u);

std::vector<EigenvalueRecord> find_mode_zeros(const Geometry& g, long k, double r_max);

// modes are visited in order 0, 1, -1, 2, -2, ...; results sorted by (lambda, k, j)
std::vector<EigenvalueRecord> eigenvalues_up_to(const Geometry& g, double lambda_max, int parallelism = 1);

double weyl_bound(const Geometry& g, double lambda, double delta);
std::vector<CountReport> weyl_check(const Geometry& g, const std::vector<double>& lambdas, double delta,
                                    int parallelism = 1);

// zero counting phase nu acosh(nu/u) - sqrt(nu^2 - u^2) + pi/4 - U1-type correction, for nu > u
double zero_phase(double nu, double u);
double zero_phase_derivative(double nu, double u);

struct Truncation {
    long k_max = 10;     // modes |k| <= k_max
    double r_max = 40.0; // explicit zeros at least up to this ordinate in every mode
};

struct ModeZeta {
    long k = 0;
    double explicit_sum = 0.0;  // sum over found zeros
    double phase_tail = 0.0;    // midpoint Euler-Maclaurin over the phase-predicted remaining zeros
    double tail_error = 0.0;
    int zeros = 0;
    double value() const { return explicit_sum + phase_tail; }
};

// sum_j (lambda_{k,j} + mu)^{-s} for one mode; zeros must cover (0, R] with R well above u
ModeZeta mode_zeta_from_zeros(const std::vector<EigenvalueRecord>& zeros, double u, double mu, double s);
// explicit zeros up to max(r_max, 2u + 40)
double mode_zero_ceiling(double u, double r_max);
ModeZeta mode_zeta_eig(const Geometry& g, long k, double mu, double s, double r_max);

struct ZetaEig {
    double value = 0.0;       // modes |k| <= k_max, zeros plus per-mode phase tails
    double tail_bound = 0.0;  // phase tail error plus the bound on modes |k| > k_max
    double mode_tail_bound = 0.0;
    std::vector<ModeZeta> modes;
};

ZetaEig zeta_eig(const Geometry& g, double mu, double s, const Truncation& tr, int parallelism = 1);

// k,j,r,lambda,residual
std::string eigenvalues_csv(const std::vector<EigenvalueRecord>& ev);
std::vector<EigenvalueRecord> parse_eigenvalues_csv(const std::string& csv);

}  // namespace cuspdet::spectrum
