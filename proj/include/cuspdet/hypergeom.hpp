#pragma once

#include <map>
#include <string>

#include "cuspdet/common.hpp"

namespace cuspdet::hypergeom {

struct HypergeomParams {
    double a = 0.0, b = 0.0, c = 1.0;
    double z = 0.0;
};

// 2F1 on z < 1: series for |z| <= 1/2, Pfaff for z < -1/2, linear transformation on (1/2, 1)
double gauss_2f1(double a, double b, double c, double z,
                 const WorkingPrecision& wp = default_precision());

// raw hypergeometric series, |z| < 1, no region switching
double gauss_2f1_series(double a, double b, double c, double z,
                        const WorkingPrecision& wp = default_precision());

// Euler integral, requires c > b > 0 and z < 1, or z = 1 with c - a - b > 0
double gauss_2f1_euler(double a, double b, double c, double z,
                       const WorkingPrecision& wp = default_precision());

double generalized_3f2(double a1, double a2, double a3, double b1, double b2, double z,
                       const WorkingPrecision& wp = default_precision());

// Gamma(c)Gamma(c-a-b)/(Gamma(c-a)Gamma(c-b))
double gauss_value_at_1(double a, double b, double c);

struct IdentityResidual {
    double residual = 0.0;  // |LHS - RHS|
    double relative = 0.0;  // residual / max(1, size of the terms)
    bool skipped = false;
    std::string reason;
};

// keys: pfaff_a, pfaff_b, linear_transformation, contiguous, extraction_a1,
// extraction_3f2_one, extraction_3f2_two
std::map<std::string, IdentityResidual> identity_residuals(const HypergeomParams& p);

struct TailIntegralCheck {
    double quadrature = 0.0;
    double form_beta = 0.0;   // u^{mu-nu}/(mu-nu) F(nu, nu-mu; nu-mu+1; -1/u) + B(mu, nu-mu)
    double form_euler = 0.0;  // u^mu (1+u)^{-nu} F(nu, 1; mu+1; u/(1+u)) / mu
    bool form_beta_valid = true;
    double max_relative_spread = 0.0;
};

// int_0^u y^{mu-1} (1+y)^{-nu} dy
double tail_integral(double mu, double nu, double u);
TailIntegralCheck tail_integral_check(double mu, double nu, double u);

}  // namespace cuspdet::hypergeom
