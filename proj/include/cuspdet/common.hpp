#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace cuspdet {

// invalid input: bad geometry, out-of-domain argument, pole
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// non-convergence, unresolved roots, failed precondition of an asymptotic regime
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

struct WorkingPrecision {
    double relative_target = 1e-12;
    int max_refinement_steps = 50;

    void validate() const;
};

// process default, overridable through CUSPDET_PRECISION
const WorkingPrecision& default_precision();

struct CertifiedValue {
    double value = 0.0;
    double abs_error_bound = 0.0;
};

// Neumaier summation
class KahanSum {
public:
    void add(double x)
    {
        double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    KahanSum& operator+=(double x)
    {
        add(x);
        return *this;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_sum(const std::vector<double>& v)
{
    KahanSum s;
    for (double x : v) s.add(x);
    return s.value();
}

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kEulerGamma = 0.577215664901532860606512090082402431;

}  // namespace cuspdet
