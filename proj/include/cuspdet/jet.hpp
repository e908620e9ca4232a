#pragma once

#include <array>
#include <string>
#include <vector>

namespace cuspdet::jet {

// Truncated Laurent series in eps = s - s0, exponents LO..HI.
// Coefficients above hi_valid are not trustworthy (truncation of a pole product).
class Jet {
public:
    static constexpr int LO = -4;
    static constexpr int HI = 7;
    static constexpr int N = HI - LO + 1;

    Jet() { c_.fill(0.0); }
    static Jet constant(double v);
    static Jet variable(double s0, double slope = 1.0);  // s0 + slope*eps

    double operator[](int e) const { return (e < LO || e > HI) ? 0.0 : c_[e - LO]; }
    double& at(int e) { return c_[e - LO]; }
    int valuation() const;  // lowest nonzero exponent, HI+1 if zero
    int hi_valid() const { return hi_; }
    void set_hi_valid(int h) { hi_ = h; }
    bool is_zero() const { return valuation() > HI; }
    double value() const { return (*this)[0]; }

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(double v);
    Jet& operator+=(double v);
    Jet operator-() const;

    std::string str() const;

private:
    std::array<double, N> c_;
    int hi_ = HI;
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator+(Jet a, double b);
Jet operator+(double b, Jet a);
Jet operator-(Jet a, double b);
Jet operator-(double b, const Jet& a);
Jet operator*(const Jet& a, const Jet& b);
Jet operator*(Jet a, double b);
Jet operator*(double b, Jet a);
Jet operator/(const Jet& a, const Jet& b);
Jet operator/(Jet a, double b);
Jet operator/(double a, const Jet& b);

Jet inverse(const Jet& b);
Jet exp(const Jet& x);
Jet log(const Jet& x);                  // x regular with positive constant term
Jet pow(double base, const Jet& e);     // base > 0
Jet pow(const Jet& base, const Jet& e); // base regular, positive constant term
Jet powi(const Jet& base, int n);
Jet sinpi(const Jet& x);
Jet cospi(const Jet& x);
Jet gamma(const Jet& x);                // handles poles through reflection
Jet rgamma(const Jet& x);               // 1/Gamma, entire
Jet pochhammer(const Jet& x, int n);
Jet binomial(const Jet& x, int n);      // x(x-1)...(x-n+1)/n!
// Hurwitz zeta by Euler-Maclaurin carried out in series arithmetic; pole at w=1 included
Jet hurwitz(const Jet& w, double q);

// f(x0 + d) from Taylor coefficients taylor[n] = f^(n)(x0)/n!, d without constant term
Jet compose(const std::vector<double>& taylor, const Jet& d);

}  // namespace cuspdet::jet
