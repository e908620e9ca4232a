#include "cuspdet/jet.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cuspdet/common.hpp"
#include "cuspdet/specfun.hpp"

namespace cuspdet::jet {

Jet Jet::constant(double v)
{
    Jet j;
    j.at(0) = v;
    return j;
}

Jet Jet::variable(double s0, double slope)
{
    Jet j;
    j.at(0) = s0;
    j.at(1) = slope;
    return j;
}

int Jet::valuation() const
{
    for (int e = LO; e <= HI; ++e)
        if (c_[e - LO] != 0.0) return e;
    return HI + 1;
}

Jet& Jet::operator+=(const Jet& o)
{
    for (int i = 0; i < N; ++i) c_[i] += o.c_[i];
    hi_ = std::min(hi_, o.hi_);
    return *this;
}

Jet& Jet::operator-=(const Jet& o)
{
    for (int i = 0; i < N; ++i) c_[i] -= o.c_[i];
    hi_ = std::min(hi_, o.hi_);
    return *this;
}

Jet& Jet::operator*=(double v)
{
    for (double& x : c_) x *= v;
    return *this;
}

Jet& Jet::operator+=(double v)
{
    c_[0 - LO] += v;
    return *this;
}

Jet Jet::operator-() const
{
    Jet r = *this;
    r *= -1.0;
    return r;
}

std::string Jet::str() const
{
    std::ostringstream os;
    os.precision(17);
    for (int e = LO; e <= HI; ++e)
        if ((*this)[e] != 0.0) os << "[" << e << "]" << (*this)[e] << " ";
    os << "(valid<=" << hi_ << ")";
    return os.str();
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }
Jet operator+(Jet a, double b) { return a += b; }
Jet operator+(double b, Jet a) { return a += b; }
Jet operator-(Jet a, double b) { return a += -b; }
Jet operator-(double b, const Jet& a) { return (-a) + b; }
Jet operator*(Jet a, double b) { return a *= b; }
Jet operator*(double b, Jet a) { return a *= b; }
Jet operator/(Jet a, double b) { return a *= 1.0 / b; }

Jet operator*(const Jet& a, const Jet& b)
{
    Jet r;
    int va = a.valuation(), vb = b.valuation();
    if (va > Jet::HI || vb > Jet::HI) {
        r.set_hi_valid(std::min(a.hi_valid() + std::min(vb, Jet::HI), b.hi_valid() + std::min(va, Jet::HI)));
        r.set_hi_valid(std::min(r.hi_valid(), Jet::HI));
        return r;
    }
    for (int i = va; i <= Jet::HI; ++i) {
        double ai = a[i];
        if (ai == 0.0) continue;
        for (int j = vb; j <= Jet::HI; ++j) {
            double bj = b[j];
            if (bj == 0.0) continue;
            int e = i + j;
            if (e > Jet::HI) break;
            if (e < Jet::LO) throw NumericError("jet product below lowest tracked order");
            r.at(e) += ai * bj;
        }
    }
    int hi = std::min(a.hi_valid() + vb, b.hi_valid() + va);
    r.set_hi_valid(std::min(hi, Jet::HI));
    return r;
}

Jet inverse(const Jet& b)
{
    int v = b.valuation();
    if (v > Jet::HI) throw NumericError("jet division by zero series");
    // b = eps^v * (b0 + b1 eps + ...)
    int n = b.hi_valid() - v;  // known orders of the regular part
    std::vector<double> bt(std::max(n, 0) + 1, 0.0);
    for (int k = 0; k <= n; ++k) bt[k] = b[v + k];
    std::vector<double> inv(bt.size(), 0.0);
    inv[0] = 1.0 / bt[0];
    for (size_t k = 1; k < bt.size(); ++k) {
        double s = 0.0;
        for (size_t j = 1; j <= k; ++j) s += bt[j] * inv[k - j];
        inv[k] = -s / bt[0];
    }
    Jet r;
    for (size_t k = 0; k < inv.size(); ++k) {
        int e = static_cast<int>(k) - v;
        if (e > Jet::HI) break;
        if (e < Jet::LO) throw NumericError("jet inverse: pole order too high");
        r.at(e) = inv[k];
    }
    r.set_hi_valid(std::min(Jet::HI, n - v));
    return r;
}

Jet operator/(const Jet& a, const Jet& b) { return a * inverse(b); }
Jet operator/(double a, const Jet& b) { return inverse(b) * a; }

Jet compose(const std::vector<double>& taylor, const Jet& d)
{
    if (d.valuation() < 1) throw NumericError("jet compose: increment must have no constant/pole part");
    Jet r = Jet::constant(taylor.empty() ? 0.0 : taylor[0]);
    Jet p = Jet::constant(1.0);
    for (size_t n = 1; n < taylor.size(); ++n) {
        p = p * d;
        if (p.valuation() > Jet::HI) break;
        Jet t = p;
        t *= taylor[n];
        r += t;
    }
    r.set_hi_valid(std::min(Jet::HI, d.hi_valid()));
    return r;
}

namespace {

Jet increment(const Jet& x)
{
    Jet d = x;
    d.at(0) = 0.0;
    return d;
}

void require_regular(const Jet& x, const char* who)
{
    if (x.valuation() < 0) throw NumericError(std::string(who) + ": argument has a pole");
}

}  // namespace

Jet exp(const Jet& x)
{
    require_regular(x, "jet exp");
    double e0 = std::exp(x[0]);
    std::vector<double> t(Jet::HI + 1);
    double f = 1.0;
    for (int n = 0; n <= Jet::HI; ++n) {
        if (n > 0) f /= n;
        t[n] = e0 * f;
    }
    return compose(t, increment(x));
}

Jet log(const Jet& x)
{
    require_regular(x, "jet log");
    double x0 = x[0];
    if (!(x0 > 0.0)) throw NumericError("jet log: non-positive constant term");
    std::vector<double> t(Jet::HI + 1);
    t[0] = std::log(x0);
    double p = 1.0;
    for (int n = 1; n <= Jet::HI; ++n) {
        p /= x0;
        t[n] = ((n % 2 == 1) ? 1.0 : -1.0) * p / n;
    }
    return compose(t, increment(x));
}

Jet pow(double base, const Jet& e)
{
    if (!(base > 0.0)) throw NumericError("jet pow: base must be positive");
    return exp(e * std::log(base));
}

Jet pow(const Jet& base, const Jet& e) { return exp(e * log(base)); }

Jet powi(const Jet& base, int n)
{
    if (n < 0) return inverse(powi(base, -n));
    Jet r = Jet::constant(1.0), b = base;
    while (n > 0) {
        if (n & 1) r = r * b;
        b = b * b;
        n >>= 1;
    }
    return r;
}

Jet sinpi(const Jet& x)
{
    require_regular(x, "jet sinpi");
    double s0 = specfun::sinpi(x[0]), c0 = specfun::cospi(x[0]);
    std::vector<double> t(Jet::HI + 1);
    double f = 1.0;
    for (int n = 0; n <= Jet::HI; ++n) {
        if (n > 0) f *= kPi / n;
        double d;
        switch (n % 4) {
        case 0: d = s0; break;
        case 1: d = c0; break;
        case 2: d = -s0; break;
        default: d = -c0; break;
        }
        t[n] = d * f;
    }
    return compose(t, increment(x));
}

Jet cospi(const Jet& x) { return sinpi(x + 0.5); }

Jet gamma(const Jet& x)
{
    require_regular(x, "jet gamma");
    double x0 = x[0];
    if (x0 < 0.5) {
        // Gamma(x) Gamma(1-x) = pi / sin(pi x)
        Jet s = sinpi(x);
        return kPi / (s * gamma(1.0 - x));
    }
    std::vector<double> t(Jet::HI + 1);
    t[0] = specfun::log_gamma_abs(x0);
    double f = 1.0;
    for (int n = 1; n <= Jet::HI; ++n) {
        f *= n;
        t[n] = specfun::polygamma(n - 1, x0) / f;
    }
    return exp(compose(t, increment(x)));
}

Jet rgamma(const Jet& x)
{
    require_regular(x, "jet rgamma");
    double x0 = x[0];
    if (x0 < 0.5) return sinpi(x) * gamma(1.0 - x) / kPi;
    return inverse(gamma(x));
}

Jet pochhammer(const Jet& x, int n)
{
    Jet r = Jet::constant(1.0);
    for (int i = 0; i < n; ++i) r = r * (x + static_cast<double>(i));
    return r;
}

Jet binomial(const Jet& x, int n)
{
    Jet r = Jet::constant(1.0);
    for (int i = 0; i < n; ++i) {
        r = r * (x - static_cast<double>(i));
        r *= 1.0 / (i + 1);
    }
    return r;
}

Jet hurwitz(const Jet& w, double q)
{
    require_regular(w, "jet hurwitz");
    if (!(q > 0.0)) throw DomainError("hurwitz zeta: q must be > 0");
    const int p = 15;
    double w0 = w[0];
    int nsum = static_cast<int>(std::ceil(std::max(0.0, std::fabs(w0) + 20.0 - q)));
    Jet acc;
    for (int n = 0; n < nsum; ++n) acc += exp(-w * std::log(n + q));
    double big = nsum + q;
    double lb = std::log(big);
    Jet pw = exp(-w * lb);  // big^{-w}
    Jet wm1 = w - 1.0;
    acc += pw * big / wm1;
    acc += pw * 0.5;
    // B_2k/(2k)! (w)_{2k-1} big^{-w-2k+1}
    Jet poch = w;  // (w)_1
    double inv = 1.0 / big;
    double bp = inv;  // big^{-(2k-1)}
    double fact = 2.0;  // (2k)!
    for (int k = 1; k <= p; ++k) {
        Jet term = poch * pw;
        term *= specfun::bernoulli_b2k(k) / fact * bp;
        acc += term;
        poch = poch * (w + (2.0 * k - 1.0)) * (w + 2.0 * k);
        bp *= inv * inv;
        fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
    }
    return acc;
}

}  // namespace cuspdet::jet
