#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <sstream>

#include "cuspdet/quadrature.hpp"
#include "cuspdet/specfun.hpp"
#include "json.hpp"

namespace cuspdet::specfun {

namespace {

using Q = boost::multiprecision::cpp_rational;
using Poly = std::vector<Q>;  // coefficient of t^i at index i

Poly trim(Poly p)
{
    while (p.size() > 1 && p.back() == 0) p.pop_back();
    return p;
}

Poly derivative(const Poly& p)
{
    Poly d(std::max<size_t>(p.size(), 2) - 1, Q(0));
    for (size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<int>(i);
    return trim(d);
}

Poly integral0(const Poly& p)
{
    Poly r(p.size() + 1, Q(0));
    for (size_t i = 0; i < p.size(); ++i) r[i + 1] = p[i] / static_cast<int>(i + 1);
    return trim(r);
}

Poly mul(const Poly& a, const Poly& b)
{
    Poly r(a.size() + b.size() - 1, Q(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return trim(r);
}

Poly add(const Poly& a, const Poly& b)
{
    Poly r(std::max(a.size(), b.size()), Q(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return trim(r);
}

Poly scale(const Poly& a, const Q& s)
{
    Poly r = a;
    for (auto& c : r) c *= s;
    return trim(r);
}

// one step of the recursion with weight w(x) inside the integral
Poly u_step(const Poly& uk, bool weighted)
{
    Poly half_t2_1mt2 = {Q(0), Q(0), Q(1, 2), Q(0), Q(-1, 2)};
    Poly w = weighted ? Poly{Q(1), Q(0), Q(-5)} : Poly{Q(1)};
    Poly a = mul(half_t2_1mt2, derivative(uk));
    Poly b = scale(integral0(mul(w, uk)), Q(1, 8));
    return add(a, b);
}

std::string qstr(const Q& q)
{
    std::ostringstream os;
    os << q;
    return os.str();
}

PolynomialSeq to_seq(char kind, int k, const Poly& p)
{
    PolynomialSeq s;
    s.kind = kind;
    s.degree_index = k;
    for (const auto& c : p) {
        s.coefficients.push_back(qstr(c));
        s.values.push_back(static_cast<double>(c));
    }
    return s;
}

std::vector<Poly> u_polys(int n, bool weighted)
{
    std::vector<Poly> u{Poly{Q(1)}};
    for (int k = 0; k < n; ++k) u.push_back(u_step(u[k], weighted));
    return u;
}

}  // namespace

double PolynomialSeq::eval(double t) const
{
    double r = 0.0;
    for (size_t i = values.size(); i-- > 0;) r = r * t + values[i];
    return r;
}

double PolynomialSeq::deriv(double t) const
{
    double r = 0.0;
    for (size_t i = values.size(); i-- > 1;) r = r * t + values[i] * static_cast<double>(i);
    return r;
}

std::vector<std::string> u_recursion_residuals(int n, bool weighted)
{
    // U_k generated by the weighted (Olver) form; residual measured against the chosen form
    std::vector<Poly> u = u_polys(n + 1, true);
    std::vector<std::string> out;
    for (int k = 0; k < n; ++k) {
        Poly r = add(u[k + 1], scale(u_step(u[k], weighted), Q(-1)));
        std::ostringstream os;
        bool first = true;
        for (size_t i = 0; i < r.size(); ++i) {
            if (r[i] == 0) continue;
            if (!first) os << " + ";
            os << "(" << r[i] << ")t^" << i;
            first = false;
        }
        out.push_back(first ? "0" : os.str());
    }
    return out;
}

AsymptoticPolynomials asymptotic_polynomials(int n)
{
    if (n < 0) throw DomainError("asymptotic_polynomials: n must be >= 0");
    AsymptoticPolynomials ap;
    std::vector<Poly> u = u_polys(n, true);
    for (int k = 0; k <= n; ++k) ap.U.push_back(to_seq('U', k, u[k]));
    // A_k(nu) = prod_{j=1..k} (4 nu^2 - (2j-1)^2) / (8^k k!)
    Poly a{Q(1)};
    for (int k = 0; k <= n; ++k) {
        if (k > 0) {
            int odd = 2 * k - 1;
            a = mul(a, Poly{Q(-odd * odd), Q(0), Q(4)});
            a = scale(a, Q(1, 8 * k));
        }
        ap.A.push_back(to_seq('A', k, a));
    }
    // total variation on [0,1]: integrate |U_k'| piecewise between sign changes of U_k'
    for (int k = 0; k <= n; ++k) {
        const PolynomialSeq& p = ap.U[k];
        const int grid = 2000;
        std::vector<double> cuts{0.0};
        double prev = p.deriv(0.0);
        for (int i = 1; i <= grid; ++i) {
            double t = static_cast<double>(i) / grid;
            double d = p.deriv(t);
            if ((prev < 0 && d > 0) || (prev > 0 && d < 0)) {
                double lo = static_cast<double>(i - 1) / grid, hi = t;
                for (int it = 0; it < 100; ++it) {
                    double m = 0.5 * (lo + hi);
                    if ((p.deriv(lo) < 0) == (p.deriv(m) < 0)) lo = m; else hi = m;
                }
                cuts.push_back(0.5 * (lo + hi));
            }
            prev = d;
        }
        cuts.push_back(1.0);
        double v = 0.0;
        for (size_t i = 0; i + 1 < cuts.size(); ++i)
            v += std::fabs(p.eval(cuts[i + 1]) - p.eval(cuts[i]));
        // quadrature of |U'| as the stated definition; must agree with the piecewise sum
        double vq = 0.0;
        for (size_t i = 0; i + 1 < cuts.size(); ++i) {
            auto r = quad::gauss_kronrod([&](double t) { return std::fabs(p.deriv(t)); }, cuts[i],
                                         cuts[i + 1], 1e-15, 1e-14);
            vq += r.value;
        }
        if (std::fabs(v - vq) > 1e-10 * std::max(1.0, v))
            throw NumericError("total variation quadrature disagrees with piecewise sum");
        ap.V01.push_back(vq);
    }
    ap.V01_U1 = (n >= 1) ? ap.V01[1] : 0.0;
    return ap;
}

std::string asymptotic_polynomials_json(const AsymptoticPolynomials& ap)
{
    nlohmann::json j;
    j["schema_version"] = 1;
    auto dump = [](const std::vector<PolynomialSeq>& v) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& p : v) arr.push_back({{"k", p.degree_index}, {"coefficients", p.coefficients}});
        return arr;
    };
    j["U"] = dump(ap.U);
    j["A"] = dump(ap.A);
    j["V01"] = ap.V01;
    return j.dump(2);
}

double debye_p(double z) { return 1.0 / std::sqrt(1.0 + z * z); }

double debye_xi(double z)
{
    if (!(z > 0.0)) throw DomainError("xi: requires z > 0");
    // sqrt(1+z^2) + log(z/(1+sqrt(1+z^2))) = sqrt(1+z^2) - asinh(1/z)
    return std::sqrt(1.0 + z * z) - std::asinh(1.0 / z);
}

std::vector<std::vector<double>> hankel_log_coefficients(int nmax)
{
    // A_j as polynomials in X = nu^2
    using P = std::vector<double>;
    std::vector<P> A(nmax + 1);
    A[0] = P{1.0};
    for (int j = 1; j <= nmax; ++j) {
        double odd = 2.0 * j - 1.0;
        P prev = A[j - 1];
        P cur(prev.size() + 1, 0.0);
        for (size_t i = 0; i < prev.size(); ++i) {
            cur[i] += -odd * odd * prev[i] / (8.0 * j);
            cur[i + 1] += 4.0 * prev[i] / (8.0 * j);
        }
        A[j] = cur;
    }
    auto pmul = [](const P& a, const P& b) {
        P r(a.size() + b.size() - 1, 0.0);
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t k = 0; k < b.size(); ++k) r[i + k] += a[i] * b[k];
        return r;
    };
    // n l_n = n a_n - sum_{k=1}^{n-1} k l_k a_{n-k}
    std::vector<P> l(nmax + 1);
    for (int n = 1; n <= nmax; ++n) {
        P acc = A[n];
        for (auto& c : acc) c *= n;
        for (int k = 1; k < n; ++k) {
            P t = pmul(l[k], A[n - k]);
            if (t.size() > acc.size()) acc.resize(t.size(), 0.0);
            for (size_t i = 0; i < t.size(); ++i) acc[i] -= k * t[i];
        }
        for (auto& c : acc) c /= n;
        l[n] = acc;
    }
    l.erase(l.begin());
    return l;
}

}  // namespace cuspdet::specfun
