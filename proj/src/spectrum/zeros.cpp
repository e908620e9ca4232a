#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <sstream>

#include "cuspdet/specfun.hpp"
#include "cuspdet/spectrum.hpp"

namespace cuspdet::spectrum {

namespace {

constexpr double kResidualTol = 1e-10;

struct Bracket {
    double lo, hi;
    double vlo, vhi;
};

double value_at(double nu, double u) { return specfun::bessel_K_imag_order_scaled(nu, u).scaled; }

bool sign_change(double a, double b) { return (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0); }

// look for hidden sign changes in [lo, hi] around a local minimum of |K|
void refine_cell(double lo, double hi, double u, int depth, std::vector<Bracket>& out)
{
    const int n = 20;
    std::vector<double> nu(n + 1), v(n + 1);
    for (int i = 0; i <= n; ++i) {
        nu[i] = lo + (hi - lo) * i / n;
        v[i] = value_at(nu[i], u);
    }
    bool found = false;
    for (int i = 0; i < n; ++i) {
        if (v[i] == 0.0) continue;
        if (sign_change(v[i], v[i + 1])) {
            out.push_back({nu[i], nu[i + 1], v[i], v[i + 1]});
            found = true;
        }
    }
    if (found) return;
    for (int i = 1; i < n; ++i) {
        double m = std::fabs(v[i]);
        if (m < std::fabs(v[i - 1]) && m <= std::fabs(v[i + 1]) &&
            m < 0.2 * std::max(std::fabs(v[i - 1]), std::fabs(v[i + 1]))) {
            if (depth <= 0) {
                if (m < 1e-6 * std::max(std::fabs(v[i - 1]), std::fabs(v[i + 1])))
                    throw NumericError("find_mode_zeros: unresolved near-double zero at nu ~ " + std::to_string(nu[i]));
                continue;
            }
            refine_cell(nu[i - 1], nu[i + 1], u, depth - 1, out);
        }
    }
}

}  // namespace

void Geometry::validate() const
{
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("geometry: requires a > 0");
    if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("geometry: requires 0 <= alpha < 1");
}

double mode_frequency(const Geometry& g, long k)
{
    g.validate();
    if (g.alpha == 0.0 && k == 0) throw DomainError("mode k = 0 is excluded when alpha = 0");
    return 2.0 * kPi * std::fabs(static_cast<double>(k) + g.alpha) * g.a;
}

ScaledK scaled_imag_K(double nu, double u)
{
    auto r = specfun::bessel_K_imag_order_scaled(nu, u);
    return {r.scaled, r.dscaled};
}

std::vector<EigenvalueRecord> find_mode_zeros(const Geometry& g, long k, double r_max)
{
    if (!(r_max > 0.0)) throw DomainError("find_mode_zeros: requires r_max > 0");
    const double u = mode_frequency(g, k);
    std::vector<EigenvalueRecord> out;
    // zeros of nu -> K_{i nu}(u) lie in nu > u
    if (r_max <= u) return out;
    const double step = std::min(0.05, u / 100.0);
    const long n = static_cast<long>(std::ceil(r_max / step));
    std::vector<double> nu(n + 1), v(n + 1);
    for (long i = 0; i <= n; ++i) {
        nu[i] = std::min(i * step, r_max);
        v[i] = value_at(nu[i], u);
    }
    std::vector<Bracket> br;
    for (long i = 0; i < n; ++i) {
        if (sign_change(v[i], v[i + 1])) {
            br.push_back({nu[i], nu[i + 1], v[i], v[i + 1]});
        } else if (i > 0) {
            double m = std::fabs(v[i]);
            if (m < std::fabs(v[i - 1]) && m <= std::fabs(v[i + 1]) &&
                m < 0.2 * std::max(std::fabs(v[i - 1]), std::fabs(v[i + 1])))
                refine_cell(nu[i - 1], nu[i + 1], u, 3, br);
        }
        if (v[i + 1] == 0.0) throw NumericError("find_mode_zeros: grid point hit a zero exactly");
    }
    std::sort(br.begin(), br.end(), [](const Bracket& x, const Bracket& y) { return x.lo < y.lo; });
    int j = 0;
    double prev = 0.0;
    for (const auto& b : br) {
        if (b.lo < prev) continue;  // duplicate from refinement
        boost::uintmax_t iters = 200;
        auto f = [u](double x) { return value_at(x, u); };
        auto tol = boost::math::tools::eps_tolerance<double>(52);
        auto res = boost::math::tools::toms748_solve(f, b.lo, b.hi, b.vlo, b.vhi, tol, iters);
        double r = 0.5 * (res.first + res.second);
        if (!(r > b.lo && r < b.hi)) throw NumericError("find_mode_zeros: root left its bracket");
        ScaledK sk = scaled_imag_K(r, u);
        double h = 1e-6 * std::max(1.0, r);
        double cd = (value_at(r + h, u) - value_at(r - h, u)) / (2.0 * h);
        EigenvalueRecord rec;
        rec.k = k;
        rec.j = ++j;
        rec.r = r;
        rec.lambda = 0.25 + r * r;
        rec.residual = std::fabs(sk.value);
        rec.derivative = sk.derivative;
        rec.central_difference = cd;
        double tol_r = kResidualTol * std::max(1.0, std::fabs(sk.derivative) * r);
        rec.certified = rec.residual <= tol_r && std::fabs(cd) > 10.0 * tol_r && r > 0.0;
        out.push_back(rec);
        prev = b.hi;
    }
    return out;
}

std::vector<EigenvalueRecord> eigenvalues_up_to(const Geometry& g, double lambda_max, int parallelism)
{
    g.validate();
    if (!(lambda_max > 0.25)) throw DomainError("eigenvalues_up_to: requires lambda_max > 1/4");
    const double r_max = std::sqrt(lambda_max - 0.25);
    std::vector<EigenvalueRecord> all;
    // |k| levels; level 0 only when alpha != 0
    auto level_modes = [&](long level) {
        std::vector<long> ks;
        if (level == 0) {
            if (g.alpha != 0.0) ks.push_back(0);
        } else {
            ks.push_back(level);
            ks.push_back(-level);
        }
        return ks;
    };
    int empty_run = 0;
    const long batch = std::max(1, parallelism);
    for (long level = 0;; level += batch) {
        std::vector<long> ks;
        std::vector<long> lv;
        for (long l = level; l < level + batch; ++l)
            for (long k : level_modes(l)) {
                ks.push_back(k);
                lv.push_back(l);
            }
        auto res = parallel_map<std::vector<EigenvalueRecord>>(
            ks.size(), parallelism, [&](size_t i) { return find_mode_zeros(g, ks[i], r_max); });
        bool stop = false;
        for (long l = level; l < level + batch && !stop; ++l) {
            bool empty = true;
            double umin = INFINITY;
            for (size_t i = 0; i < ks.size(); ++i) {
                if (lv[i] != l) continue;
                umin = std::min(umin, mode_frequency(g, ks[i]));
                if (!res[i].empty()) empty = false;
                all.insert(all.end(), res[i].begin(), res[i].end());
            }
            if (level_modes(l).empty()) continue;
            empty_run = empty ? empty_run + 1 : 0;
            // every later mode has u > r_max, hence no zero below r_max
            if (empty_run >= 3 && umin > r_max) stop = true;
        }
        if (stop) break;
        if (level > 100000) throw NumericError("eigenvalues_up_to: mode cutoff not reached");
    }
    std::sort(all.begin(), all.end(), [](const EigenvalueRecord& x, const EigenvalueRecord& y) {
        if (x.lambda != y.lambda) return x.lambda < y.lambda;
        if (x.k != y.k) return x.k < y.k;
        return x.j < y.j;
    });
    return all;
}

double weyl_bound(const Geometry& g, double lambda, double delta)
{
    if (!(delta > 0.0)) throw DomainError("weyl_bound: requires delta > 0");
    if (!(lambda > 1.0)) throw DomainError("weyl_bound: requires lambda > 1");
    double sl = std::sqrt(lambda);
    return sl / (kPi * g.a) + (5.0 + delta / g.a) * lambda / (4.0 * kPi * g.a) +
           sl * std::log(lambda) / (2.0 * kPi * delta);
}

std::vector<CountReport> weyl_check(const Geometry& g, const std::vector<double>& lambdas, double delta,
                                    int parallelism)
{
    std::vector<CountReport> out;
    if (lambdas.empty()) return out;
    double lmax = *std::max_element(lambdas.begin(), lambdas.end());
    auto ev = eigenvalues_up_to(g, lmax, parallelism);
    for (double l : lambdas) {
        CountReport c;
        c.lambda = l;
        c.N_empirical = std::count_if(ev.begin(), ev.end(), [l](const EigenvalueRecord& e) { return e.lambda <= l; });
        c.weyl_bound = weyl_bound(g, l, delta);
        c.pass = static_cast<double>(c.N_empirical) <= c.weyl_bound;
        out.push_back(c);
    }
    return out;
}

std::string eigenvalues_csv(const std::vector<EigenvalueRecord>& ev)
{
    std::ostringstream os;
    os.precision(17);
    os << "k,j,r,lambda,residual\n";
    for (const auto& e : ev) os << e.k << ',' << e.j << ',' << e.r << ',' << e.lambda << ',' << e.residual << '\n';
    return os.str();
}

std::vector<EigenvalueRecord> parse_eigenvalues_csv(const std::string& csv)
{
    std::istringstream is(csv);
    std::string line;
    std::vector<EigenvalueRecord> out;
    if (!std::getline(is, line) || line != "k,j,r,lambda,residual")
        throw DomainError("eigenvalue CSV: unexpected header");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string f[5];
        for (auto& x : f)
            if (!std::getline(ls, x, ',')) throw DomainError("eigenvalue CSV: short row");
        EigenvalueRecord e;
        e.k = std::stol(f[0]);
        e.j = std::stoi(f[1]);
        e.r = std::stod(f[2]);
        e.lambda = std::stod(f[3]);
        e.residual = std::stod(f[4]);
        out.push_back(e);
    }
    return out;
}

}  // namespace cuspdet::spectrum
