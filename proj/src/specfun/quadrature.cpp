#include "cuspdet/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cuspdet/common.hpp"

namespace cuspdet::quad {

namespace {

const double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
const double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
const double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Seg {
    double a, b, k, e;
    double floor;  // roundoff part of e
    int level;
};

Seg gk15(const Fn& f, double a, double b, int level)
{
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fc = f(c);
    double resk = fc * wgk[7], resg = fc * wg[3];
    double fv[15];
    fv[14] = fc;
    double resabs = std::fabs(fc) * wgk[7];
    for (int j = 0; j < 7; ++j) {
        double dx = h * xgk[j];
        double f1 = f(c - dx), f2 = f(c + dx);
        fv[2 * j] = f1;
        fv[2 * j + 1] = f2;
        resk += wgk[j] * (f1 + f2);
        resabs += wgk[j] * (std::fabs(f1) + std::fabs(f2));
        if (j % 2 == 1) resg += wg[j / 2] * (f1 + f2);
    }
    double mean = 0.5 * resk;
    double resasc = wgk[7] * std::fabs(fc - mean);
    for (int j = 0; j < 7; ++j) resasc += wgk[j] * (std::fabs(fv[2 * j] - mean) + std::fabs(fv[2 * j + 1] - mean));
    h = std::fabs(h);
    resasc *= h;
    resabs *= h;
    double err = std::fabs((resk - resg) * h);
    // QUADPACK scaling of the Kronrod-Gauss difference, with a roundoff floor
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    double fl = 50.0 * eps * resabs;
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(fl, err);
    return {a, b, resk * h, err, fl, level};
}

}  // namespace

Result gauss_kronrod(const Fn& f, double a, double b, double abs_tol, double rel_tol,
                     int max_depth)
{
    Result r;
    if (a == b) return r;
    const int n0 = 8;
    const int limit = 4000;
    std::vector<Seg> segs;
    segs.reserve(n0 + 2 * limit);
    for (int i = 0; i < n0; ++i) {
        double x0 = a + (b - a) * i / n0, x1 = a + (b - a) * (i + 1) / n0;
        segs.push_back(gk15(f, x0, x1, 0));
        r.evaluations += 15;
    }
    auto worse = [](const Seg& x, const Seg& y) {
        if (x.e != y.e) return x.e < y.e;
        return x.a > y.a;
    };
    auto totals = [&](double& v, double& e, double& fl) {
        KahanSum vs, es, fs;
        for (const auto& sg : segs) {
            vs.add(sg.k);
            es.add(sg.e);
            fs.add(sg.floor);
        }
        v = vs.value();
        e = es.value();
        fl = fs.value();
    };
    // the roundoff floor cannot be bisected away
    auto target = [&](double v, double fl) { return std::max({abs_tol, rel_tol * std::fabs(v), 2.0 * fl}); };
    std::make_heap(segs.begin(), segs.end(), worse);
    double val = 0.0, err = 0.0, fl = 0.0;
    totals(val, err, fl);
    for (int it = 0; it < limit; ++it) {
        if (!std::isfinite(val)) break;
        if (err <= target(val, fl)) break;
        std::pop_heap(segs.begin(), segs.end(), worse);
        Seg w = segs.back();
        double m = 0.5 * (w.a + w.b);
        if (w.level >= max_depth || std::fabs(w.b - w.a) < 1e-14 * (std::fabs(w.a) + std::fabs(w.b))) {
            segs.push_back(w);
            std::push_heap(segs.begin(), segs.end(), worse);
            break;
        }
        segs.pop_back();
        Seg l = gk15(f, w.a, m, w.level + 1), rr = gk15(f, m, w.b, w.level + 1);
        r.evaluations += 30;
        val += l.k + rr.k - w.k;
        err += l.e + rr.e - w.e;
        fl += l.floor + rr.floor - w.floor;
        segs.push_back(l);
        std::push_heap(segs.begin(), segs.end(), worse);
        segs.push_back(rr);
        std::push_heap(segs.begin(), segs.end(), worse);
    }
    std::sort(segs.begin(), segs.end(), [](const Seg& x, const Seg& y) { return x.a < y.a; });
    totals(val, err, fl);
    r.value = val;
    r.error = err;
    r.converged = std::isfinite(val) && err <= target(val, fl);
    return r;
}

namespace {

// slow algebraic decay: panels [a + L(2^j - 1), a + L(2^{j+1} - 1)], remaining tail extrapolated
// from the ratio of consecutive panels
Result geometric_panels(const Fn& f, double a, double L, double abs_tol, double rel_tol, int max_depth)
{
    Result out;
    out.converged = false;
    KahanSum sum;
    double err = 0.0, prev = 0.0, prev_tail = 0.0;
    bool have_tail = false;
    for (int j = 0; j < 1000; ++j) {
        double lo = a + L * (std::ldexp(1.0, j) - 1.0);
        double hi = a + L * (std::ldexp(1.0, j + 1) - 1.0);
        if (!std::isfinite(hi)) break;
        Result p = gauss_kronrod(f, lo, hi, 0.0, rel_tol, max_depth);
        out.evaluations += p.evaluations;
        if (!std::isfinite(p.value)) break;
        sum.add(p.value);
        err += p.error;
        if (j >= 3 && prev != 0.0) {
            double ratio = p.value / prev;
            if (ratio > -1.0 && ratio < 0.95) {
                double tail = p.value * ratio / (1.0 - ratio);
                double target = std::max(abs_tol, rel_tol * std::fabs(sum.value() + tail));
                if (have_tail && std::fabs(tail - prev_tail) <= target && err <= target) {
                    out.value = sum.value() + tail;
                    out.error = err + std::fabs(tail - prev_tail);
                    out.converged = true;
                    return out;
                }
                prev_tail = tail;
                have_tail = true;
            } else {
                have_tail = false;
            }
        }
        prev = p.value;
    }
    out.value = sum.value();
    out.error = err;
    return out;
}

}  // namespace

Result gauss_kronrod_inf(const Fn& f, double a, double abs_tol, double rel_tol, int max_depth)
{
    // scale of the map follows |a|
    const double L = std::max(1.0, std::fabs(a));
    auto g = [&](double u) {
        if (u >= 1.0) return 0.0;
        double w = 1.0 - u;
        double v = f(a + L * u / w);
        return L * v / (w * w);
    };
    Result r = gauss_kronrod(g, 0.0, 1.0, abs_tol, rel_tol, max_depth);
    if (r.converged) return r;
    return geometric_panels(f, a, L, abs_tol, rel_tol, max_depth);
}

namespace {

Rule build_rule(int n)
{
    Rule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) {
                p1 = x;
                p0 = 1.0;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16) break;
        }
        // recompute derivative at converged node
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        r.nodes[i] = x;
        r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

std::vector<Rule> build_table()
{
    std::vector<Rule> t(129);
    for (int n = 2; n <= 128; ++n) t[n] = build_rule(n);
    return t;
}

}  // namespace

const Rule& gauss_legendre(int n)
{
    static const std::vector<Rule> table = build_table();
    if (n < 2 || n > 128) throw DomainError("gauss_legendre: order must be in [2, 128]");
    return table[n];
}

double composite_gl(const Fn& f, double a, double b, int panels, int n)
{
    const Rule& rule = gauss_legendre(n);
    KahanSum s;
    double w = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        double c = a + (p + 0.5) * w, h = 0.5 * w;
        for (int i = 0; i < n; ++i) s.add(h * rule.weights[i] * f(c + h * rule.nodes[i]));
    }
    return s.value();
}

}  // namespace cuspdet::quad

namespace cuspdet::quad {

Result tanh_sinh(const EndpointFn& f, double a, double b, double rel_tol, int max_level)
{
    Result r;
    if (a == b) return r;
    const double L = b - a;
    const double tmax = 6.5;
    auto node = [&](double t, KahanSum& acc) {
        double w = 0.5 * kPi * std::sinh(t);
        double ch = std::cosh(w);
        double dl = L / (1.0 + std::exp(-2.0 * w));
        double dr = L / (1.0 + std::exp(2.0 * w));
        if (dl <= 0.0 || dr <= 0.0) return;
        double x = (dl < dr) ? a + dl : b - dr;
        double wt = 0.5 * L * 0.5 * kPi * std::cosh(t) / (ch * ch);
        double v = f(x, dl, dr);
        ++r.evaluations;
        if (!std::isfinite(v)) {
            r.converged = false;
            return;
        }
        acc.add(wt * v);
    };
    KahanSum sum;
    double h = 0.5;
    node(0.0, sum);
    for (int n = 1; n * h <= tmax; ++n) {
        node(n * h, sum);
        node(-n * h, sum);
    }
    double prev = sum.value() * h;
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        for (int n = 1; n * h <= tmax; n += 2) {
            node(n * h, sum);
            node(-n * h, sum);
        }
        double cur = sum.value() * h;
        r.value = cur;
        r.error = std::fabs(cur - prev);
        if (level >= 3 && r.error <= rel_tol * std::fabs(cur)) return r;
        prev = cur;
    }
    r.converged = r.converged && r.error <= 100.0 * rel_tol * std::fabs(r.value);
    return r;
}

}  // namespace cuspdet::quad
