#include "recip/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace recip {

const GaussRule& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard lk(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        long double x = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (n + 0.5L));
        long double dp = 0;
        for (int it2 = 0; it2 < 100; ++it2) {
            long double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1;
            dp = n * (x * p1 - p0) / (x * x - 1);
            long double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-19L) break;
        }
        long double p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k) {
            long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        long double w = 2 / ((1 - x * x) * dp * dp);
        r.x[i] = static_cast<double>(-x);
        r.x[n - 1 - i] = static_cast<double>(x);
        r.w[i] = r.w[n - 1 - i] = static_cast<double>(w);
    }
    if (n % 2 == 1) r.x[n / 2] = 0.0;
    return cache.emplace(n, std::move(r)).first->second;
}

void NodeSet::add_panel(double a, double b, int n) {
    const GaussRule& g = gauss_legendre(n);
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        x.push_back(c + h * g.x[i]);
        w.push_back(h * g.w[i]);
    }
}

void NodeSet::add_uniform(double a, double b, int panels, int n) {
    const double h = (b - a) / panels;
    for (int i = 0; i < panels; ++i) add_panel(a + i * h, a + (i + 1) * h, n);
}

cplx integrate(const RealToComplex& f, const NodeSet& nodes) {
    cplx s = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += nodes.w[i] * f(nodes.x[i]);
    return s;
}

cplx gauss_panels(const RealToComplex& f, double a, double b, int panels, int n) {
    NodeSet ns;
    ns.add_uniform(a, b, panels, n);
    return integrate(f, ns);
}

namespace {

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Seg {
    double a, b;
    cplx val;
    double err;
    int depth;
};

Seg gk15(const RealToComplex& f, double a, double b, int depth, long& evals) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx fc = f(c);
    cplx k = fc * kWgk[7], g = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        cplx f1 = f(c - h * kXgk[j]), f2 = f(c + h * kXgk[j]);
        k += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) g += kWg[j / 2] * (f1 + f2);
    }
    evals += 15;
    return {a, b, k * h, std::abs((k - g) * h), depth};
}

}  // namespace

QuadResult gauss_kronrod(const RealToComplex& f, double a, double b, double abs_tol, double rel_tol,
                         int max_depth) {
    QuadResult res;
    std::vector<Seg> work{gk15(f, a, b, 0, res.evals)};
    std::vector<Seg> done;
    cplx total = work[0].val;
    double err = work[0].err;
    while (!work.empty()) {
        const double tol = std::max(abs_tol, rel_tol * std::abs(total));
        if (err <= tol) break;
        // bisect the worst segment
        std::size_t worst = 0;
        for (std::size_t i = 1; i < work.size(); ++i)
            if (work[i].err > work[worst].err) worst = i;
        Seg s = work[worst];
        work.erase(work.begin() + static_cast<long>(worst));
        if (s.depth >= max_depth || s.err < 1e-3 * tol / (1 + static_cast<double>(work.size()))) {
            done.push_back(s);
            if (s.depth >= max_depth) res.converged = false;
            continue;
        }
        const double m = 0.5 * (s.a + s.b);
        Seg l = gk15(f, s.a, m, s.depth + 1, res.evals), r = gk15(f, m, s.b, s.depth + 1, res.evals);
        total += l.val + r.val - s.val;
        err += l.err + r.err - s.err;
        work.push_back(l);
        work.push_back(r);
    }
    cplx v = 0;
    double e = 0;
    for (const Seg& s : work) v += s.val, e += s.err;
    for (const Seg& s : done) v += s.val, e += s.err;
    res.value = v;
    res.error = e;
    if (e > std::max(abs_tol, rel_tol * std::abs(v))) res.converged = false;
    return res;
}

QuadResult tanh_sinh(const std::function<cplx(double, double)>& f, double a, double b, double rel_tol,
                     int max_level) {
    QuadResult res;
    const double c = 0.5 * (a + b), h2 = 0.5 * (b - a);
    const double hpi = std::numbers::pi / 2;
    auto node = [&](double t, cplx& acc) {
        double sh = std::sinh(t), ch = std::cosh(t);
        double u = hpi * sh;
        double e = std::exp(-2 * std::abs(u));
        double th = (1 - e) / (1 + e) * (u < 0 ? -1 : 1);
        double dist = h2 * 2 * e / (1 + e);  // distance from the nearer endpoint
        double w = hpi * ch / (std::cosh(u) * std::cosh(u));
        if (dist <= 0 || !(w > 0)) return;
        double x = c + h2 * th;
        acc += w * f(x, dist);
        ++res.evals;
    };
    double h = 1.0;
    const double tmax = 4.0;
    cplx sum = 0;
    node(0.0, sum);
    for (double t = h; t <= tmax; t += h) {
        node(t, sum);
        node(-t, sum);
    }
    cplx prev = sum * h * h2;
    for (int lev = 1; lev <= max_level; ++lev) {
        h /= 2;
        for (double t = h; t <= tmax; t += 2 * h) {
            node(t, sum);
            node(-t, sum);
        }
        cplx cur = sum * h * h2;
        res.error = std::abs(cur - prev);
        res.value = cur;
        if (lev >= 3 && res.error <= rel_tol * std::abs(cur)) return res;
        prev = cur;
    }
    res.converged = res.error <= rel_tol * std::abs(res.value);
    return res;
}

}  // namespace recip
