#include "recip/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace recip {

namespace {

constexpr double kPi = std::numbers::pi;
const double kLog2Pi = std::log(2 * kPi);
const cplx kI(0, 1);

cplx i_pow_neg(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return 1.0;
        case 1: return -kI;
        case 2: return -1.0;
        default: return kI;
    }
}

cplx e_of(double x) { return std::polar(1.0, 2 * kPi * x); }

cplx safe_tanh(cplx z) {
    if (z.real() > 20) return 1.0;
    if (z.real() < -20) return -1.0;
    return std::tanh(z);
}

// (2 pi)^{-S} cos(pi S / 2) Gamma(S/2 + ir) Gamma(S/2 - ir), all in log space.
cplx jplus_closed(double r, cplx S, bool fast) {
    const cplx a = S / 2.0 + kI * r, b = S / 2.0 - kI * r;
    cplx lg = fast ? lgamma_fast(a) + lgamma_fast(b) : cplx(lgamma_l(cplxl(a)) + lgamma_l(cplxl(b)));
    if (std::abs(S.imag()) < 30) return std::exp(lg - S * kLog2Pi) * std::cos(kPi * S / 2.0);
    return std::exp(lg - S * kLog2Pi + cplx(log_cos_half_pi(cplxl(S))));
}

// Panels for the r-integral of the spectral Mellin transform: base width plus a refined
// window around |Im S| / 2, where Gamma(S/2 - ir) has a pole at distance Re S / 2 from the axis.
NodeSet spectral_r_nodes(double lo, double hi, double y, double base, int n) {
    // beyond y + 15 the kernel is below e^{-15 pi} of its size near y
    hi = std::max(lo, std::min(hi, y + 15.0));
    std::vector<double> br;
    for (double x = lo; x < hi; x += base) br.push_back(x);
    br.push_back(hi);
    const double a = std::max(lo, y - 3.0), b = std::min(hi, y + 3.0);
    if (a < b) {
        std::vector<double> keep;
        for (double x : br)
            if (x < a || x > b) keep.push_back(x);
        for (double x = y - 3.0; x < y + 3.0 - 1e-9;) {
            if (x >= a && x <= b) keep.push_back(x);
            x += std::abs(x - y) < 0.6 - 1e-9 ? 0.05 : 0.3;
        }
        keep.push_back(a);
        keep.push_back(b);
        std::sort(keep.begin(), keep.end());
        br.clear();
        for (double x : keep)
            if (br.empty() || x - br.back() > 1e-9) br.push_back(x);
    }
    NodeSet ns;
    for (std::size_t i = 0; i + 1 < br.size(); ++i) ns.add_panel(br[i], br[i + 1], n);
    return ns;
}

}  // namespace

cplx spectral_mellin(const TestFunctionPair& p, cplx S, bool fast, double base, int n) {
    auto [lo, hi] = p.maass_support();
    const NodeSet ns = spectral_r_nodes(lo, hi, std::abs(S.imag()) / 2, base, n);
    cplx maass = 0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const double r = ns.x[i];
        const double wt = 2 * ns.w[i] * p.h(r) * r * std::tanh(kPi * r);
        if (wt == 0.0) continue;
        maass += wt * jplus_closed(r, S, fast);
    }
    // Poles r_n = i(S/2 + n) that crossed the real axis: 4 pi i Res, with
    // Res = (2 pi)^{-S} sin(pi S / 2) (-1)^n / n! Gamma(S + n) h(r_n) r_n.
    for (int m = 0; S.real() / 2 + m < 0; ++m) {
        const cplx rn = kI * (S / 2.0 + static_cast<double>(m));
        const cplx res = std::exp(-S * kLog2Pi + cplx(lgamma_l(cplxl(S + static_cast<double>(m)))) -
                                  std::lgamma(m + 1.0)) *
                         std::sin(kPi * S / 2.0) * (m % 2 ? -1.0 : 1.0) * p.h(rn) * rn;
        maass += 4 * kPi * kI * res;
    }
    maass /= 2 * kPi * kPi;
    // holomorphic part: pi i^{-k} (2 pi)^{-S} Gamma((k - 1 + S)/2) / Gamma((k + 1 - S)/2)
    cplx hol = 0;
    const std::vector<int> ks = p.hol_weights();
    if (!ks.empty()) {
        int k = ks.front();
        // ratio and prefactor together in log space: each alone overflows for large |Im S|
        cplx ratio = kPi * std::exp(cplx(lgamma_l(cplxl((k - 1.0 + S) / 2.0)) - lgamma_l(cplxl((k + 1.0 - S) / 2.0))) -
                                    S * kLog2Pi);
        const cplx pre = 1.0;
        for (; k <= ks.back(); k += 2) {
            hol += (k - 1.0) / (2 * kPi * kPi) * p.h_hol(k) * i_pow_neg(k) * pre * ratio;
            ratio *= ((k - 1.0 + S) / 2.0) / ((k + 1.0 - S) / 2.0);
        }
    }
    return maass + hol;
}

namespace {

}  // namespace

double bump_Omega(double x) {
    const double a = std::abs(x);
    if (a <= 1) return 1;
    if (a >= 2) return 0;
    const double p = std::exp(-1 / (2 - a)), q = std::exp(-1 / (a - 1));
    return p / (p + q);
}

TestFunctionPair::TestFunctionPair(double T, double U, int C) : T_(T), U_(U), C_(C) {
    if (!(T > 0) || !(U > 0) || C < 0) throw std::invalid_argument("TestFunctionPair: need T, U > 0 and C >= 0");
}

cplx TestFunctionPair::h(cplx t) const {
    cplx poly = 1;
    for (int n = 1; n <= C_; ++n) poly *= (t * t + (n - 0.5) * (n - 0.5)) / (T_ * T_);
    const cplx a = (t - T_) / U_, b = (t + T_) / U_;
    const cplx g = std::exp(-a * a) + std::exp(-b * b);
    return poly * g * g;
}

double TestFunctionPair::h(double t) const {
    double poly = 1;
    for (int n = 1; n <= C_; ++n) poly *= (t * t + (n - 0.5) * (n - 0.5)) / (T_ * T_);
    const double a = (t - T_) / U_, b = (t + T_) / U_;
    const double g = std::exp(-a * a) + std::exp(-b * b);
    return poly * g * g;
}

double TestFunctionPair::h_hol(double k) const { return bump_Omega((k - 1 - T_) / U_); }

std::vector<int> TestFunctionPair::hol_weights() const {
    std::vector<int> ks;
    const int lo = std::max(2, static_cast<int>(std::floor(T_ + 1 - 2 * U_)));
    for (int k = lo + (lo % 2); k < T_ + 1 + 2 * U_; k += 2)
        if (h_hol(k) != 0.0) ks.push_back(k);
    return ks;
}

std::pair<double, double> TestFunctionPair::maass_support() const {
    return {std::max(0.0, T_ - 9 * U_), T_ + 9 * U_};
}

double kernel_J_plus(double r, double x) {
    if (!(r > 0)) throw std::domain_error("kernel_J_plus: r must be positive");
    return -2 * kPi * bessel_J(cplx(0, 2 * r), 4 * kPi * x).imag() / std::sinh(kPi * r);
}

cplx kernel_J_hol(int k, double x) { return 2 * kPi * i_pow_neg(k) * bessel_J(cplx(k - 1.0, 0), 4 * kPi * x); }

cplx mellin_J_plus(double r, cplx S) { return jplus_closed(r, S, false); }

cplx mellin_J_hol(int k, cplx S) {
    const cplxl a = (k - 1.0L + cplxl(S)) / 2.0L, b = (k + 1.0L - cplxl(S)) / 2.0L;
    if (b.imag() == 0 && b.real() <= 0 && b.real() == std::round(b.real())) return 0.0;
    return kPi * i_pow_neg(k) * std::exp(-S * kLog2Pi + cplx(lgamma_l(a) - lgamma_l(b)));
}

cplx mellin_J_plus_numeric(double r, cplx S) {
    const cplx m = bessel_J_mellin_numeric(cplx(0, 2 * r), S) - bessel_J_mellin_numeric(cplx(0, -2 * r), S);
    return kPi * kI / std::sinh(kPi * r) * std::exp(-S * std::log(4 * kPi)) * m;
}

cplx mellin_J_hol_numeric(int k, cplx S) {
    return 2 * kPi * i_pow_neg(k) * std::exp(-S * std::log(4 * kPi)) * bessel_J_mellin_numeric(cplx(k - 1.0, 0), S);
}

TransformEngine::TransformEngine(const TestFunctionPair& pair) : pair_(pair) {
    const double T = pair.T(), U = pair.U();
    const double c = pair.C() + 0.25;
    auto [lo, hi] = pair.maass_support();

    rnodes_.add_uniform(lo, hi, static_cast<int>(std::ceil((hi - lo) / 0.5)), 12);
    for (std::size_t i = 0; i < rnodes_.size(); ++i) {
        const double r = rnodes_.x[i];
        rweight_.push_back(2 * rnodes_.w[i] * pair.h(r) * r * std::tanh(kPi * r));
    }

    // real-line nodes for the shifted contour Im r = -c
    if (lo > 0) {
        xnodes_.add_uniform(-hi, -lo, static_cast<int>(std::ceil(hi - lo)), 20);
        xnodes_.add_uniform(lo, hi, static_cast<int>(std::ceil(hi - lo)), 20);
    } else {
        xnodes_.add_uniform(-hi, hi, static_cast<int>(std::ceil(2 * hi)), 20);
    }
    for (std::size_t i = 0; i < xnodes_.size(); ++i) {
        const cplx z(xnodes_.x[i], -c);
        gshift_.push_back(xnodes_.w[i] * pair.h(z) * z * safe_tanh(kPi * z));
    }

    // Fh decays like exp(-(pi U u)^2 / 2): u <= umax suffices
    umax_ = 8.0 / U + 0.5;
    const double width = std::min(0.02, 10.0 / (2 * kPi * (T + 9 * U)));
    unodes_.add_uniform(0, umax_, static_cast<int>(std::ceil(umax_ / width)), 20);
    Fu_.resize(unodes_.size());
    for (std::size_t j = 0; j < unodes_.size(); ++j) Fu_[j] = F(unodes_.x[j]);

    // F^hol: h^hol(2r + 1) is supported on |2r - T| < 2U; its transform decays like the
    // transform of Omega at U u / 2, below 1e-17 once U |u| / 2 > 100.
    khol_ = static_cast<int>(std::ceil(200.0 / U)) + 1;
    const double delta = 1.0 / (khol_ + 250.0 / U + 10.0);
    const int N = static_cast<int>(std::ceil(2 * U / delta));
    const double d = 2 * U / N;
    for (int j = 0; j <= N; ++j) {
        const double rho = -U + j * d;
        hnodes_.x.push_back(T / 2 + rho);
        hnodes_.w.push_back(d);
        hweight_.push_back(-2 * d * pair.h_hol(2 * (T / 2 + rho) + 1) * (T / 2 + rho));
    }
    kw_ = pair.hol_weights();
}

double TransformEngine::K(double x) const {
    double s = 0;
    for (std::size_t i = 0; i < rnodes_.size(); ++i)
        if (rweight_[i] != 0.0) s += rweight_[i] * kernel_J_plus(rnodes_.x[i], x);
    return s / (2 * kPi * kPi);
}

cplx TransformEngine::K_hol(double x) const {
    cplx s = 0;
    for (int k : kw_) s += (k - 1.0) / (2 * kPi * kPi) * pair_.h_hol(k) * kernel_J_hol(k, x);
    return s;
}

double TransformEngine::K_from_F(double x) const {
    double s = 0;
    for (std::size_t j = 0; j < unodes_.size(); ++j)
        s += 2 * unodes_.w[j] * std::cos(4 * kPi * x * std::cosh(kPi * unodes_.x[j])) * Fu_[j];
    return s / kPi;
}

double TransformEngine::F(double u) const {
    const double a = std::abs(u);
    const double c = pair_.C() + 0.25;
    cplx s = 0;
    for (std::size_t i = 0; i < xnodes_.size(); ++i) s += gshift_[i] * e_of(-xnodes_.x[i] * a);
    return std::exp(-2 * kPi * c * a) * s.real();
}

cplx TransformEngine::F_hol(double u) const {
    // equispaced nodes: sum_j g_j z^j with z = e(-d u), by Horner
    const std::size_t N = hweight_.size();
    const double d = hnodes_.x.size() > 1 ? hnodes_.x[1] - hnodes_.x[0] : 0;
    const cplx z = e_of(-d * u);
    cplx acc = 0;
    for (std::size_t j = N; j-- > 0;) acc = acc * z + hweight_[j];
    return e_of(-hnodes_.x[0] * u) * acc;
}

cplx TransformEngine::D(cplx s) const {
    cplx acc = 0;
    for (std::size_t j = 0; j < unodes_.size(); ++j) {
        const double lc = std::log(std::cosh(kPi * unodes_.x[j]));
        acc += 2 * unodes_.w[j] * Fu_[j] * std::exp(-2.0 * s * lc);
    }
    return acc;
}

cplx TransformEngine::D_hol(cplx s) const {
    if (!(s.real() < 0.5)) throw std::domain_error("D_hol: needs Re s < 1/2");
    // Each unit interval: within eta of an end, |cos pi u| = sin(pi d) and the integrand is
    // d^{-2s} times a power series in d, integrated exactly; geometric panels out to 1/4,
    // uniform panels in the middle.
    const double eta = 1e-3;
    const int M = 28;
    const double d_grid = hnodes_.x.size() > 1 ? hnodes_.x[1] - hnodes_.x[0] : 0;
    // log(sin(pi d)/(pi d)) = -sum zeta(2n) d^{2n} / n
    std::vector<cplx> ls(M + 1, 0.0), ex(M + 1, 0.0);
    for (int n = 1; 2 * n <= M; ++n) ls[2 * n] = -2.0 * s * (-riemann_zeta(2.0 * n).real() / n);
    ex[0] = 1;
    for (int m = 1; m <= M; ++m) {
        cplx acc = 0;
        for (int j = 1; j <= m; ++j) acc += static_cast<double>(j) * ls[j] * ex[m - j];
        ex[m] = acc / static_cast<double>(m);
    }
    std::vector<cplx> mom(M + 1);
    for (int m = 0; m <= M; ++m)
        mom[m] = std::exp((m + 1.0 - 2.0 * s) * std::log(eta) - 2.0 * s * std::log(kPi)) / (m + 1.0 - 2.0 * s);
    auto end_piece = [&](double u0, double dir) {
        // Taylor coefficients of F_hol(u0 + dir d) in d
        std::vector<cplx> f(M + 1, 0.0);
        for (std::size_t j = 0; j < hweight_.size(); ++j) {
            const double r = hnodes_.x[0] + static_cast<double>(j) * d_grid;
            cplx term = hweight_[j] * e_of(-r * u0);
            const cplx step = -2.0 * kPi * kI * r * dir;
            for (int m = 0; m <= M; ++m) {
                f[m] += term;
                term *= step / static_cast<double>(m + 1);
            }
        }
        cplx acc = 0;
        for (int m = 0; m <= M; ++m) {
            cplx pm = 0;
            for (int j = 0; j <= m; ++j) pm += f[j] * ex[m - j];
            acc += pm * mom[m];
        }
        return acc;
    };
    NodeSet near;  // d in [eta, 1/4], geometric
    const double ratio = std::min(1.5, std::exp(4.0 / (2.0 * std::abs(s.imag()) + 1.0)));
    for (double x = eta; x < 0.25;) {
        const double y = std::min(0.25, x * ratio);
        near.add_panel(x, y, 16);
        x = y;
    }
    const double rate = 2 * kPi * (pair_.T() / 2 + pair_.U()) + 4 * std::abs(s.imag());
    NodeSet mid;
    mid.add_uniform(-0.25, 0.25, std::max(2, static_cast<int>(std::ceil(0.5 * rate / 10.0))), 20);
    cplx total = 0;
    for (int k = -khol_; k <= khol_; ++k) {
        cplx part = end_piece(k - 0.5, 1.0) + end_piece(k + 0.5, -1.0);
        for (std::size_t j = 0; j < near.size(); ++j) {
            const double dd = near.x[j];
            const cplx wt = near.w[j] * std::exp(-2.0 * s * std::log(std::sin(kPi * dd)));
            part += wt * (F_hol(k - 0.5 + dd) + F_hol(k + 0.5 - dd));
        }
        for (std::size_t j = 0; j < mid.size(); ++j) {
            const double v = mid.x[j];
            part += mid.w[j] * F_hol(k + v) * std::exp(-2.0 * s * std::log(std::cos(kPi * v)));
        }
        total += (k % 2 ? -1.0 : 1.0) * part;
    }
    return total;
}

cplx TransformEngine::mellin_H_spectral(cplx S) const { return spectral_mellin(pair_, S, false, 0.5, 12); }

cplx TransformEngine::mellin_H_fourier(cplx S) const {
    const cplx s = S / 2.0;
    const cplx pre = std::exp(-2.0 * s * kLog2Pi) / (2 * std::sqrt(kPi));
    const cplx a = std::exp(cplx(lgamma_l(cplxl(s)) - lgamma_l(cplxl(0.5 - s))));
    const cplx b = std::exp(cplx(lgamma_l(cplxl(s + 0.5)) - lgamma_l(cplxl(1.0 - s))));
    return pre * (a * D(s) + b * D_hol(s));
}

double TransformEngine::F_moment(int l) const {
    double acc = 0;
    for (std::size_t j = 0; j < unodes_.size(); ++j)
        acc += 2 * unodes_.w[j] * Fu_[j] * std::cosh(2 * kPi * l * unodes_.x[j]);
    return acc;
}

cplx TransformEngine::F_hol_moment(int l) const {
    NodeSet ns;
    const double rate = 2 * kPi * (pair_.T() / 2 + pair_.U() + l);
    const double a = khol_ + 0.5;
    ns.add_uniform(-a, a, static_cast<int>(std::ceil(2 * a * rate / 10.0)), 20);
    cplx acc = 0;
    for (std::size_t j = 0; j < ns.size(); ++j) acc += ns.w[j] * F_hol(ns.x[j]) * e_of(l * ns.x[j]);
    return acc;
}

MainTerms TransformEngine::main_terms() const {
    MainTerms m;
    for (double w : rweight_) m.maass_mass += w;
    m.maass_mass /= 2 * kPi * kPi;
    for (int k : kw_) {
        const double c = (k - 1.0) / (2 * kPi * kPi) * pair_.h_hol(k);
        m.hol_mass += c;
        m.secondary += c * i_pow_neg(k).real();
    }
    return m;
}

RouteComparison mellin_H_routes(const TransformEngine& eng, cplx s) {
    RouteComparison r;
    r.spectral = eng.mellin_H_spectral(2.0 * s);
    r.fourier = eng.mellin_H_fourier(2.0 * s);
    r.abs = std::abs(r.spectral - r.fourier);
    r.rel = r.abs / std::max(std::abs(r.spectral), 1e-300);
    return r;
}

HScriptEvaluator::HScriptEvaluator(const TransformEngine& eng, std::array<cplx, 3> mu, HScriptOptions opt)
    : pair_(eng.pair()), mu_(mu), opt_(opt) {
    if (!(opt.sigma2 > 0 && opt.sigma2 < 1)) throw std::domain_error("HScript: sigma2 must lie in (0, 1)");
    // unit panels, refined where the poles of G_mu((1 - s)/2) come within 1 - sigma2 of the line
    std::vector<double> br;
    // past 4(T + 9U) the integrand is smooth on the scale of a few units
    const double smooth_from = 4 * eng.pair().maass_support().second;
    for (double x = -opt.tau_neg; x < opt.tau_dense; x += (x < smooth_from ? 1.0 : 4.0)) {
        bool fine = false;
        for (const cplx& m : mu)
            if (std::abs(x - 2 * m.imag()) < 4) fine = true;
        if (fine) {
            for (int j = 0; j < 8; ++j) br.push_back(x + j / 8.0);
        } else {
            br.push_back(x);
        }
    }
    br.push_back(opt.tau_dense);
    for (double a = opt.tau_dense; a < opt.tau_max;) {
        const double b = std::min(opt.tau_max, a * 1.05);
        br.push_back(b);
        a = b;
    }
    for (std::size_t i = 0; i + 1 < br.size(); ++i) {
        const int n = br[i + 1] - br[i] <= 1.0 ? 10 : 16;
        panels_.push_back({br[i], br[i + 1], tau_.size()});
        tau_.add_panel(br[i], br[i + 1], n);
    }
    hhat_.resize(tau_.size());
    for (std::size_t j = 0; j < tau_.size(); ++j) hhat_[j] = hhat(tau_.x[j]);
    // three asymptotic samples for the tail fit
    for (double f : {1.0, 0.5, 0.25}) {
        tail_tau_.push_back(opt.tau_max * f);
        tail_hhat_.push_back(hhat(opt.tau_max * f));
    }
}

cplx HScriptEvaluator::hhat(double tau) const {
    return spectral_mellin(pair_, cplx(opt_.sigma2, tau), true, 4.0, 12);
}

HScriptValue HScriptEvaluator::eval(double t, int sign) const {
    HScriptValue out;
    // nodes are stored for sign +; sign - reflects tau -> -tau using H^(conj S) = conj H^(S)
    auto integrand = [&](double tn, const cplx& hn) {
        const double tau = sign > 0 ? tn : -tn;
        const cplx S(opt_.sigma2, tau);
        const cplx hh = sign > 0 ? hn : std::conj(hn);
        return hh * script_G(mu_, (1.0 - S) / 2.0, sign) * G_pm(S / 2.0 + kI * t, -sign);
    };
    // G^{-+}(s/2 + it) has a pole at distance sigma2 from the line at tau = -2t
    const double pole = sign > 0 ? -2 * t : 2 * t;
    double wa = 1e300, wb = -1e300;
    cplx acc = 0;
    for (const Panel& p : panels_) {
        const std::size_t n = (&p == &panels_.back() ? tau_.size() : (&p + 1)->first) - p.first;
        if (p.b > pole - 4 && p.a < pole + 4 && p.b <= opt_.tau_dense && p.b - p.a > 0.2) {
            wa = std::min(wa, p.a);
            wb = std::max(wb, p.b);
            continue;
        }
        for (std::size_t j = p.first; j < p.first + n; ++j) acc += tau_.w[j] * integrand(tau_.x[j], hhat_[j]);
    }
    if (wa < wb) {
        NodeSet fine;
        fine.add_uniform(wa, wb, static_cast<int>(std::round((wb - wa) * 8)), 10);
        for (std::size_t j = 0; j < fine.size(); ++j)
            acc += fine.w[j] * integrand(fine.x[j], hhat(fine.x[j]));
        out.nodes += static_cast<long>(fine.size());
    }
    // tail: I(rho) ~ rho^{-3/2 + it} (A0 + A1 / rho + A2 / rho^2)
    cplx y[3];
    double rho[3];
    for (int i = 0; i < 3; ++i) {
        rho[i] = tail_tau_[i];
        y[i] = integrand(rho[i], tail_hhat_[i]) * std::exp(cplx(1.5, -t) * std::log(rho[i]));
    }
    const double x0 = 1 / rho[0], x1 = 1 / rho[1], x2 = 1 / rho[2];
    const cplx d01 = (y[1] - y[0]) / (x1 - x0), d12 = (y[2] - y[1]) / (x2 - x1);
    const cplx c2 = (d12 - d01) / (x2 - x0);
    const cplx c1 = d01 - c2 * (x0 + x1);
    const cplx c0 = y[0] - c1 * x0 - c2 * x0 * x0;
    const cplx A[3] = {c0, c1, c2};
    const double R = rho[0];
    cplx tail = 0;
    for (int k = 0; k < 3; ++k)
        tail += A[k] * std::exp(cplx(-0.5 - k, t) * std::log(R)) / cplx(0.5 + k, -t);
    out.tail = tail / (2 * kPi);
    out.value = (acc + tail) / (2 * kPi);
    out.nodes += static_cast<long>(tau_.size());
    return out;
}

HyperIdentity hyper_identity_check(double t, double u, double tg, int sign, double sigma) {
    if (!(sigma > 0 && sigma < 0.5)) throw std::domain_error("hyper_identity_check: needs 0 < sigma < 1/2");
    if (!(std::abs(u) < std::log(1 + std::sqrt(2.0)) / kPi))
        throw std::domain_error("hyper_identity_check: needs |u| < log(1 + sqrt 2) / pi");
    const std::array<cplx, 3> mu{cplx(0, 2 * tg), 0.0, cplx(0, -2 * tg)};
    const double a = 2 * std::log(std::cosh(kPi * u));
    auto K = [&](double tau) {
        const cplx s(sigma, tau);
        const cplx lg = cplx(lgamma_l(cplxl(s)) - lgamma_l(cplxl(0.5 - s))) - 2.0 * s * kLog2Pi -
                        0.5 * std::log(kPi) - a * s;
        return std::exp(lg) * script_G(mu, 0.5 - s, sign) *
               G_pm(s + kI * t, -sign);
    };
    // the integrand decays exponentially on one side and like tau^{-1} on the other
    const double dir = sign > 0 ? 1.0 : -1.0;
    const double far = 1e5;
    NodeSet ns;
    for (double x = -120; x < far;) {
        // poles of the gamma factors lie at distance min(sigma, 1/2 - sigma) from the line
        // near tau = 0, -t, +-2 tg: fine panels there
        const double near = 6 + 2 * std::abs(t) + 4 * std::abs(tg);
        const double base = std::abs(x) < near ? 0.125 : std::max(1.0, 0.1 * std::abs(x));
        const double step = std::min({base, 8.0 / std::max(a, 1e-12), far - x});
        ns.add_panel(x, x + step, 12);
        x += step;
    }
    cplx acc = 0;
    for (std::size_t j = 0; j < ns.size(); ++j) acc += ns.w[j] * K(dir * ns.x[j]);
    // tail beyond far: K ~ e^{-i a tau} tau^{-1 + i theta}(A0 + A1/tau + A2/tau^2) along the
    // non-decaying direction; theta is read off from the samples.
    double rho[3] = {far, far / 1.5, far / 2.25};
    cplx y[3];
    const double th0 = t;
    for (int i = 0; i < 3; ++i)
        y[i] = K(dir * rho[i]) * std::exp(kI * a * dir * rho[i]) * std::exp(cplx(1.0, -th0) * std::log(rho[i]));
    const double x0 = 1 / rho[0], x1 = 1 / rho[1], x2 = 1 / rho[2];
    const cplx d01 = (y[1] - y[0]) / (x1 - x0), d12 = (y[2] - y[1]) / (x2 - x1);
    const cplx c2 = (d12 - d01) / (x2 - x0);
    const cplx c1 = d01 - c2 * (x0 + x1);
    const cplx c0 = y[0] - c1 * x0 - c2 * x0 * x0;
    const cplx A[3] = {c0, c1, c2};
    // int_X^inf x^b e^{i w x} dx by repeated integration by parts, w = -a dir
    auto ibp = [&](cplx b, double w) {
        cplx sum = 0, term = -std::exp(kI * w * far) * std::exp(b * std::log(far)) / (kI * w);
        for (int m = 0; m < 60; ++m) {
            sum += term;
            if (std::abs(term) < 1e-17 * std::abs(sum)) break;
            term *= -(b - static_cast<double>(m)) / (far * kI * w);
        }
        return sum;
    };
    cplx tail = 0;
    for (int k = 0; k < 3; ++k) tail += A[k] * ibp(cplx(-1.0 - k, th0), -a * dir);
    HyperIdentity out;
    out.lhs = (acc + tail) / (2 * kPi);

    const double pm = sign;
    const double sh2 = std::sinh(kPi * u) * std::sinh(kPi * u);
    const cplx onepm(1, pm);
    const cplx it(0, t);
    const cplx f1 = hyp2f1(cplx(0.5, 2 * tg), cplx(0.5, -2 * tg), 1.0 - it, -sh2);
    const cplx f2 = hyp2f1(cplx(0.5, 2 * tg), cplx(0.5, -2 * tg), 1.0 + it, -sh2);
    const cplx th = std::tanh(kPi * u);
    const cplx term1 = onepm * std::exp((-1.0 - it) * kLog2Pi + pm * kPi * t / 2) * gamma_c(it) *
                       std::exp(-it * std::log(th * th)) * f1;
    const cplx g3 = std::exp(lgamma_c(-it) + lgamma_c(0.5 + it + cplx(0, 2 * tg)) + lgamma_c(0.5 + it - cplx(0, 2 * tg)));
    const cplx term2 = 2.0 * onepm * std::exp((-2.0 - it) * kLog2Pi + pm * kPi * t / 2) * g3 *
                       (std::exp(-pm * kPi * t) * std::cosh(2 * kPi * tg) - pm * std::sinh(kPi * t)) * f2;
    out.rhs = term1 + term2;
    out.rel = std::abs(out.lhs - out.rhs) / std::max(std::abs(out.rhs), 1e-300);
    return out;
}

}  // namespace recip
