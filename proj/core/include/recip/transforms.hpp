#pragma once

#include <array>
#include <complex>
#include <vector>

#include "recip/quadrature.hpp"
#include "recip/special_functions.hpp"

namespace recip {

// Smooth partition bump: 1 on [-1, 1], 0 outside (-2, 2), C^infinity.
double bump_Omega(double x);

// The weight pair (h, h^hol) localised at spectral parameter T with width U:
//   h(t)       = prod_{n=1}^{C} (t^2 + (n - 1/2)^2) / T^2 * (e^{-((t-T)/U)^2} + e^{-((t+T)/U)^2})^2
//   h^hol(k)   = Omega((k - 1 - T) / U)
// h is entire, even, and vanishes at t = +-i(n - 1/2) for n <= C.
class TestFunctionPair {
public:
    TestFunctionPair(double T, double U, int C);
    double T() const { return T_; }
    double U() const { return U_; }
    int C() const { return C_; }
    cplx h(cplx t) const;
    double h(double t) const;
    double h_hol(double k) const;
    // Even weights k >= 2 with h^hol(k) != 0.
    std::vector<int> hol_weights() const;
    // The real interval outside which h is below e^{-80} relative to its peak (r >= 0 half).
    std::pair<double, double> maass_support() const;

private:
    double T_, U_;
    int C_;
};

// Bessel kernels: J+_r(x) = -2 pi Im J_{2ir}(4 pi x) / sinh(pi r)   (r > 0),
//                 J^hol_k(x) = 2 pi i^{-k} J_{k-1}(4 pi x).
double kernel_J_plus(double r, double x);
cplx kernel_J_hol(int k, double x);
// Their Mellin transforms int_0^inf J(x) x^{S-1} dx: closed forms, and the numerical
// route through bessel_J_mellin_numeric (|r|, k up to about 5 and |S| up to about 10).
cplx mellin_J_plus(double r, cplx S);
cplx mellin_J_hol(int k, cplx S);
cplx mellin_J_plus_numeric(double r, cplx S);
cplx mellin_J_hol_numeric(int k, cplx S);

// The spectral-side Mellin transform with an explicit r-grid: panels of width `base` with
// `nodes` points each, double-precision log Gamma when `fast`.
cplx spectral_mellin(const TestFunctionPair& p, cplx S, bool fast, double base, int nodes);

struct MainTerms {
    double maass_mass = 0;  // (1/2 pi^2) int h(r) r tanh(pi r) dr
    double hol_mass = 0;    // sum_k (k - 1)/(2 pi^2) h^hol(k)
    double secondary = 0;   // sum_k (k - 1)/(2 pi^2) i^{-k} h^hol(k)
};

// All transforms of one TestFunctionPair, with quadrature nodes fixed at construction.
class TransformEngine {
public:
    explicit TransformEngine(const TestFunctionPair& pair);
    const TestFunctionPair& pair() const { return pair_; }

    // Kh(x) = (1/2 pi^2) int J+_r(x) h(r) r tanh(pi r) dr; valid for 4 pi x <= 60.
    double K(double x) const;
    // K^hol h(x) = sum_k (k - 1)/(2 pi^2) J^hol_k(x) h^hol(k).
    cplx K_hol(double x) const;
    // Kh(x) = (1/pi) int cos(4 pi x cosh(pi u)) Fh(u) du — the Fourier-side route.
    double K_from_F(double x) const;

    // Fh(u) = int h(r) r tanh(pi r) e(-ru) dr, computed on the line Im r = -sgn(u)(C + 1/4).
    double F(double u) const;
    // F^hol(u) = -2 int h^hol(2r + 1) r e(-ru) dr.
    cplx F_hol(double u) const;
    // Dh(s) = int Fh(u) (cosh^2 pi u)^{-s} du.
    cplx D(cplx s) const;
    // D^hol(s) = sum_k (-1)^k int_{k-1/2}^{k+1/2} F^hol(u) (cos^2 pi u)^{-s} du, Re s < 1/2.
    cplx D_hol(cplx s) const;

    // int_0^inf (Kh + K^hol h)(x) x^{S-1} dx from the closed-form kernel transforms;
    // valid for -2C - 1/2 < Re S < 1 (poles crossed for Re S < 0 contribute residues).
    cplx mellin_H_spectral(cplx S) const;
    // The same value rebuilt from D and D^hol at s = S / 2.
    cplx mellin_H_fourier(cplx S) const;

    // int Fh(u) e(i l u) du and int F^hol(u) e(l u) du; both vanish for 0 <= l <= C.
    double F_moment(int l) const;
    cplx F_hol_moment(int l) const;

    MainTerms main_terms() const;

    // Number of unit intervals used for D^hol / F^hol moments (|k| <= this).
    int hol_intervals() const { return khol_; }

private:
    TestFunctionPair pair_;
    NodeSet rnodes_;                 // r >= 0 nodes covering supp h
    std::vector<double> rweight_;    // w_i h(r_i) r_i tanh(pi r_i), for r >= 0 (doubled)
    NodeSet xnodes_;                 // real line nodes for the shifted contour
    std::vector<cplx> gshift_;       // w_i h(x - ic) (x - ic) tanh(pi (x - ic)), c = C + 1/4
    NodeSet unodes_;                 // nodes for Dh
    std::vector<double> Fu_;         // Fh at unodes_
    NodeSet hnodes_;                 // nodes for F^hol
    std::vector<double> hweight_;    // -2 w_i h^hol(2 r_i + 1) r_i
    std::vector<int> kw_;            // holomorphic weights
    int khol_ = 0;
    double umax_ = 0;
};

// Residual of the Fourier-Mellin identity at s: both sides and their relative gap.
struct RouteComparison {
    cplx spectral = 0, fourier = 0;
    double rel = 0, abs = 0;
};
RouteComparison mellin_H_routes(const TransformEngine& eng, cplx s);

// H^{+-}(t) = (1/2 pi) int_{(sigma2)} H^(s) G^{+-}_mu((1 - s)/2) G^{-+}(s/2 + it) |ds|.
struct HScriptOptions {
    double sigma2 = 0.5;       // abscissa, 0 < sigma2 < 1
    double tau_dense = 1000;   // dense panels on [-tau_neg, tau_dense]
    double tau_neg = 120;
    double tau_max = 1e6;      // log-spaced panels up to here, then a fitted analytic tail
};

struct HScriptValue {
    cplx value = 0;
    cplx tail = 0;   // analytic contribution beyond tau_max
    long nodes = 0;
};

// Precomputes H^ on the integration line once; eval() is then cheap per t.
class HScriptEvaluator {
public:
    HScriptEvaluator(const TransformEngine& eng, std::array<cplx, 3> mu, HScriptOptions opt = {});
    HScriptValue eval(double t, int sign) const;
    const HScriptOptions& options() const { return opt_; }

private:
    struct Panel {
        double a, b;
        std::size_t first;
    };
    cplx hhat(double tau) const;
    TestFunctionPair pair_;
    std::array<cplx, 3> mu_;
    HScriptOptions opt_;
    NodeSet tau_;
    std::vector<Panel> panels_;
    std::vector<cplx> hhat_;
    std::vector<double> tail_tau_;
    std::vector<cplx> tail_hhat_;
};

// Mellin transform along (sigma): (1/2 pi i) int (1/sqrt pi)(2 pi)^{-2s} Gamma(s)/Gamma(1/2 - s)
//   G^{+-}_mu(1/2 - s) G^{-+}(s + it) (cosh^2 pi u)^{-s} ds with mu = (2i tg, 0, -2i tg),
// against its evaluation by two terms in 2F1(.; .; -sinh^2 pi u).
struct HyperIdentity {
    cplx lhs = 0, rhs = 0;
    double rel = 0;
};
HyperIdentity hyper_identity_check(double t, double u, double tg, int sign, double sigma = 0.25);

}  // namespace recip
