#include "recip/special_functions.hpp"

extern "C" {
#include <quadmath.h>
}

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "recip/exp_sums.hpp"

namespace recip {

namespace {

constexpr long double kPiL = 3.141592653589793238462643383279502884L;
constexpr long double kLog2PiL = 1.837877066409345483560659472811235279L;
constexpr long double kLogPiL = 1.144729885849400174143427351353058712L;
constexpr double kPi = std::numbers::pi;

// B_{2k} / (2k (2k - 1)), k = 1..14
constexpr long double kStirling[] = {
    1.0L / 12.0L,
    -1.0L / 360.0L,
    1.0L / 1260.0L,
    -1.0L / 1680.0L,
    1.0L / 1188.0L,
    -691.0L / 360360.0L,
    1.0L / 156.0L,
    -3617.0L / 122400.0L,
    43867.0L / 244188.0L,
    -174611.0L / 125400.0L,
    77683.0L / 5796.0L,
    -236364091.0L / 1506960.0L,
    657931.0L / 300.0L,
    -3392780147.0L / 93960.0L,
};

// B_{2k} / (2k)!, k = 1..14
constexpr double kBernFact[] = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
    -174611.0 / 330.0 / 2432902008176640000.0,
    854513.0 / 138.0 / 1.1240007277776077e21,
    -236364091.0 / 2730.0 / 6.204484017332394e23,
    8553103.0 / 6.0 / 4.0329146112660565e26,
    -23749461029.0 / 870.0 / 3.0488834461171384e29,
};

bool near_nonpositive_integer(cplxl z, long double tol) {
    long double n = std::round(z.real());
    return n <= 0 && std::abs(z - cplxl(n, 0)) < tol;
}

// Plain complex long double helpers: the library operators go through the slow
// inf/nan-aware runtime routines.
struct CL {
    long double re, im;
};
inline CL cl_mul(CL a, CL b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
inline CL cl_inv(CL a) {
    const long double d = a.re * a.re + a.im * a.im;
    return {a.re / d, -a.im / d};
}
inline CL cl_log(CL a) { return {0.5L * std::log(a.re * a.re + a.im * a.im), std::atan2(a.im, a.re)}; }

cplxl lgamma_stirling(cplxl zin) {
    CL z{zin.real(), zin.imag()};
    CL acc{0, 0}, prod{1, 0};
    int shifts = 0;
    auto absz2 = [](CL a) { return a.re * a.re + a.im * a.im; };
    while (absz2(z) < 225.0L) {
        prod = cl_mul(prod, z);
        z.re += 1.0L;
        if (++shifts == 12) {
            CL l = cl_log(prod);
            acc = {acc.re - l.re, acc.im - l.im};
            prod = {1, 0};
            shifts = 0;
        }
    }
    if (shifts > 0) {
        CL l = cl_log(prod);
        acc = {acc.re - l.re, acc.im - l.im};
    }
    const CL inv = cl_inv(z), inv2 = cl_mul(inv, inv);
    // terms needed: |z|^{-(2k-1)} B_2k / (2k(2k-1)) below 1e-21
    const long double az = std::sqrt(absz2(z));
    const int nterms = az > 400 ? 3 : az > 100 ? 5 : az > 40 ? 8 : 14;
    CL series{0, 0};
    for (int k = nterms - 1; k >= 0; --k) {
        series = cl_mul(series, inv2);
        series.re += kStirling[k];
    }
    series = cl_mul(series, inv);
    const CL lz = cl_log(z);
    const CL t = cl_mul({z.re - 0.5L, z.im}, lz);
    return {acc.re + t.re - z.re + 0.5L * kLog2PiL + series.re, acc.im + t.im - z.im + series.im};
}

// Quad-precision complex arithmetic for the Bessel series.
struct Q {
    __float128 re, im;
};
inline Q qmul(Q a, Q b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
inline Q qdiv(Q a, Q b) {
    __float128 d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline __float128 qabs2(Q a) { return a.re * a.re + a.im * a.im; }

cplx hurwitz_impl(cplx s, double a, bool regularized) {
    if (!(a > 0.0 && a <= 1.0)) throw std::domain_error("hurwitz_zeta: a must lie in (0, 1]");
    const bool at_pole = std::abs(s - cplx(1.0)) < 1e-13;
    if (at_pole && !regularized) throw std::domain_error("hurwitz_zeta: pole at s = 1");
    const int N = 20 + static_cast<int>(std::ceil(std::abs(s)));
    cplx sum = 0;
    for (int n = 0; n < N; ++n) sum += std::exp(-s * std::log(n + a));
    const double L = std::log(N + a);
    const cplx xNs = std::exp(-s * L);
    if (regularized) {
        // ((N + a)^{1 - s} - 1) / (s - 1), analytic at s = 1
        cplx x = (1.0 - s) * L;
        cplx ratio = std::abs(x) < 1e-5 ? 1.0 + x / 2.0 + x * x / 6.0 : (std::exp(x) - 1.0) / x;
        sum += -L * ratio;
    } else {
        sum += xNs * (N + a) / (s - 1.0);
    }
    sum += 0.5 * xNs;
    // Euler-Maclaurin corrections: B_{2k}/(2k)! (s)_{2k-1} (N + a)^{-s - 2k + 1}
    cplx poch = s;
    cplx pw = xNs / (N + a);
    const double inv2 = 1.0 / ((N + a) * (N + a));
    for (int k = 0; k < 14; ++k) {
        cplx term = kBernFact[k] * poch * pw;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        poch *= (s + static_cast<double>(2 * k + 1)) * (s + static_cast<double>(2 * k + 2));
        pw *= inv2;
    }
    return sum;
}

}  // namespace

cplxl log_sin_pi(cplxl z) {
    if (z.imag() < 0) return std::conj(log_sin_pi(std::conj(z)));
    const long double n = std::round(z.real());
    const cplxl zr = z - n;
    // sin(pi zr) = e^{-i pi zr} (e^{2 pi i zr} - 1) / (2i); |e^{2 pi i zr}| <= 1 here.
    const cplxl I(0, 1);
    cplxl e = std::exp(2.0L * kPiL * I * zr);
    cplxl v = -I * kPiL * zr + std::log(e - 1.0L) - cplxl(std::log(2.0L), kPiL / 2);
    return v + I * kPiL * n;  // sin(pi (zr + n)) = (-1)^n sin(pi zr)
}

cplxl log_cos_half_pi(cplxl z) { return log_sin_pi((1.0L - z) / 2.0L); }

cplxl lgamma_l(cplxl z) {
    if (near_nonpositive_integer(z, 1e-12L)) throw std::domain_error("lgamma: argument at a pole of Gamma");
    if (z.real() < 0.5L) return kLogPiL - log_sin_pi(z) - lgamma_stirling(1.0L - z);
    return lgamma_stirling(z);
}

cplx lgamma_c(cplx z) { return cplx(lgamma_l(cplxl(z))); }

cplx lgamma_fast(cplx z) {
    if (z.real() < 0.5) {
        // log(pi / sin(pi z)), with sin taken in log form for large |Im z|
        const double n = std::round(z.real());
        const cplx zr = z - n;
        const double y = std::abs(zr.imag());
        cplx ls;
        if (y > 5) {
            const cplx I(0, 1);
            const cplx w = zr.imag() > 0 ? zr : std::conj(zr);
            cplx v = -I * kPi * w + std::log(1.0 - std::exp(2.0 * kPi * I * w)) - cplx(std::log(2.0), -kPi / 2);
            ls = zr.imag() > 0 ? v : std::conj(v);
        } else {
            ls = std::log(std::sin(kPi * zr));
        }
        ls += cplx(0, kPi * n);
        return std::log(kPi) - ls - lgamma_fast(1.0 - z);
    }
    double re = z.real(), im = z.imag();
    double pre = 1, pim = 0, acc_re = 0, acc_im = 0;
    int shifts = 0;
    while (re * re + im * im < 100.0) {
        const double t = pre * re - pim * im;
        pim = pre * im + pim * re;
        pre = t;
        re += 1.0;
        ++shifts;
    }
    if (shifts > 0) {
        acc_re = -0.5 * std::log(pre * pre + pim * pim);
        acc_im = -std::atan2(pim, pre);
    }
    const double d = re * re + im * im;
    const double ir = re / d, ii = -im / d;
    const double i2r = ir * ir - ii * ii, i2i = 2 * ir * ii;
    const int nterms = d > 1e4 ? 4 : 9;
    double sr = 0, si = 0;
    for (int k = nterms - 1; k >= 0; --k) {
        const double t = sr * i2r - si * i2i;
        si = sr * i2i + si * i2r;
        sr = t + static_cast<double>(kStirling[k]);
    }
    const double ssr = sr * ir - si * ii, ssi = sr * ii + si * ir;
    const double lr = 0.5 * std::log(d), li = std::atan2(im, re);
    const double tr = (re - 0.5) * lr - im * li, ti = (re - 0.5) * li + im * lr;
    return {acc_re + tr - re + 0.5 * std::log(2 * kPi) + ssr, acc_im + ti - im + ssi};
}
cplx gamma_c(cplx z) { return cplx(std::exp(lgamma_l(cplxl(z)))); }

cplxl rgamma_l(cplxl z) {
    if (z.imag() == 0 && z.real() <= 0 && z.real() == std::round(z.real())) return 0;
    if (z.real() < 0.5L) {
        if (std::abs(z.imag()) < 20) {
            return std::sin(kPiL * z) * std::exp(lgamma_stirling(1.0L - z)) / kPiL;
        }
        return std::exp(log_sin_pi(z) + lgamma_stirling(1.0L - z) - kLogPiL);
    }
    return std::exp(-lgamma_stirling(z));
}

cplx rgamma_c(cplx z) { return cplx(rgamma_l(cplxl(z))); }

double gamma_pole_distance(cplx s) {
    double n = std::min(0.0, std::round(s.real()));
    return std::abs(s - cplx(n, 0.0));
}

cplxl log_G_pm(cplxl s, int sign) {
    if (gamma_pole_distance(cplx(s)) < 1e-6) throw std::domain_error("G: argument within 1e-6 of a pole");
    const cplxl I(0, 1);
    return -s * kLog2PiL + lgamma_l(s) + static_cast<long double>(sign) * I * kPiL * s / 2.0L;
}

cplx G_pm(cplx s, int sign) { return cplx(std::exp(log_G_pm(cplxl(s), sign))); }
cplx G0(cplx s) { return G_pm(s, 1) + G_pm(s, -1); }
cplx G1(cplx s) { return (G_pm(s, 1) - G_pm(s, -1)) / cplx(0, 1); }

double script_G_pole_distance(const std::array<cplx, 3>& mu, cplx s) {
    double d = 1e300;
    for (const cplx& m : mu) d = std::min(d, gamma_pole_distance(s + m));
    return d;
}

cplx script_G(const std::array<cplx, 3>& mu, cplx s, int sign) {
    if (script_G_pole_distance(mu, s) < 1e-6) throw std::domain_error("script_G: argument within 1e-6 of a pole");
    const cplxl I(0, 1);
    cplxl L = 0;
    std::array<cplxl, 3> x;
    for (int j = 0; j < 3; ++j) {
        x[j] = cplxl(s + mu[j]);
        L += -x[j] * kLog2PiL + lgamma_l(x[j]);
    }
    // prod (a_j + b_j) +- prod (a_j - b_j) with a = e^{i pi x / 2}, b = 1/a keeps the
    // monomials whose count of b factors is even (+) or odd (-).
    cplxl sum = 0;
    for (int mask = 0; mask < 8; ++mask) {
        int odd = __builtin_popcount(static_cast<unsigned>(mask)) & 1;
        if ((sign > 0) == static_cast<bool>(odd)) continue;
        cplxl ph = 0;
        for (int j = 0; j < 3; ++j) ph += ((mask >> j) & 1) ? -x[j] : x[j];
        sum += std::exp(L + I * kPiL * ph / 2.0L);
    }
    return cplx(sum);
}

double Omega_pm(double tau, int sign) {
    if (tau == 0.0) return 0.0;
    return ((tau > 0) == (sign > 0)) ? std::abs(tau) : 0.0;
}

cplx bessel_J(cplx nu, double x) {
    if (!(x > 0.0) || x > 60.0) throw std::domain_error("bessel_J: argument outside (0, 60]");
    const double nr = std::round(nu.real());
    if (nr < 0 && std::abs(nu - cplx(nr, 0.0)) < 1e-14) {
        cplx v = bessel_J(cplx(-nr, 0.0), x);
        return (static_cast<long>(-nr) % 2) ? -v : v;
    }
    const cplxl g = rgamma_l(cplxl(nu) + 1.0L);
    Q term{static_cast<__float128>(g.real()), static_cast<__float128>(g.imag())};
    Q sum = term;
    const __float128 y = -static_cast<__float128>(x) * x / 4;
    for (int k = 1; k < 2000; ++k) {
        Q den{static_cast<__float128>(k) * (static_cast<__float128>(nu.real()) + k),
              static_cast<__float128>(k) * static_cast<__float128>(nu.imag())};
        term = qdiv(qmul(term, Q{y, 0}), den);
        sum.re += term.re;
        sum.im += term.im;
        if (k > x && qabs2(term) < 1e-64Q * qabs2(sum)) break;
    }
    const cplxl pre = std::exp(cplxl(nu) * std::log(static_cast<long double>(x) / 2.0L));
    const cplxl s(static_cast<long double>(sum.re), static_cast<long double>(sum.im));
    return cplx(pre * s);
}

cplx bessel_J_mellin_closed(cplx nu, cplx s) {
    cplxl a = (cplxl(nu) + cplxl(s)) / 2.0L, b = (cplxl(nu) - cplxl(s)) / 2.0L + 1.0L;
    return cplx(std::exp((cplxl(s) - 1.0L) * std::log(2.0L) + lgamma_l(a)) * rgamma_l(b));
}

cplx bessel_J_mellin_numeric(cplx nu, cplx s, double Z0) {
    if (!(s.real() < 1.5)) throw std::domain_error("bessel_J_mellin_numeric: needs Re s < 3/2");
    // [0, Z0]: sum_k (-1)^k (Z0/2)^{2k+nu} Z0^s / (k! Gamma(k + nu + 1) (2k + nu + s))
    const cplxl g = rgamma_l(cplxl(nu) + 1.0L);
    Q term{static_cast<__float128>(g.real()), static_cast<__float128>(g.imag())};
    Q sum{0, 0};
    const __float128 y = -static_cast<__float128>(Z0) * Z0 / 4;
    for (int k = 0; k < 4000; ++k) {
        if (k > 0) {
            Q den{static_cast<__float128>(k) * (static_cast<__float128>(nu.real()) + k),
                  static_cast<__float128>(k) * static_cast<__float128>(nu.imag())};
            term = qdiv(qmul(term, Q{y, 0}), den);
        }
        Q d{static_cast<__float128>(2 * k) + static_cast<__float128>(nu.real() + s.real()),
            static_cast<__float128>(nu.imag() + s.imag())};
        Q add = qdiv(term, d);
        sum.re += add.re;
        sum.im += add.im;
        if (k > Z0 && qabs2(add) < 1e-66Q * qabs2(sum)) break;
    }
    const cplxl lz = std::log(static_cast<long double>(Z0));
    const cplxl pre = std::exp(cplxl(nu) * (lz - std::log(2.0L)) + cplxl(s) * lz);
    cplx head = cplx(pre * cplxl(static_cast<long double>(sum.re), static_cast<long double>(sum.im)));

    // [Z0, inf): J = (H1 + H2) / 2, H_{1,2} ~ sqrt(2/(pi z)) e^{+-i w} sum (+-i)^k a_k z^{-k},
    // w = z - nu pi / 2 - pi / 4, and int_X^inf x^a e^{i o x} dx by repeated integration by parts.
    const cplx I(0, 1);
    auto ibp = [&](cplx a, double o) {
        cplx acc = 0, c = -std::exp(I * o * Z0) * std::pow(cplx(Z0), a) / (I * o);
        double best = 1e300;
        for (int m = 0; m < 200; ++m) {
            double mag = std::abs(c);
            if (mag > best && m > 2) break;
            best = std::min(best, mag);
            acc += c;
            if (mag < 1e-18 * std::abs(acc)) break;
            c *= -(a - static_cast<double>(m)) / (Z0 * I * o);
        }
        return acc;
    };
    cplx tail = 0;
    const cplx nu2 = 4.0 * nu * nu;
    for (int sg = -1; sg <= 1; sg += 2) {
        const double o = sg;
        cplx phase = std::exp(I * o * (-nu * std::numbers::pi / 2.0 - std::numbers::pi / 4.0));
        cplx ak = 1.0, ik = 1.0, part = 0;
        double best = 1e300;
        for (int k = 0; k < 200; ++k) {
            if (k > 0) {
                ak *= (nu2 - static_cast<double>((2 * k - 1) * (2 * k - 1))) / (8.0 * k);
                ik *= I * o;
            }
            cplx t = ik * ak * ibp(s - 1.5 - static_cast<double>(k), o);
            double mag = std::abs(t);
            if (mag > best && k > 2) break;
            best = std::min(best, mag);
            part += t;
            if (mag < 1e-18 * std::abs(part)) break;
        }
        tail += 0.5 * std::sqrt(2.0 / std::numbers::pi) * phase * part;
    }
    return head + tail;
}

cplx hurwitz_zeta(cplx s, double a) { return hurwitz_impl(s, a, false); }
cplx riemann_zeta(cplx s) { return hurwitz_impl(s, 1.0, false); }

std::vector<cplx> hurwitz_residues(cplx s, u64 q) {
    std::vector<cplx> r(q, 0.0);
    const bool regular = q > 1;  // every caller weights these by a nonprincipal or principal character
    for (u64 a = 1; a <= q; ++a) {
        if (gcd_u(a, q) != 1) continue;
        r[a - 1] = hurwitz_impl(s, static_cast<double>(a) / static_cast<double>(q), regular);
    }
    return r;
}

cplx dirichlet_L_from(const std::vector<cplx>& zeta_res, cplx s, const DirichletCharacter& psi) {
    const u64 q = psi.modulus();
    if (q == 1) return zeta_res.at(0);
    if (psi.is_principal() && std::abs(s - cplx(1.0)) < 1e-13)
        throw std::domain_error("dirichlet_L: pole at s = 1 for principal character");
    cplx sum = 0;
    for (u64 a = 1; a < q; ++a) {
        if (psi.exponent_at(static_cast<i64>(a)) < 0) continue;
        sum += psi.value(static_cast<i64>(a)) * zeta_res[a - 1];
    }
    if (psi.is_principal()) {
        // the regularized residues dropped 1/(s - 1) from each of the phi(q) terms
        sum += static_cast<double>(euler_phi(q)) / (s - 1.0);
    }
    return std::exp(-s * std::log(static_cast<double>(q))) * sum;
}

cplx dirichlet_L(cplx s, const DirichletCharacter& psi) {
    const u64 q = psi.modulus();
    if (q == 1) return riemann_zeta(s);
    return dirichlet_L_from(hurwitz_residues(s, q), s, psi);
}

cplx dirichlet_L_primitive(cplx s, const DirichletCharacter& psi) {
    const DirichletCharacter star = psi.primitive_part();
    cplx L = dirichlet_L(s, psi);
    for (u64 p : psi.factored_modulus().primes()) {
        if (star.modulus() % p == 0) continue;
        L /= 1.0 - star.value(static_cast<i64>(p)) * std::exp(-s * std::log(static_cast<double>(p)));
    }
    return L;
}

cplx completed_L(cplx s, const DirichletCharacter& psi) {
    const double k = psi.parity() == 1 ? 0.0 : 1.0;
    const double q = static_cast<double>(psi.modulus());
    cplx a = (s + k) / 2.0;
    cplx pre = std::exp(a * std::log(q / std::numbers::pi) + lgamma_c(a));
    return pre * dirichlet_L(s, psi);
}

cplx root_number(const DirichletCharacter& psi) {
    cplx tau = gauss(psi, 1, Backend::Numeric).numeric;
    cplx ik = psi.parity() == 1 ? cplx(1.0) : cplx(0.0, 1.0);
    return tau / (ik * std::sqrt(static_cast<double>(psi.modulus())));
}

double functional_equation_residual(cplx s, const DirichletCharacter& psi) {
    if (!psi.is_primitive()) throw std::domain_error("functional_equation_residual: psi must be primitive");
    cplx lhs = completed_L(s, psi);
    cplx rhs = root_number(psi) * completed_L(1.0 - s, psi.conj());
    return std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300);
}

GL3LValue gl3_L(cplx s, const HeckeCoefficientSource& F, const DirichletCharacter& psi, LRoute route,
                u64 max_terms) {
    GL3LValue out;
    if (route == LRoute::Auto) route = F.is_eisenstein() ? LRoute::Product : LRoute::Series;
    if (route == LRoute::Product) {
        if (!F.is_eisenstein()) throw std::domain_error("gl3_L: product route needs an Eisenstein source");
        out.value = 1.0;
        for (const cplx& m : F.mu()) out.value *= dirichlet_L(s - m, psi);
        out.route = "product";
        return out;
    }
    double shift = 0.0;
    if (F.is_eisenstein())
        for (const cplx& m : F.mu()) shift = std::max(shift, std::abs(m.real()));
    const double sig = s.real() - shift;
    if (!(sig > 1.0)) throw std::domain_error("gl3_L: series route needs absolute convergence (Re s > 1)");
    const u64 N = std::min<u64>(max_terms, F.coverage());
    cplx sum = 0;
    if (F.is_eisenstein()) {
        // A(n, 1) is multiplicative: sieve smallest prime factors, evaluate F only at prime powers.
        std::vector<u64> spf(N + 1, 0);
        for (u64 p = 2; p <= N; ++p)
            if (spf[p] == 0)
                for (u64 k = p; k <= N; k += p)
                    if (spf[k] == 0) spf[k] = p;
        std::vector<cplx> a(N + 1);
        if (N >= 1) a[1] = 1.0;
        for (u64 n = 2; n <= N; ++n) {
            const u64 p = spf[n];
            u64 pk = 1, m = n;
            while (m % p == 0) m /= p, pk *= p;
            a[n] = (m == 1 ? F.A(pk, 1) : a[pk] * a[m]);
        }
        for (u64 n = 1; n <= N; ++n)
            if (psi.exponent_at(static_cast<i64>(n)) >= 0)
                sum += a[n] * psi.value(static_cast<i64>(n)) * std::exp(-s * std::log(static_cast<double>(n)));
    } else {
        for (u64 n = 1; n <= N; ++n) {
            if (psi.exponent_at(static_cast<i64>(n)) < 0) continue;
            sum += F.A(n, 1) * psi.value(static_cast<i64>(n)) * std::exp(-s * std::log(static_cast<double>(n)));
        }
    }
    out.tail = d3_tail(static_cast<double>(N), sig);
    out.value = sum;
    out.route = "series";
    out.terms = N;
    return out;
}

cplx hyp2f1(cplx a, cplx b, cplx c, cplx x) {
    if (std::abs(x) >= 1.0) throw std::domain_error("hyp2f1: series needs |x| < 1");
    if (gamma_pole_distance(c) < 1e-14) throw std::domain_error("hyp2f1: c is a non-positive integer");
    cplx term = 1.0, sum = 1.0;
    for (int k = 0; k < 100000; ++k) {
        term *= (a + static_cast<double>(k)) * (b + static_cast<double>(k)) / ((c + static_cast<double>(k)) * (k + 1.0)) * x;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum) && k > 2) return sum;
        if (term == 0.0) return sum;
    }
    throw std::runtime_error("hyp2f1: series did not converge");
}

}  // namespace recip
