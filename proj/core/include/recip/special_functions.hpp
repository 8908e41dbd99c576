#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "recip/characters.hpp"
#include "recip/gl3_coeffs.hpp"

namespace recip {

using cplxl = std::complex<long double>;

// log Gamma(z) up to a multiple of 2 pi i (exp of it is exact Gamma).
// Stirling series after upward shift, reflection for Re z < 1/2.
// Throws std::domain_error within 1e-12 of a pole.
cplxl lgamma_l(cplxl z);
cplx lgamma_c(cplx z);
// Double-precision log Gamma for the inner loops of the transforms; no pole check.
// Absolute error about 1e-16 |z log z|.
cplx lgamma_fast(cplx z);
cplx gamma_c(cplx z);
// 1 / Gamma(z), entire; exactly 0 at the poles of Gamma.
cplxl rgamma_l(cplxl z);
cplx rgamma_c(cplx z);
// log sin(pi z), stable for large |Im z|.
cplxl log_sin_pi(cplxl z);
// log cos(pi z / 2)
cplxl log_cos_half_pi(cplxl z);

// Distance from s to the nearest non-positive integer.
double gamma_pole_distance(cplx s);

// G^{+-}(s) = (2 pi)^{-s} Gamma(s) exp(+- pi i s / 2); sign is +1 or -1.
// Throws std::domain_error when s is within 1e-6 of a pole.
cplxl log_G_pm(cplxl s, int sign);
cplx G_pm(cplx s, int sign);
// G_0 = G^+ + G^-, G_1 = (G^+ - G^-) / i.
cplx G0(cplx s);
cplx G1(cplx s);

// 1/2 prod G_0(s + mu_j) +- 1/(2i) prod G_1(s + mu_j), summed as exponentials
// so that no cancellation between the two products occurs.
cplx script_G(const std::array<cplx, 3>& mu, cplx s, int sign);
double script_G_pole_distance(const std::array<cplx, 3>& mu, cplx s);

// 0 when sgn(tau) = -+sign, |tau| when sgn(tau) = sign.
double Omega_pm(double tau, int sign);

// J_nu(x) by power series in quad precision, 0 < x <= 60.
// Throws std::domain_error outside that range.
cplx bessel_J(cplx nu, double x);

// int_0^inf z^{s-1} J_nu(z) dz computed numerically: the power series integrated termwise
// on [0, Z0] (quad precision) plus the Hankel expansion integrated by parts on [Z0, inf).
// Needs Re s < 3/2; for Re(nu + s) <= 0 the termwise integrals give the analytic continuation.
// Accurate for |nu|, |s| up to about 10 (the head grows like e^{Z0}, the tail like e^{|nu|^2 / 2 Z0}).
cplx bessel_J_mellin_numeric(cplx nu, cplx s, double Z0 = 40.0);
// Closed form 2^{s-1} Gamma((nu + s)/2) / Gamma((nu - s)/2 + 1).
cplx bessel_J_mellin_closed(cplx nu, cplx s);

// zeta(s, a) for a in (0, 1] by Euler-Maclaurin.
cplx hurwitz_zeta(cplx s, double a);
cplx riemann_zeta(cplx s);
// zeta(s, a / q) for a = 1..q — the expensive part of every L(s, psi) mod q.
std::vector<cplx> hurwitz_residues(cplx s, u64 q);

// L(s, psi) = sum psi(n) n^{-s} for psi as given (imprimitive characters keep their Euler factors).
cplx dirichlet_L(cplx s, const DirichletCharacter& psi);
// Same for a table of hurwitz_residues(s, psi.modulus()).
cplx dirichlet_L_from(const std::vector<cplx>& zeta_res, cplx s, const DirichletCharacter& psi);
// L(s, psi*) for the primitive character inducing psi, by dividing out the missing Euler factors.
cplx dirichlet_L_primitive(cplx s, const DirichletCharacter& psi);

// Lambda(s, psi) = (q / pi)^{(s + k)/2} Gamma((s + k)/2) L(s, psi), psi primitive, k its parity.
cplx completed_L(cplx s, const DirichletCharacter& psi);
// tau(psi) / (i^k sqrt(q)).
cplx root_number(const DirichletCharacter& psi);
// |Lambda(s) - eps Lambda(1 - s, conj psi)| / |Lambda(s)|.
double functional_equation_residual(cplx s, const DirichletCharacter& psi);

enum class LRoute { Auto, Product, Series };

struct GL3LValue {
    cplx value = 0;
    double tail = 0.0;  // remainder bound for the series route
    std::string route;
    u64 terms = 0;
};

// L(s, F~ x psi) = sum A(n, 1) psi(n) n^{-s}.
// Product route (Eisenstein only): prod_j L(s - mu_j, psi).
// Series route: Re s > 1, truncated at the table coverage or max_terms.
GL3LValue gl3_L(cplx s, const HeckeCoefficientSource& F, const DirichletCharacter& psi,
                LRoute route = LRoute::Auto, u64 max_terms = 200000);

// 2F1(a, b; c; x), |x| < 1.
cplx hyp2f1(cplx a, cplx b, cplx c, cplx x);

}  // namespace recip
