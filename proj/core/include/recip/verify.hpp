#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "recip/exp_sums.hpp"
#include "recip/report.hpp"
#include "recip/transforms.hpp"

namespace recip {

// Identity sweeps: every closed form against an independent evaluation, one row per case.

// Families of the prime-power case table for V_chi(psi; m1, m2, m3, r).
enum class VFamily { PrincipalPrincipal, PrincipalNonprincipal, PrimitivePrincipal, PrimitiveNonprincipal, All };
// Accepts "principal-principal", "principal-nonprincipal", "primitive-principal", "primitive-nonprincipal",
// "all" and the numbered aliases vchi-4.3 .. vchi-4.6.
VFamily parse_v_family(const std::string& name);
std::string to_string(VFamily f);

// Prime powers p^beta <= bound, in increasing order.
std::vector<u64> prime_powers_up_to(u64 bound);

// Closed form against brute force over every prime power <= max_prime_power, chi principal or primitive,
// psi arbitrary, arguments p^{a_i} with m3 | m1 | m2 and exponents <= beta + 1. Exact rows require
// equality in the cyclotomic field; bound-only clauses report |V| / bound against `bound_cap`.
ExperimentReport verify_v_closed_forms(VFamily family, u64 max_prime_power, Backend backend,
                                       double bound_cap = 4.0);

// Coprime twist, CRT factorization and the g-relation: exhaustive for q <= qmax, plus `random_cases`
// composite moduli q <= random_qmax drawn from `seed`.
ExperimentReport verify_v_multiplicativity(u64 qmax, int random_cases, u64 random_qmax, u64 seed);

// g(chi, psi) vanishes at 2^beta <= 2^two_exp; |g| <= 3p for primitive pairs at primes p <= pmax.
ExperimentReport verify_g_sums(int two_exp, u64 pmax);

// Gauss closed form (q <= gauss_qmax), twisted Kloosterman multiplicativity (kl_pairs coprime pairs
// <= kl_cmax), Ramanujan divisor sum against the definition (q, n <= ram_max), Heath-Brown symmetry (q <= hb_qmax).
struct ExpSumSweep {
    u64 gauss_qmax = 60;
    int kl_pairs = 200;
    u64 kl_cmax = 50;
    u64 ram_max = 500;
    u64 hb_qmax = 100;
    u64 seed = 20240601;
};
ExperimentReport verify_exp_sums(const ExpSumSweep& sweep);

// z_global against the product of z_tilde and against the direct global sum.
ExperimentReport verify_z_factorization(const std::vector<u64>& qs, u64 seed, double tol = 1e-10);
// z_global vanishes exactly outside the predicted support, and is nonzero inside it, for
// (q1, q2) pairs and every primitive chi1 mod q1.
ExperimentReport verify_z_support(const std::vector<std::pair<u64, u64>>& moduli);
// Closed forms for principal psi at z = 2w - 3/2 against the direct sum at `samples` random real w.
ExperimentReport verify_z_closed_forms(const std::vector<u64>& prime_powers, int samples, u64 seed,
                                       double tol = 1e-10);
// The w -> 1/2 limit by Richardson extrapolation of Z / L_q(2w - 1) at w = 1/2 + h 2^{-k}.
ExperimentReport verify_z_limit(const std::vector<std::pair<u64, u64>>& moduli, double tol = 1e-6);

// Mellin route comparison, kernel Mellin closed forms, vanishing moments and the hypergeometric identity.
struct TransformSweep {
    double T = 30, U = 5;
    int C = 3;
    double tol = 1e-6;
    double moment_tol = 1e-8;  // relative to T U
    std::vector<cplx> s_points{cplx(0.3, 0), cplx(0.3, 2), cplx(-0.7, 1), cplx(0.3, 15), cplx(-0.7, 15)};
};
ExperimentReport verify_transform_identities(const TransformSweep& sweep);

// |H(t)| / U within [lo, hi] on |t| <= T/U, and the fitted exponent of |H| on [2T/U, 10T/U] against -C + slack.
struct LocalizationSweep {
    double T = 100, U = 10;
    int C = 4;
    std::array<cplx, 3> mu{};
    HScriptOptions hscript{};
    int inner_points = 21, outer_points = 9;
    double lo = 1e-2, hi = 1e2, slack = 0.5;
};
ExperimentReport verify_hscript_localization(const LocalizationSweep& sweep);

// Functional-equation residuals for every primitive psi mod q <= qmax on an 11-point grid, and zeta(2).
ExperimentReport verify_l_functions(u64 qmax, double fe_tol = 1e-8, double zeta_tol = 1e-10);

}  // namespace recip
