#pragma once

#include <complex>
#include <string>
#include <vector>

#include "recip/char_sums.hpp"
#include "recip/characters.hpp"
#include "recip/gl3_coeffs.hpp"

namespace recip {

struct LocalZFactor {
    u64 p = 1;
    int beta = 0;
    u64 prime_power = 1;
    cplx value = 0;
    std::string case_label;
    bool vanishing = false;  // every contributing character sum is exactly zero
    int terms = 0;           // character-sum evaluations that entered the sum
    double tail = 0.0;       // remainder estimate; 0 when tails are summed in closed form
};

struct ZOptions {
    // Evaluate through the closed-form tail sums even where the defining series
    // does not converge absolutely (analytic continuation in w, z).
    bool allow_continuation = false;
    Backend backend = Backend::Auto;
};

// True inside Re(w) > 5/28, -1/7 < Re(z) < 2 Re(w) - 1/2.
bool z_in_region(cplx w, cplx z);

// Local factor at p^beta || q for chi_loc, psi_loc mod p^beta and psi_comp the
// component of psi on q / p^beta. chi_loc must be principal or primitive.
LocalZFactor z_tilde_wz(const DirichletCharacter& chi_loc, const DirichletCharacter& psi_loc,
                        const DirichletCharacter& psi_comp, const HeckeCoefficientSource& F, cplx w, cplx z,
                        const ZOptions& opt = {});
// The w = 1/2, z = it specialization.
LocalZFactor z_tilde(const DirichletCharacter& chi_loc, const DirichletCharacter& psi_loc,
                     const DirichletCharacter& psi_comp, const HeckeCoefficientSource& F, double t,
                     const ZOptions& opt = {});

struct ZGlobal {
    cplx value = 1;
    std::vector<LocalZFactor> trace;
    bool vanishing = false;
};

// Product of local factors over p^beta || q.
ZGlobal z_global_wz(const DirichletCharacter& chi, const DirichletCharacter& psi, const HeckeCoefficientSource& F,
                    cplx w, cplx z, const ZOptions& opt = {});
ZGlobal z_global(const DirichletCharacter& chi, const DirichletCharacter& psi, const HeckeCoefficientSource& F,
                 double t, const ZOptions& opt = {});

// The defining sum over c0 | q^infty, q = c10 c20 d0 n10 and n20 | q^infty taken
// directly at modulus q, with the character sum evaluated by brute force at
// modulus q. Each prime's exponent is summed explicitly up to the point where
// the summand becomes periodic in it, and the periodic remainder in closed form.
cplx z_direct(const DirichletCharacter& chi, const DirichletCharacter& psi, const HeckeCoefficientSource& F, cplx w,
              cplx z, const ZOptions& opt = {});

// Closed forms for psi principal at z = 2w - 3/2, chi_loc principal or primitive mod p^beta.
cplx z_w_special(const DirichletCharacter& chi_loc, const HeckeCoefficientSource& F, cplx w);

// lim_{w -> 1/2} Z(psi_0; w, 2w - 3/2) / L_q(2w - 1, F~) for chi = chi1 * principal(q2).
// Requires a selfdual source.
cplx z_limit_corollary(const DirichletCharacter& chi1, u64 q2, const HeckeCoefficientSource& F);

// Support predicted for psi mod q1 q2 when chi = chi1 * principal(q2): psi must be
// principal at every p^beta || q2 with beta >= 2.
bool z_support_predicted(const DirichletCharacter& psi, u64 q1, u64 q2);

// L_q(s, F~) = prod_{p | q} L_p(s, F~).
cplx L_q_dual(u64 q, const HeckeCoefficientSource& F, cplx s);
cplx L_q(u64 q, const HeckeCoefficientSource& F, cplx s);

}  // namespace recip
