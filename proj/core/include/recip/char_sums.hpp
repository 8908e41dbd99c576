#pragma once

#include <memory>
#include <string>

#include "recip/characters.hpp"
#include "recip/exp_sums.hpp"

namespace recip {

struct VArgs {
    i64 m1 = 1, m2 = 1, m3 = 1, r = 1;
};

struct VCaseResult {
    ExpSumValue value;
    std::string case_label;
    bool exact_identity = true;  // false when the case only carries a bound
    double bound = 0.0;          // magnitude bound for bound-only cases, else 0
    bool vanishing = false;      // clause asserts the value is zero
    double envelope = 0.0;       // p-power size bound stated for the whole family
};

// (1/q) sum_{t,u mod q} tau(chibar, t + m2 u) chibar(r t + m1 m2) tau(chi, u) chi(r u - m1) tau(psibar, m3 t).
ExpSumValue v_bruteforce(const DirichletCharacter& chi, const DirichletCharacter& psi, const VArgs& a,
                         Backend backend = Backend::Auto);

// True when q = p^beta and the arguments satisfy m3 | m1 | m2 with every argument a power of p.
bool v_local_hypothesis(u64 q, const VArgs& a);

// Case dispatch at a prime power for chi principal or primitive.
// Throws std::domain_error for imprimitive nonprincipal chi and std::invalid_argument
// when the divisibility hypothesis fails.
VCaseResult v_closed_primepower(const DirichletCharacter& chi, const DirichletCharacter& psi, const VArgs& a,
                                Backend backend = Backend::Auto);

// Coprime stripping, CRT factorization over prime powers, local closed forms where available.
ExpSumValue v_general(const DirichletCharacter& chi, const DirichletCharacter& psi, const VArgs& a,
                      Backend backend = Backend::Auto);

// g(chi, psi) = sum_{t,u} chibar(t) chi(t+1) chi(u) chibar(u+1) psi(ut - 1).
ExpSumValue g_sum(const DirichletCharacter& chi, const DirichletCharacter& psi, Backend backend = Backend::Auto);

// Names of the local case families, used in reports.
std::string v_family(const DirichletCharacter& chi, const DirichletCharacter& psi);

}  // namespace recip
