#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace recip {

using i64 = std::int64_t;
using u64 = std::uint64_t;

// Factorization of a positive modulus, primes in increasing order.
struct FactoredModulus {
    u64 value = 1;
    std::vector<std::pair<u64, int>> factors;

    bool has_prime(u64 p) const;
    int valuation(u64 p) const;
    u64 prime_power(u64 p) const;  // p^{v_p(value)}
    std::vector<u64> primes() const;
    std::string to_string() const;
};

// Process-wide cached trial-division factorization.
FactoredModulus factorize(u64 n);

u64 gcd_u(u64 a, u64 b);
u64 lcm_u(u64 a, u64 b);
i64 mod_floor(i64 a, i64 m);
u64 mul_mod(u64 a, u64 b, u64 m);
u64 pow_mod(u64 a, u64 e, u64 m);
// Inverse of a modulo m; throws std::domain_error if gcd(a, m) != 1.
u64 inv_mod(i64 a, u64 m);
// Exact integer power with overflow detection.
u64 ipow(u64 b, unsigned e);
int valuation(u64 n, u64 p);
bool is_prime(u64 n);

u64 euler_phi(u64 n);
int moebius(u64 n);
std::vector<u64> divisors(u64 n);
bool is_squarefree(u64 n);
bool is_squarefull(u64 n);

// (c', c_q) with c = c' * c_q, c_q | q^infty and gcd(c', q) = 1.
std::pair<u64, u64> split_q_infinity(u64 c, const FactoredModulus& q);
// (squarefree part, squarefull part): n = a * b with a squarefree, b squarefull, coprime.
std::pair<u64, u64> squarefree_squarefull_split(u64 n);

// Product over p | q' with p not dividing q/q_chi of (1 - 1/p), times the
// product over p || q with p not dividing q_chi of (1 - 1/p^2).
mpq_class alpha_factor(const FactoredModulus& q, u64 q_prime, u64 q_chi);

// Chinese remainder: x = a_i mod m_i, moduli pairwise coprime.
u64 crt(const std::vector<u64>& residues, const std::vector<u64>& moduli);

}  // namespace recip
