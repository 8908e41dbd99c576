#include <doctest.h>

#include <random>

#include "recip/arith.hpp"

using namespace recip;

namespace {

// Independent trial-division oracle.
std::vector<std::pair<u64, int>> naive_factor(u64 n) {
    std::vector<std::pair<u64, int>> out;
    for (u64 p = 2; p <= n; ++p) {
        int e = 0;
        while (n % p == 0) n /= p, ++e;
        if (e) out.emplace_back(p, e);
    }
    return out;
}

u64 naive_phi(u64 n) {
    u64 c = 0;
    for (u64 a = 1; a <= n; ++a) c += gcd_u(a, n) == 1;
    return c;
}

}  // namespace

TEST_CASE("factorize") {
    CHECK(factorize(12).factors == std::vector<std::pair<u64, int>>{{2, 2}, {3, 1}});
    CHECK(factorize(1).factors.empty());
    CHECK(factorize(360).factors == naive_factor(360));
    for (u64 n = 1; n <= 2000; ++n) CHECK(factorize(n).factors == naive_factor(n));
    const auto f = factorize(360);
    CHECK(f.valuation(2) == 3);
    CHECK(f.prime_power(3) == 9);
    CHECK_FALSE(f.has_prime(7));
}

TEST_CASE("phi and moebius") {
    CHECK(euler_phi(9) == 6);
    CHECK(moebius(30) == -1);
    CHECK(euler_phi(1) == 1);
    CHECK(moebius(1) == 1);
    for (u64 n = 1; n <= 500; ++n) {
        CHECK(euler_phi(n) == naive_phi(n));
        // sum_{d | n} mu(d) = [n = 1]
        int s = 0;
        for (u64 d : divisors(n)) s += moebius(d);
        CHECK(s == (n == 1 ? 1 : 0));
    }
}

TEST_CASE("split_q_infinity") {
    CHECK(split_q_infinity(12, factorize(2)) == std::pair<u64, u64>{3, 4});
    CHECK(split_q_infinity(5, factorize(3)) == std::pair<u64, u64>{5, 1});
    CHECK(split_q_infinity(72, factorize(6)) == std::pair<u64, u64>{1, 72});
    for (u64 c = 1; c <= 300; ++c)
        for (u64 q : {1ul, 2ul, 6ul, 10ul, 45ul}) {
            const auto [a, b] = split_q_infinity(c, factorize(q));
            CHECK(a * b == c);
            CHECK(gcd_u(a, q) == 1);
            for (auto [p, e] : factorize(b).factors) CHECK(q % p == 0);
        }
}

TEST_CASE("squarefree_squarefull_split") {
    CHECK(squarefree_squarefull_split(12) == std::pair<u64, u64>{3, 4});
    CHECK(squarefree_squarefull_split(1) == std::pair<u64, u64>{1, 1});
    CHECK(squarefree_squarefull_split(360) == std::pair<u64, u64>{5, 72});
    for (u64 n = 1; n <= 1000; ++n) {
        const auto [a, b] = squarefree_squarefull_split(n);
        CHECK(a * b == n);
        CHECK(gcd_u(a, b) == 1);
        CHECK(is_squarefree(a));
        CHECK(is_squarefull(b));
    }
}

TEST_CASE("alpha_factor") {
    CHECK(alpha_factor(factorize(1), 1, 1) == 1);
    CHECK(alpha_factor(factorize(3), 3, 3) == mpq_class(2, 3));
    CHECK(alpha_factor(factorize(6), 2, 1) == mpq_class(2, 3));
}

TEST_CASE("modular helpers") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        const u64 m = 2 + rng() % 10000;
        const i64 a = static_cast<i64>(rng() % 100000) - 50000;
        if (gcd_u(static_cast<u64>(mod_floor(a, static_cast<i64>(m))), m) != 1) {
            CHECK_THROWS_AS(inv_mod(a, m), std::domain_error);
            continue;
        }
        CHECK(mul_mod(static_cast<u64>(mod_floor(a, static_cast<i64>(m))), inv_mod(a, m), m) == 1 % m);
    }
    CHECK(pow_mod(3, 100, 7) == 4);  // 3^6 = 1 mod 7, 3^4 = 81 = 4
    CHECK(crt({2, 3}, {3, 5}) == 8);
    CHECK_THROWS(ipow(10, 30));
    CHECK(lcm_u(4, 6) == 12);
    CHECK(is_prime(97));
    CHECK_FALSE(is_prime(91));
}
