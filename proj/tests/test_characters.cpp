#include <doctest.h>

#include <cmath>

#include "recip/characters.hpp"

using namespace recip;

namespace {

DirichletCharacter of_order(u64 q, u64 order, bool primitive = false) {
    for (const DirichletCharacter& c : DirichletCharacter::enumerate(q))
        if (c.order() == order && (!primitive || c.is_primitive())) return c;
    throw std::logic_error("no such character");
}

// Least d | q such that chi is constant on residue classes mod d among units.
u64 brute_conductor(const DirichletCharacter& chi) {
    const u64 q = chi.modulus();
    for (u64 d = 1; d <= q; ++d) {
        if (q % d) continue;
        bool ok = true;
        for (u64 n = 1; n < q && ok; ++n)
            if (gcd_u(n, q) == 1 && n % d == 1 % d) ok = std::abs(chi.value(static_cast<i64>(n)) - 1.0) < 1e-12;
        if (ok) return d;
    }
    return q;
}

int legendre(i64 a, u64 p) {
    a = mod_floor(a, static_cast<i64>(p));
    if (a == 0) return 0;
    return pow_mod(static_cast<u64>(a), (p - 1) / 2, p) == 1 ? 1 : -1;
}

}  // namespace

TEST_CASE("evaluate") {
    const auto chi0 = DirichletCharacter::principal(6);
    CHECK(chi0.evaluate(5) == CyclotomicNumber::integer(1, 1));
    CHECK(chi0.evaluate(4).is_zero());
    const auto quad5 = of_order(5, 2);
    CHECK(quad5.evaluate(2) == CyclotomicNumber::integer(1, -1));
    for (u64 q = 1; q <= 40; ++q)
        for (const auto& c : DirichletCharacter::enumerate(q)) CHECK(std::abs(c.value(1) - 1.0) < 1e-15);
}

TEST_CASE("real characters mod primes are Legendre symbols") {
    for (u64 p : {3ul, 5ul, 7ul, 11ul, 13ul, 29ul}) {
        const auto chi = of_order(p, 2);
        for (i64 n = -30; n <= 30; ++n) CHECK(chi.value(n).real() == doctest::Approx(legendre(n, p)));
    }
}

TEST_CASE("conductor") {
    CHECK(DirichletCharacter::principal(12).conductor() == 1);
    CHECK(of_order(9, 2).conductor() == 3);
    CHECK(of_order(4, 2).conductor() == 4);
    for (u64 q = 1; q <= 48; ++q)
        for (const auto& c : DirichletCharacter::enumerate(q)) {
            CHECK(c.conductor() == brute_conductor(c));
            const auto star = c.primitive_part();
            CHECK(star.is_primitive());
            CHECK(star.induce(q) == c);
        }
}

TEST_CASE("enumeration and group structure") {
    CHECK(DirichletCharacter::enumerate(8).size() == 4);
    for (u64 q = 1; q <= 60; ++q) {
        const auto all = DirichletCharacter::enumerate(q);
        CHECK(all.size() == euler_phi(q));
        // Orthogonality: sum_chi chi(n) = phi(q) [n = 1 mod q].
        for (i64 n = 0; n < static_cast<i64>(q); ++n) {
            std::complex<double> s = 0;
            for (const auto& c : all) s += c.value(n);
            const double expect = (q == 1 || n == 1) ? static_cast<double>(euler_phi(q)) : 0.0;
            CHECK(std::abs(s - expect) < 1e-9);
        }
        // Primitive count is the Dirichlet convolution of phi with mu twice.
        i64 prim = 0;
        for (u64 d : divisors(q)) prim += static_cast<i64>(euler_phi(d)) * moebius(q / d);
        CHECK(static_cast<i64>(DirichletCharacter::enumerate_primitive(q).size()) == prim);
    }
}

TEST_CASE("multiply, conj, local components") {
    for (u64 q : {7ul, 12ul, 15ul, 16ul, 45ul}) {
        for (const auto& c : DirichletCharacter::enumerate(q)) {
            CHECK(multiply(c, c.conj()).is_principal());
            CHECK(combine_components(c.local_components()) == c);
        }
    }
    const auto quad15 = of_order(15, 2, true);
    const auto parts = quad15.local_components();
    REQUIRE(parts.size() == 2);
    CHECK(parts[0] == of_order(3, 2));
    CHECK(parts[1] == of_order(5, 2));
}

TEST_CASE("labels round-trip and reject bad input") {
    for (u64 q : {1ul, 8ul, 24ul, 35ul})
        for (const auto& c : DirichletCharacter::enumerate(q)) CHECK(DirichletCharacter::parse(c.label()) == c);
    CHECK_THROWS(DirichletCharacter::parse("5:1,2"));
    CHECK_THROWS(DirichletCharacter::parse("x"));
}
