#include <doctest.h>

#include <cmath>
#include <numbers>

#include "recip/exp_sums.hpp"

using namespace recip;

namespace {

std::complex<double> e(double x) { return std::polar(1.0, 2 * std::numbers::pi * x); }

DirichletCharacter quadratic(u64 q) {
    for (const auto& c : DirichletCharacter::enumerate_primitive(q))
        if (c.order() == 2) return c;
    throw std::logic_error("none");
}

std::complex<double> hb_loop(const DirichletCharacter& psi, i64 h, i64 n) {
    const i64 q = static_cast<i64>(psi.modulus());
    std::complex<double> s = 0;
    for (i64 u = 0; u < q; ++u) s += psi.value(u + h) * std::conj(psi.value(u)) * e(double(n * u) / q);
    return s;
}

}  // namespace

TEST_CASE("Ramanujan sums") {
    CHECK(ramanujan(4, 2) == -2);
    CHECK(ramanujan(9, 9) == 6);
    for (i64 n = -5; n <= 20; ++n) CHECK(ramanujan(1, n) == 1);
    for (u64 q = 1; q <= 120; ++q)
        for (i64 n = 0; n <= 60; ++n) CHECK(ramanujan(q, n) == ramanujan_definition(q, n));
    for (u64 a = 1; a <= 30; ++a)
        for (u64 b = 1; b <= 30; ++b)
            if (gcd_u(a, b) == 1)
                for (i64 n = 0; n < 12; ++n) CHECK(ramanujan(a * b, n) == ramanujan(a, n) * ramanujan(b, n));
}

TEST_CASE("Gauss sums") {
    const auto g = gauss(quadratic(5), 1, Backend::Exact);
    REQUIRE(g.is_exact());
    CHECK(std::abs(g.numeric - std::sqrt(5.0)) < 1e-12);
    CHECK(gauss_closed_induced(DirichletCharacter::principal(4), 2).numeric.real() == doctest::Approx(-2));
    for (u64 q = 1; q <= 30; ++q)
        for (const auto& c : DirichletCharacter::enumerate(q)) {
            if (c.is_primitive()) CHECK(std::abs(std::abs(gauss(c, 1, Backend::Numeric).numeric) - std::sqrt(q)) < 1e-9);
            for (i64 a = 0; a < static_cast<i64>(q); ++a) {
                const auto d = gauss(c, a, Backend::Exact), cl = gauss_closed_induced(c, a, Backend::Exact);
                CHECK(*d.exact == *cl.exact);
            }
        }
}

TEST_CASE("Kloosterman sums") {
    CHECK(std::abs(kloosterman(1, 1, 2).numeric - 1.0) < 1e-12);
    CHECK(std::abs(kloosterman(1, 1, 3).numeric + 1.0) < 1e-12);
    for (u64 c = 1; c <= 24; ++c)
        for (const auto& chi : DirichletCharacter::enumerate(c))
            for (i64 m = 0; m <= 4; ++m)
                for (i64 n = 0; n <= 4; ++n) {
                    const auto a = kloosterman(chi, m, n, c, Backend::Numeric).numeric;
                    const auto b = kloosterman(chi.conj(), n, m, c, Backend::Numeric).numeric;
                    CHECK(std::abs(a - b) < 1e-9);
                }
    // Weil bound at primes.
    for (u64 p : {7ul, 11ul, 13ul, 31ul})
        for (i64 m = 1; m < 5; ++m) CHECK(std::abs(kloosterman(m, 1, p).numeric) <= 2 * std::sqrt(p) + 1e-9);
}

TEST_CASE("Heath-Brown sums") {
    for (u64 q : {5ul, 8ul, 9ul, 13ul}) {
        for (const auto& psi : DirichletCharacter::enumerate_primitive(q)) {
            CHECK(std::abs(heath_brown_S(psi, 0, 0).numeric - double(euler_phi(q))) < 1e-9);
            for (i64 h = 0; h < 4; ++h)
                for (i64 n = 0; n < 4; ++n) {
                    const auto v = heath_brown_S(psi, h, n, Backend::Numeric).numeric;
                    CHECK(std::abs(v - hb_loop(psi, h, n)) < 1e-9);
                    // Substituting u -> u - h conjugates the character.
                    const auto w = e(-double(n * h) / q) * heath_brown_S(psi.conj(), h, -n, Backend::Numeric).numeric;
                    CHECK(std::abs(v - w) < 1e-9);
                }
        }
    }
    const auto psi = quadratic(5);
    CHECK(std::abs(heath_brown_S(psi, 1, 1).numeric - hb_loop(psi, 1, 1)) < 1e-12);
    CHECK_THROWS(heath_brown_S(DirichletCharacter::principal(5), 1, 1));
}

TEST_CASE("backends agree") {
    for (u64 q : {7ul, 12ul, 16ul})
        for (const auto& c : DirichletCharacter::enumerate(q)) {
            const auto a = kloosterman(c, 3, 5, q, Backend::Exact), b = kloosterman(c, 3, 5, q, Backend::Numeric);
            CHECK(std::abs(a.numeric - b.numeric) < 1e-10);
            CHECK(a.backend == "exact");
            CHECK(b.backend == "numeric");
        }
    CHECK(parse_backend("float") == Backend::Numeric);
    CHECK_THROWS(parse_backend("bogus"));
}
