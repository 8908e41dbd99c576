#include <doctest.h>

#include <cmath>

#include "recip/char_sums.hpp"
#include "recip/verify.hpp"

using namespace recip;

namespace {

DirichletCharacter quadratic(u64 q) {
    for (const auto& c : DirichletCharacter::enumerate_primitive(q))
        if (c.order() == 2) return c;
    throw std::logic_error("none");
}

bool same_exact(const ExpSumValue& a, const ExpSumValue& b) {
    if (a.is_exact() && b.is_exact()) return *a.exact == *b.exact;
    return std::abs(a.numeric - b.numeric) < 1e-9;
}

}  // namespace

TEST_CASE("brute force at small prime powers") {
    const auto p3 = DirichletCharacter::principal(3), p4 = DirichletCharacter::principal(4);
    CHECK(*v_bruteforce(p3, p3, {3, 3, 3, 1}, Backend::Exact).exact == CyclotomicNumber::rational(1, 8, 3));
    CHECK(*v_bruteforce(p4, p4, {1, 1, 1, 1}, Backend::Exact).exact == CyclotomicNumber::integer(1, 8));
    CHECK(*v_bruteforce(p3, p3, {1, 1, 1, 1}, Backend::Exact).exact == CyclotomicNumber::rational(1, 14, 3));
}

TEST_CASE("prime-power closed forms") {
    const auto chi = quadratic(5);
    const auto r = v_closed_primepower(chi, DirichletCharacter::principal(5), {1, 1, 1, 1}, Backend::Exact);
    CHECK(r.value.numeric.real() == doctest::Approx(-6));
    CHECK(std::abs(r.value.numeric.imag()) < 1e-12);

    const auto p3 = DirichletCharacter::principal(3);
    const auto psi = quadratic(3);
    const auto a = v_closed_primepower(p3, psi, {1, 1, 1, 1}, Backend::Exact);
    const auto expect = std::conj(gauss(psi, 1, Backend::Numeric).numeric) * (4.0 / 3.0);
    CHECK(std::abs(a.value.numeric - expect) < 1e-12);
    const auto z = v_closed_primepower(p3, psi, {3, 3, 3, 1}, Backend::Exact);
    CHECK(z.value.is_exact());
    CHECK(z.value.exact->is_zero());

    CHECK_THROWS_AS(v_closed_primepower(p3, psi, {2, 3, 3, 1}), std::invalid_argument);
    const auto imprim = DirichletCharacter::enumerate(9);
    for (const auto& c : imprim)
        if (!c.is_principal() && !c.is_primitive()) CHECK_THROWS_AS(v_closed_primepower(c, c, {1, 1, 1, 1}), std::domain_error);
}

TEST_CASE("closed forms agree with brute force over small prime powers") {
    for (VFamily f : {VFamily::PrincipalPrincipal, VFamily::PrincipalNonprincipal, VFamily::PrimitivePrincipal,
                      VFamily::PrimitiveNonprincipal}) {
        const auto rep = verify_v_closed_forms(f, 9, Backend::Exact);
        CHECK(rep.passed());
        CHECK(rep.records.size() > 10);
    }
    CHECK(parse_v_family("vchi-4.5") == VFamily::PrimitivePrincipal);
    CHECK(parse_v_family("all") == VFamily::All);
    CHECK_THROWS(parse_v_family("nope"));
}

TEST_CASE("coprime twist and CRT factorization") {
    const u64 q = 15;
    for (const auto& chi : DirichletCharacter::enumerate(q))
        for (const auto& psi : DirichletCharacter::enumerate(q)) {
            const VArgs base{1, 3, 1, 1}, twisted{2, 6, 1, 1};
            const auto lhs = v_bruteforce(chi, psi, twisted, Backend::Numeric).numeric;
            const auto rhs = psi.value(4) * v_bruteforce(chi, psi, base, Backend::Numeric).numeric;
            CHECK(std::abs(lhs - rhs) < 1e-9);
            if (chi.is_principal() && psi.is_principal()) {
                CHECK(same_exact(v_general(chi, psi, {1, 1, 1, 1}, Backend::Exact),
                                 v_bruteforce(chi, psi, {1, 1, 1, 1}, Backend::Exact)));
            }
            {
                CHECK(std::abs(v_general(chi, psi, {1, 1, 1, 1}, Backend::Numeric).numeric -
                               v_bruteforce(chi, psi, {1, 1, 1, 1}, Backend::Numeric).numeric) < 1e-9);
            }
        }
    CHECK(verify_v_multiplicativity(16, 5, 40, 3).passed());
}

TEST_CASE("g sums") {
    for (u64 q : {5ul, 7ul, 9ul, 13ul})
        for (const auto& chi : DirichletCharacter::enumerate_primitive(q))
            for (const auto& psi : DirichletCharacter::enumerate_primitive(q)) {
                const auto v = v_bruteforce(chi, psi, {1, 1, 1, 1}, Backend::Numeric).numeric;
                const auto g = g_sum(chi, psi, Backend::Numeric).numeric;
                const auto rhs = chi.value(-1) * gauss(psi.conj(), 1, Backend::Numeric).numeric * g;
                CHECK(std::abs(v - rhs) < 1e-9);
            }
    for (u64 q : {8ul, 16ul})
        for (const auto& chi : DirichletCharacter::enumerate_primitive(q))
            for (const auto& psi : DirichletCharacter::enumerate_primitive(q)) {
                const auto g = g_sum(chi, psi, Backend::Exact);
                CHECK(g.exact->is_zero());
            }
    for (u64 p : {3ul, 5ul, 7ul, 11ul, 13ul})
        for (const auto& chi : DirichletCharacter::enumerate_primitive(p))
            for (const auto& psi : DirichletCharacter::enumerate_primitive(p))
                CHECK(std::abs(g_sum(chi, psi, Backend::Numeric).numeric) <= 3.0 * p);
}
