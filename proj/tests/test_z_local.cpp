#include <doctest.h>

#include <cmath>

#include "recip/verify.hpp"
#include "recip/z_local.hpp"

using namespace recip;

namespace {

DirichletCharacter quadratic(u64 q) {
    for (const auto& c : DirichletCharacter::enumerate_primitive(q))
        if (c.order() == 2) return c;
    throw std::logic_error("none");
}

const HeckeCoefficientSource F0;

}  // namespace

TEST_CASE("trivial modulus") {
    const DirichletCharacter one;
    CHECK(z_global(one, one, F0, 0.3).value == cplx(1));
    CHECK(z_global_wz(one, one, F0, 0.9, 0.2).value == cplx(1));
}

TEST_CASE("local factor, principal chi and nonprincipal psi") {
    const double t = 0.7;
    for (u64 comp : {1ul, 7ul}) {
        const DirichletCharacter chi = DirichletCharacter::principal(3), psi = quadratic(3);
        const DirichletCharacter pc = comp == 1 ? DirichletCharacter() : DirichletCharacter::enumerate(7)[1];
        const auto lf = z_tilde(chi, psi, pc, F0, t);
        const cplx expect = std::conj(pc.value(3)) * std::conj(gauss(psi, 1, Backend::Numeric).numeric) *
                            std::pow(3.0, cplx(-1.5, t)) * 4.0;
        CHECK(std::abs(lf.value - expect) < 1e-12);
    }
    // Higher prime powers vanish.
    for (u64 q : {9ul, 25ul})
        for (const auto& psi : DirichletCharacter::enumerate(q))
            if (!psi.is_principal()) {
                const auto lf = z_tilde(DirichletCharacter::principal(q), psi, DirichletCharacter(), F0, 0.4);
                CHECK(lf.value == cplx(0));
            }
}

TEST_CASE("principal psi closed forms") {
    CHECK(std::abs(z_w_special(DirichletCharacter::principal(4), F0, 0.8) - 4.0) < 1e-13);
    CHECK(std::abs(z_w_special(DirichletCharacter::principal(8), F0, 1.3) - 8.0) < 1e-13);
    const auto F = HeckeCoefficientSource::eisenstein({cplx(0, 0.2), cplx(0, -0.5), cplx(0, 0.3)});
    for (const auto& chi : {DirichletCharacter::principal(3), quadratic(5), DirichletCharacter::enumerate_primitive(5)[0]}) {
        for (double w : {0.9, 1.1}) {
            const cplx closed = z_w_special(chi, F, w);
            const cplx direct = z_direct(chi, DirichletCharacter::principal(chi.modulus()), F, w, 2 * w - 1.5);
            CHECK(std::abs(closed - direct) < 1e-10 * std::max(1.0, std::abs(direct)));
        }
    }
}

TEST_CASE("factorization against the direct global sum") {
    const auto rep = verify_z_factorization({5, 12, 15}, 5);
    CHECK(rep.passed());
}

TEST_CASE("support and the w -> 1/2 limit") {
    CHECK(verify_z_support({{5, 3}, {5, 12}}).passed());
    // (5, 3), quadratic chi1: chi1(-1) q1^2 q2 prod_{p | 15} (1 - 1/p)^3.
    const cplx lim = z_limit_corollary(quadratic(5), 3, F0);
    CHECK(std::abs(lim - 75.0 * std::pow(2.0 / 3, 3) * std::pow(4.0 / 5, 3)) < 1e-12);
    CHECK(z_limit_corollary(quadratic(5), 4, F0) == cplx(0));
    CHECK(std::abs(z_limit_corollary(DirichletCharacter(), 1, F0) - 1.0) < 1e-14);
    CHECK(verify_z_limit({{5, 3}}).passed());
    CHECK(z_support_predicted(DirichletCharacter::principal(20), 5, 4));
}

TEST_CASE("region") {
    CHECK(z_in_region(0.5, cplx(0, 3)));
    CHECK_FALSE(z_in_region(0.5, 0.6));
    CHECK_FALSE(z_in_region(0.1, 0.0));
}
