#include <doctest.h>

#include <cmath>
#include <numbers>

#include "recip/transforms.hpp"
#include "recip/quadrature.hpp"

using namespace recip;
constexpr double pi = std::numbers::pi;

TEST_CASE("test-function pair") {
    const TestFunctionPair p(100, 10, 4);
    for (int n = 1; n <= 4; ++n) CHECK(std::abs(p.h(cplx(0, n - 0.5))) < 1e-12);
    CHECK(p.h(100.0) > 0.1);
    CHECK(p.h(100.0) < 10.0);
    CHECK(p.h_hol(100.0) == 1.0);
    CHECK(p.h(cplx(3.0, 0)).real() == doctest::Approx(p.h(-3.0)));
    for (int k : TestFunctionPair(30, 5, 3).hol_weights()) {
        CHECK(k % 2 == 0);
        CHECK(k >= 30 - 2 * 5);
        CHECK(k <= 30 + 2 * 5 + 2);
    }
    CHECK(bump_Omega(0.5) == 1.0);
    CHECK(bump_Omega(2.5) == 0.0);
    CHECK(bump_Omega(1.5) > 0.0);
}

TEST_CASE("kernel Mellin transforms") {
    for (int k : {2, 4, 6, 8}) CHECK(std::abs(mellin_J_hol(k, 1.0) - std::pow(cplx(0, 1), -k) / 2.0) < 1e-12);
    for (double r : {0.5, 1.0, 3.0}) {
        const cplx S(0.6, 1);
        CHECK(std::abs(mellin_J_plus(r, S) - mellin_J_plus_numeric(r, S)) < 1e-6 * std::abs(mellin_J_plus(r, S)));
    }
}

TEST_CASE("Mellin routes, moments and main terms") {
    const TransformEngine eng(TestFunctionPair(30, 5, 3));
    for (cplx s : {cplx(0.3, 0), cplx(0.3, 2), cplx(-0.7, 1)}) CHECK(mellin_H_routes(eng, s).rel < 1e-6);
    for (int l = 0; l <= 3; ++l) {
        CHECK(std::abs(eng.F_moment(l)) < 1e-8 * 150);
        CHECK(std::abs(eng.F_hol_moment(l)) < 1e-8 * 150);
    }
    CHECK(std::abs(eng.D(0.0)) < 1e-8 * 150);
    CHECK(std::abs(eng.D(-1.0)) < 1e-6 * 150);
    // Fh(0) = int h(r) r tanh(pi r) dr.
    const auto& p = eng.pair();
    const double f0 =
        gauss_panels([&](double r) { return cplx(p.h(r) * r * std::tanh(pi * r)); }, -80, 80, 160, 20).real();
    CHECK(eng.F(0.0) == doctest::Approx(f0).epsilon(1e-9));
    const auto m = eng.main_terms();
    CHECK(m.maass_mass > 0);
    double hol = 0;
    for (int k : p.hol_weights()) hol += (k - 1) / (2 * pi * pi) * p.h_hol(k);
    CHECK(m.hol_mass == doctest::Approx(hol).epsilon(1e-13));
    for (double mass : {m.maass_mass, m.hol_mass}) {
        CHECK(mass > 0.01 * 150);
        CHECK(mass < 10.0 * 150);
    }
}

TEST_CASE("hypergeometric identity") {
    for (int sign : {1, -1}) {
        CHECK(hyper_identity_check(1.3, 0.15, 0.4, sign).rel < 1e-6);
        CHECK(hyper_identity_check(1.3, 0.02, 0.4, sign).rel < 1e-5);
        const auto a = hyper_identity_check(0.7, 0.25, 0.1, sign), b = hyper_identity_check(0.7, 0.25, -0.1, sign);
        CHECK(std::abs(a.rhs - b.rhs) < 1e-10 * std::abs(a.rhs));
    }
}

TEST_CASE("H weight: conjugate symmetry and abscissa independence") {
    const TransformEngine eng(TestFunctionPair(30, 5, 3));
    const std::array<cplx, 3> mu{};
    HScriptOptions a, b;
    a.sigma2 = 0.3;
    b.sigma2 = 0.7;
    const HScriptEvaluator Ha(eng, mu, a), Hb(eng, mu, b);
    for (double t : {-4.0, 0.5, 3.0}) {
        const cplx x = Ha.eval(t, 1).value, y = Hb.eval(t, 1).value;
        CHECK(std::abs(x - y) < 1e-8 * std::abs(x));
        CHECK(std::abs(Ha.eval(t, -1).value - std::conj(Ha.eval(-t, 1).value)) < 1e-8 * std::abs(x));
    }
}
