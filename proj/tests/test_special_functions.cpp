#include <doctest.h>

#include <cmath>
#include <numbers>

#include "recip/quadrature.hpp"
#include "recip/special_functions.hpp"

using namespace recip;
constexpr double pi = std::numbers::pi;

TEST_CASE("Gamma") {
    for (double x : {0.3, 1.0, 2.5, 7.25, 15.5}) CHECK(gamma_c(x).real() == doctest::Approx(std::tgamma(x)).epsilon(1e-13));
    CHECK(std::abs(gamma_c(0.5) - std::sqrt(pi)) < 1e-14);
    // Reflection Gamma(z) Gamma(1 - z) = pi / sin(pi z) off the axis.
    for (cplx z : {cplx(0.3, 2), cplx(-2.7, 0.4), cplx(0.5, 30)}) {
        const cplx lhs = gamma_c(z) * gamma_c(1.0 - z);
        CHECK(std::abs(lhs * std::sin(pi * z) / pi - 1.0) < 1e-11);
    }
    // Duplication.
    const cplx z(1.2, 3.4);
    const cplx dup = gamma_c(z) * gamma_c(z + 0.5) / (std::pow(2.0, 1.0 - 2.0 * z) * std::sqrt(pi) * gamma_c(2.0 * z));
    CHECK(std::abs(dup - 1.0) < 1e-12);
    CHECK(rgamma_c(-3.0) == cplx(0));
    CHECK_THROWS_AS(lgamma_c(-2.0), std::domain_error);
}

TEST_CASE("G functions") {
    const cplx gp = G_pm(0.5, 1), gm = G_pm(0.5, -1);
    CHECK(std::abs(gp - std::polar(1.0 / std::sqrt(2.0), pi / 4)) < 1e-14);
    CHECK(std::abs(gm - std::polar(1.0 / std::sqrt(2.0), -pi / 4)) < 1e-14);
    const cplx s(0.3, 4);
    CHECK(std::abs(G0(s) - (G_pm(s, 1) + G_pm(s, -1))) < 1e-13 * std::abs(G0(s)));
    CHECK(std::abs(G1(s) - (G_pm(s, 1) - G_pm(s, -1)) / cplx(0, 1)) < 1e-13 * std::abs(G1(s)));
    CHECK(Omega_pm(2.0, 1) == 2.0);
    CHECK(Omega_pm(-2.0, 1) == 0.0);
}

TEST_CASE("Bessel J") {
    CHECK(std::abs(bessel_J(0.0, 1e-8) - 1.0) < 1e-14);
    for (double nu : {0.0, 1.0, 2.5, 7.0})
        for (double x : {0.1, 1.0, 5.0, 20.0, 50.0})
            CHECK(std::abs(bessel_J(nu, x).real() - std::cyl_bessel_j(nu, x)) < 1e-12);
    CHECK_THROWS_AS(bessel_J(0.0, 80.0), std::domain_error);
    for (cplx nu : {cplx(1, 0), cplx(0, 2), cplx(3, 0)})
        for (cplx s : {cplx(0.5, 0), cplx(0.3, 2)}) {
            const cplx a = bessel_J_mellin_numeric(nu, s), b = bessel_J_mellin_closed(nu, s);
            CHECK(std::abs(a - b) < 1e-8 * std::abs(b));
        }
}

TEST_CASE("zeta and Dirichlet L") {
    CHECK(std::abs(riemann_zeta(2.0) - pi * pi / 6) < 1e-10);
    CHECK(std::abs(riemann_zeta(-1.0) + 1.0 / 12) < 1e-12);
    CHECK(std::abs(hurwitz_zeta(3.0, 0.5) - 7.0 * riemann_zeta(3.0)) < 1e-11);
    // Independent oracle: the integral of |zeta(1/2 + it)|^2 over [-5, 5] (mpmath, 30 digits).
    const double z2 = gauss_panels([](double t) { return cplx(std::norm(riemann_zeta(cplx(0.5, t)))); }, -5, 5, 40, 20).real();
    CHECK(z2 == doctest::Approx(5.3584455777471111242).epsilon(1e-10));
    for (u64 q : {3ul, 4ul, 7ul, 8ul, 15ul})
        for (const auto& psi : DirichletCharacter::enumerate_primitive(q)) {
            CHECK(functional_equation_residual(cplx(0.3, 2), psi) < 1e-8);
            CHECK(std::abs(std::abs(root_number(psi)) - 1.0) < 1e-12);
            // L(2, psi) against its Dirichlet series.
            cplx s = 0;
            for (int n = 1; n <= 200000; ++n) s += psi.value(n) / (double(n) * n);
            CHECK(std::abs(dirichlet_L(2.0, psi) - s) < 1e-5);
        }
}

TEST_CASE("GL(3) L-functions") {
    const HeckeCoefficientSource F;
    const DirichletCharacter one;
    const cplx s(2.5, 1);
    CHECK(std::abs(gl3_L(s, F, one).value - std::pow(riemann_zeta(s), 3)) < 1e-12);
    const auto F2 = HeckeCoefficientSource::eisenstein({cplx(0, 0.3), cplx(0, -0.1), cplx(0, -0.2)});
    for (const auto& psi : DirichletCharacter::enumerate(5)) {
        const auto a = gl3_L(2.5, F2, psi, LRoute::Series, 2000000), b = gl3_L(2.5, F2, psi, LRoute::Product);
        CHECK(std::abs(a.value - b.value) < 1e-8);
        CHECK(std::abs(a.value - b.value) <= a.tail);
        CHECK(std::abs(gl3_L(2.5, F, psi).value - std::conj(gl3_L(2.5, F, psi.conj()).value)) < 1e-12);
    }
    // Independent oracle: the integral of |zeta(1/2 + it)|^6 over [-3, 3] (mpmath, 30 digits).
    const double z6 = gauss_panels([&](double t) { return cplx(std::norm(gl3_L(cplx(0.5, t), F, one).value)); }, -3, 3,
                                   30, 20).real();
    CHECK(z6 == doctest::Approx(6.1771166238569750171).epsilon(1e-9));
}

TEST_CASE("hypergeometric 2F1") {
    CHECK(std::abs(hyp2f1(0.3, 1.7, 2.2, 0.0) - 1.0) < 1e-15);
    CHECK(std::abs(hyp2f1(1, 1, 2, 0.3) + std::log(0.7) / 0.3) < 1e-13);
    // d/dx 2F1(a,b;c;x) = (ab/c) 2F1(a+1,b+1;c+1;x).
    const cplx a(0.5, 0.8), b(0.5, -0.8), c(1.5, 0);
    const cplx x(-0.4, 0), h(1e-5, 0);
    const cplx fd = (hyp2f1(a, b, c, x + h) - hyp2f1(a, b, c, x - h)) / (2.0 * h);
    CHECK(std::abs(fd - a * b / c * hyp2f1(a + 1.0, b + 1.0, c + 1.0, x)) < 1e-6);
    // Euler transformation 2F1(a,b;c;x) = (1-x)^{-a} 2F1(a, c-b; c; x/(x-1)).
    const cplx e = std::pow(1.0 - x, -a) * hyp2f1(a, c - b, c, x / (x - 1.0));
    CHECK(std::abs(hyp2f1(a, b, c, x) - e) < 1e-12);
}

TEST_CASE("quadrature") {
    const auto& r = gauss_legendre(10);
    double s = 0;
    for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * std::pow(r.x[i], 18);
    CHECK(s == doctest::Approx(2.0 / 19).epsilon(1e-14));
    const auto gk = gauss_kronrod([](double x) { return cplx(std::exp(x)); }, 0, 1, 1e-14, 1e-14);
    CHECK(gk.converged);
    CHECK(std::abs(gk.value - (std::exp(1.0) - 1)) < 1e-13);
    const auto ts = tanh_sinh([](double x, double d) { return cplx(1 / std::sqrt(x < 0.5 ? d : x)); }, 0, 1, 1e-12);
    CHECK(std::abs(ts.value - 2.0) < 1e-10);
    NodeSet ns;
    ns.add_uniform(-2, 3, 4, 8);
    CHECK(ns.size() == 32);
    CHECK(std::abs(integrate([](double x) { return cplx(x * x); }, ns) - 35.0 / 3) < 1e-12);
}
