#include <doctest.h>

#include <cmath>
#include <random>

#include "recip/arith.hpp"
#include "recip/cyclotomic.hpp"

using namespace recip;

namespace {

CyclotomicNumber random_element(u64 N, std::mt19937_64& rng) {
    std::vector<i64> counts(N);
    for (auto& c : counts) c = static_cast<i64>(rng() % 7) - 3;
    return CyclotomicNumber::from_exponent_counts(N, counts, 1 + static_cast<i64>(rng() % 3));
}

}  // namespace

TEST_CASE("roots of unity") {
    const auto i = CyclotomicNumber::root_of_unity(4, 1);
    CHECK(i * i == CyclotomicNumber::root_of_unity(4, 2));
    CHECK(i * i == CyclotomicNumber::integer(4, -1));
    CyclotomicNumber s = CyclotomicNumber::zero(5);
    for (int k = 0; k <= 4; ++k) s += CyclotomicNumber::root_of_unity(5, k);
    CHECK(s.is_zero());
    const auto z6 = CyclotomicNumber::root_of_unity(6, 1).embed();
    CHECK(z6.real() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(z6.imag() == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-15));
}

TEST_CASE("rebase") {
    CHECK(CyclotomicNumber::integer(2, -1).rebase(6) == CyclotomicNumber::root_of_unity(6, 3));
    const auto x = CyclotomicNumber::root_of_unity(12, 5) + CyclotomicNumber::rational(12, 1, 3);
    CHECK(x.rebase(12) == x);
    const auto y = CyclotomicNumber::root_of_unity(3, 1).rebase(12).embed();
    CHECK(y.real() == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(y.imag() == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-15));
    CHECK_THROWS(CyclotomicNumber::root_of_unity(4, 1).rebase(6));
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_polynomial(1) == std::vector<i64>{-1, 1});
    CHECK(cyclotomic_polynomial(6) == std::vector<i64>{1, -1, 1});
    for (u64 N = 1; N <= 60; ++N) CHECK(cyclotomic_polynomial(N).size() == euler_phi(N) + 1);
}

TEST_CASE("ring axioms and exact zero test on random elements") {
    std::mt19937_64 rng(11);
    for (u64 N : {1ul, 2ul, 3ul, 8ul, 12ul, 15ul, 20ul, 36ul, 60ul, 105ul, 120ul}) {
        for (int rep = 0; rep < 6; ++rep) {
            const auto a = random_element(N, rng), b = random_element(N, rng), c = random_element(N, rng);
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK((a - a).is_zero());
            CHECK(a.conj().conj() == a);
            const auto e = (a * b).embed() - a.embed() * b.embed();
            CHECK(std::abs(e) < 1e-9 * (1 + std::abs(a.embed() * b.embed())));
            // Exact and numeric zero tests agree.
            CHECK(a.is_zero() == (std::abs(a.embed()) < 1e-9));
            const auto r = a.rebase(2 * N);
            CHECK(std::abs(r.embed() - a.embed()) <= 1e-12 * (1 + std::abs(a.embed())));
        }
    }
}

TEST_CASE("rationals") {
    const auto x = CyclotomicNumber::rational(7, 6, 4);
    CHECK(x.is_rational());
    CHECK(x.rational_value() == std::pair<i64, i64>{3, 2});
    CHECK_THROWS_AS(CyclotomicNumber::root_of_unity(7, 1).rational_value(), std::domain_error);
    // Gauss sum of the quadratic character mod 5 squared is 5.
    CyclotomicNumber g = CyclotomicNumber::zero(5);
    for (int a = 1; a < 5; ++a) {
        const int leg = (a == 1 || a == 4) ? 1 : -1;
        g += CyclotomicNumber::root_of_unity(5, a) * leg;
    }
    CHECK(g * g == CyclotomicNumber::integer(5, 5));
}
