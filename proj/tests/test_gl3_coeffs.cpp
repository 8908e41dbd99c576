#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "recip/gl3_coeffs.hpp"

using namespace recip;

namespace {

u64 brute_d3(u64 n) {
    u64 c = 0;
    for (u64 a = 1; a <= n; ++a)
        for (u64 b = 1; a * b <= n; ++b)
            if (n % (a * b) == 0) ++c;
    return c;
}

}  // namespace

TEST_CASE("parse_complex") {
    CHECK(parse_complex("2") == cplx(2, 0));
    CHECK(parse_complex("1.5i") == cplx(0, 1.5));
    CHECK(parse_complex("-1-2i") == cplx(-1, -2));
    CHECK(parse_complex("0.25+3i") == cplx(0.25, 3));
    CHECK_THROWS(parse_complex("abc"));
}

TEST_CASE("Eisenstein coefficients") {
    const std::array<cplx, 3> zero{};
    CHECK(eisenstein_A(zero, 1, 1) == cplx(1));
    CHECK(std::abs(eisenstein_A1n(zero, 4) - 6.0) < 1e-14);
    for (u64 n = 1; n <= 200; ++n) {
        CHECK(static_cast<u64>(d3(n)) == brute_d3(n));
        CHECK(std::abs(eisenstein_A1n(zero, n) - double(d3(n))) < 1e-9);
    }
    const std::array<cplx, 3> mu{cplx(0, 0.7), cplx(0, -0.2), cplx(0, -0.5)};
    const auto F = HeckeCoefficientSource::eisenstein(mu);
    // Multiplicativity and Hecke relation A(m,1) A(1,n) = sum_{d | (m,n)} A(m/d, n/d).
    for (u64 m = 1; m <= 12; ++m)
        for (u64 n = 1; n <= 12; ++n) {
            cplx rhs = 0;
            for (u64 d = 1; d <= std::min(m, n); ++d)
                if (m % d == 0 && n % d == 0) rhs += F.A(m / d, n / d);
            CHECK(std::abs(F.A(m, 1) * F.A(1, n) - rhs) < 1e-10);
        }
    // Euler polynomial inverts the local generating series of A(p^j, 1).
    for (u64 p : {2ul, 3ul, 7ul}) {
        const auto c = F.euler_dual(p);
        for (int j = 1; j <= 6; ++j) {
            cplx s = 0;
            for (int i = 0; i <= std::min(j, 3); ++i) s += c[i] * F.A(static_cast<u64>(std::pow(p, j - i)), 1);
            CHECK(std::abs(s) < 1e-9);
        }
    }
}

TEST_CASE("coefficient tables") {
    const auto one = HeckeCoefficientSource::from_table_text("1 1 1.0 0.0\n");
    CHECK(one.has(1, 1));
    CHECK_FALSE(one.has(2, 1));
    CHECK_THROWS_AS(one.A(2, 1), std::out_of_range);

    const std::string bad = "# broken multiplicativity\n1 1 1 0\n2 1 1 0\n3 1 1 0\n6 1 5 0\n";
    const auto lax = HeckeCoefficientSource::from_table_text(bad);
    CHECK_FALSE(lax.violations().empty());
    CHECK_THROWS(HeckeCoefficientSource::from_table_text(bad, true));

    const auto path = std::filesystem::temp_directory_path() / "recip_test_table.txt";
    {
        std::ofstream f(path);
        f << "1 1 1 0\n";
    }
    const auto F = HeckeCoefficientSource::parse("table:" + path.string());
    CHECK(F.kind() == HeckeCoefficientSource::Kind::Table);
    std::filesystem::remove(path);
    CHECK(HeckeCoefficientSource::parse("eisenstein:0,0,0").is_eisenstein());
    CHECK_THROWS(HeckeCoefficientSource::parse("cusp:1"));
}
