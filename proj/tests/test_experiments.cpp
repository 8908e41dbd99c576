#include <doctest.h>

#include <cmath>
#include <sstream>

#include "recip/experiments.hpp"
#include "recip/quadrature.hpp"
#include "recip/special_functions.hpp"
#include "recip/voronoi.hpp"

using namespace recip;

namespace {

const HeckeCoefficientSource F0;

std::string jsonl(const ExperimentReport& r) {
    std::ostringstream os;
    write_report(os, r, Format::Jsonl);
    return os.str();
}

}  // namespace

TEST_CASE("Voronoi series") {
    const auto phi = voronoi_phi(1, 1, 1, 2.5, F0, 400000);
    const double err = std::abs(phi.value - std::pow(riemann_zeta(2.5), 3));
    CHECK(err < 1e-6);
    CHECK(err <= phi.tail);
    // Kloosterman rows: S(a, n; m) for n = 0..m-1.
    const auto row = kloosterman_row(1, 3);
    REQUIRE(row.size() == 3);
    CHECK(std::abs(row[1] + 1.0) < 1e-12);
    CHECK_THROWS_AS(validate_voronoi_region(1.8, -4.2, VoronoiContour{}), std::domain_error);
    CHECK_NOTHROW(validate_voronoi_region(4.0, -14.0, VoronoiContour{}));
}

TEST_CASE("Voronoi identity, trivial modulus") {
    VoronoiTruncation tr;
    const auto rep = voronoi_identity_check(DirichletCharacter(), F0, 4.0, -14.0, VoronoiContour{}, tr, 1e-3, false);
    CHECK(rep.passed());
}

TEST_CASE("moment grids") {
    const NodeSet g = t_grid(3, 8);
    double w = 0;
    for (double x : g.w) w += x;
    CHECK(w == doctest::Approx(6.0).epsilon(1e-13));
    CHECK_THROWS(first_primitive(2));
    CHECK(first_primitive(5).is_primitive());
}

TEST_CASE("GL(3) moment at modulus 1 matches the sixth moment of zeta") {
    CHECK(gl3_second_moment_value(1, 1, 3, F0, 8) == doctest::Approx(6.1771166238569750171).epsilon(1e-8));
    CHECK(gl3_second_moment({{1, 1}, {5, 1}}, 2, F0, 8, 20).passed());
}

TEST_CASE("coset moment") {
    const auto psi = first_primitive(7);
    const auto a = coset_second_moment_value(psi, 1, 2, 8);
    const double direct = gauss_panels([&](double t) { return cplx(std::norm(dirichlet_L(cplx(0.5, t), psi))); }, -2, 2,
                                       40, 20).real();
    CHECK(a.value == doctest::Approx(direct).epsilon(1e-8));
    const auto rep = coset_second_moment(psi, {1, 7}, {1, 2, 3}, 8, 20);
    CHECK(rep.passed());
    CHECK(jsonl(rep) == jsonl(coset_second_moment(psi, {1, 7}, {1, 2, 3}, 8, 20)));
}

TEST_CASE("dual moment is monotone in T") {
    const auto chi1 = first_primitive(5);
    DualOptions o;
    double last = -1;
    for (double T : {1.0, 2.0, 3.0}) {
        o.T = T;
        const auto d = dual_moment_value(chi1, 3, F0, o);
        CHECK(d.abs_value >= last);
        last = d.abs_value;
    }
}

TEST_CASE("Heath-Brown tables") {
    const auto qs = hb_sample_moduli(100, 8);
    CHECK(qs.size() == 8);
    const auto rep = hb_bound_table(qs, 4, 4, 10);
    CHECK(rep.passed());
    CHECK(jsonl(rep) == jsonl(hb_bound_table(qs, 4, 4, 10)));
}
