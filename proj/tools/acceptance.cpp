// Runs every acceptance criterion at its stated tolerance and prints one PASS/FAIL line each.
// Usage: recip_acceptance [--report PATH]   (PATH receives every underlying report as JSON lines)

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "recip/experiments.hpp"
#include "recip/report.hpp"
#include "recip/verify.hpp"

using namespace recip;

namespace {

struct Outcome {
    std::vector<ExperimentReport> reports;
    std::string note;
    bool extra_ok = true;
};

struct Criterion {
    int id;
    std::string label;
    std::function<Outcome()> run;
};

std::string serialize(const ExperimentReport& r) {
    std::ostringstream os;
    write_report(os, r, Format::Jsonl);
    return os.str();
}

Outcome v_closed_forms() {
    return {{verify_v_closed_forms(VFamily::All, 27, Backend::Exact)}, "all four families, p^beta <= 27", true};
}

Outcome v_properties() {
    return {{verify_v_multiplicativity(30, 100, 100, 20240601)}, "q <= 30 exhaustive + 100 random q <= 100", true};
}

Outcome g_sums() { return {{verify_g_sums(4, 100)}, "2^beta <= 16, primes p <= 100", true}; }

Outcome z_machinery() {
    Outcome o;
    o.reports.push_back(verify_z_factorization({3, 4, 5, 8, 9, 12, 15, 20, 28, 30, 45, 60}, 20240601));
    o.reports.push_back(verify_z_support({{5, 3}, {5, 12}, {7, 4}, {8, 3}, {9, 10}}));
    o.reports.push_back(verify_z_closed_forms(prime_powers_up_to(27), 10, 20240601));
    o.reports.push_back(verify_z_limit({{5, 3}, {7, 4}}));
    o.note = "factorization, support, principal-psi closed forms, w -> 1/2 limit";
    return o;
}

Outcome exp_sums() { return {{verify_exp_sums(ExpSumSweep{})}, "Gauss, Kloosterman, Ramanujan, Heath-Brown", true}; }

Outcome transforms() {
    return {{verify_transform_identities(TransformSweep{})}, "routes, kernel Mellin, moments, hypergeometric", true};
}

Outcome localization() {
    return {{verify_hscript_localization(LocalizationSweep{})}, "(T, U, C) = (100, 10, 4)", true};
}

Outcome reciprocity() {
    Outcome o;
    const HeckeCoefficientSource F = HeckeCoefficientSource::parse("eisenstein:0,0,0");
    const VoronoiContour c{};
    try {
        validate_voronoi_region(cplx(1.8, 0), cplx(-4.2, 0), c);
        o.note = "(w, s) = (1.8, -4.2) admissible; ";
    } catch (const std::domain_error&) {
        o.note = "(w, s) = (1.8, -4.2) lies outside the admissible region; run at (4, -14)";
    }
    for (u64 q : {1ul, 3ul}) {
        const DirichletCharacter chi = q == 1 ? DirichletCharacter() : first_primitive(q);
        o.reports.push_back(voronoi_identity_check(chi, F, cplx(4, 0), cplx(-14, 0), c, VoronoiTruncation{}, 1e-3, true));
    }
    return o;
}

Outcome moments() {
    Outcome o;
    const HeckeCoefficientSource F = HeckeCoefficientSource::parse("eisenstein:0,0,0");
    o.reports.push_back(coset_second_moment(first_primitive(101), {1, 101}, {1, 2, 3, 4, 5}, 8, 20));
    o.reports.push_back(coset_second_moment(first_primitive(144), {1, 2, 12, 144}, {1, 2, 3, 4, 5}, 8, 20));
    o.reports.push_back(gl3_second_moment({{1, 1}, {5, 1}, {5, 3}, {8, 3}}, 3, F, 8, 20));
    o.reports.push_back(dual_moment({{5, 3}, {7, 4}}, F, DualOptions{}, 20));
    const auto qs = hb_sample_moduli(500, 30);
    o.reports.push_back(hb_bound_table(qs, 8, 8, 10));
    // Determinism: a rerun serializes byte-identically.
    const bool same = serialize(hb_bound_table(qs, 8, 8, 10)) == serialize(o.reports.back()) &&
                      serialize(gl3_second_moment({{5, 3}}, 3, F, 8, 20)) ==
                          serialize(gl3_second_moment({{5, 3}}, 3, F, 8, 20));
    o.extra_ok = same;
    o.note = std::string("coset, GL(3), dual, Heath-Brown; rerun ") + (same ? "identical" : "DIFFERS");
    return o;
}

Outcome l_functions() { return {{verify_l_functions(50)}, "functional equation q <= 50, zeta(2)", true}; }

}  // namespace

int main(int argc, char** argv) {
    std::string report_path;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--report" && i + 1 < argc)
            report_path = argv[++i];
        else {
            std::cerr << "usage: recip_acceptance [--report PATH]\n";
            return 2;
        }
    }
    std::ofstream report;
    if (!report_path.empty()) report.open(report_path);

    const std::vector<Criterion> criteria{
        {1, "character-sum closed forms vs brute force", v_closed_forms},
        {2, "twist / CRT / g-relation properties", v_properties},
        {3, "g-sum vanishing and size", g_sums},
        {4, "Z local factors, support and limit", z_machinery},
        {5, "exponential-sum identities", exp_sums},
        {6, "transform identities", transforms},
        {7, "H weight localization and decay", localization},
        {8, "end-to-end Voronoi identity", reciprocity},
        {9, "moment experiments", moments},
        {10, "L-function functional equations", l_functions},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        std::string err;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            err = e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool ok = err.empty() && o.extra_ok;
        std::size_t rows = 0, failed = 0;
        for (const ExperimentReport& r : o.reports) {
            ok = ok && r.passed();
            for (const Record& rec : r.records) {
                ++rows;
                failed += rec.status == Status::Fail;
            }
            if (report) write_report(report, r, Format::Jsonl);
        }
        if (!ok) ++failures;
        std::cout << fmt::format("criterion {:2d} {} {} [{} rows, {} failed, {:.1f} s] {}\n", c.id, ok ? "PASS" : "FAIL",
                                 c.label, rows, failed, secs, err.empty() ? o.note : "error: " + err)
                  << std::flush;
    }
    std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
