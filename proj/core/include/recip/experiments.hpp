#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "recip/characters.hpp"
#include "recip/gl3_coeffs.hpp"
#include "recip/report.hpp"
#include "recip/transforms.hpp"

namespace recip {

// ---- end-to-end Voronoi identity (Kloosterman/Xi side against the L-function contour side)

struct VoronoiContour {
    double x1 = 1.0;     // abscissa of the straightened line
    double delta = 1.0;  // apex offset of the bent contour (validated, enters through the residues)
};

struct VoronoiTruncation {
    u64 ell_max = 40;       // l' <= ell_max
    u64 c0_max = 27;        // c0 | q^infty, c0 <= c0_max
    u64 n2_max = 200;       // terms of each Xi series
    double tau_max = 1000;  // |Im z| <= tau_max on the line
    VoronoiTruncation doubled() const { return {2 * ell_max, 2 * c0_max, 2 * n2_max, 2 * tau_max}; }
};

// Throws std::domain_error unless u > 3/2, 5 - 6u < sigma < -2u - 1, 1/2 < x1 < -sigma/2 - u and
// 0 < delta < sigma/2 + 3u - 2.
void validate_voronoi_region(cplx w, cplx s, const VoronoiContour& c);

struct VoronoiSides {
    cplx lhs = 0, rhs = 0;
    cplx rhs_line = 0, rhs_residues = 0;
    double rel = 0;
    double lhs_shell = 0;  // size of the outermost l' shell (l' > ell_max / 2)
    double rhs_edge = 0;   // integrand size at |tau| = tau_max, times tau_max / 2
    long lhs_terms = 0, rhs_nodes = 0;
};

// Both sign branches: [0] is Xi(c1, -b, ...) with psi(-1) G^-, [1] is Xi(c1, b, ...) with G^+.
// chi is a character mod q; F must be an Eisenstein source.
std::array<VoronoiSides, 2> voronoi_identity_sides(const DirichletCharacter& chi, const HeckeCoefficientSource& F,
                                                   cplx w, cplx s, const VoronoiContour& contour,
                                                   const VoronoiTruncation& trunc);

ExperimentReport voronoi_identity_check(const DirichletCharacter& chi, const HeckeCoefficientSource& F, cplx w,
                                        cplx s, const VoronoiContour& contour, const VoronoiTruncation& trunc,
                                        double tol, bool doubling_check);

// ---- moments

// Gauss-Legendre nodes on [-T, T] with `per_unit` panels per unit length (10 nodes each).
NodeSet t_grid(double T, int per_unit);

// sum_{psi' mod q'} int_{-T}^{T} |L(1/2 + it, psi psi')|^2 dt, psi primitive mod q, q' | q.
struct CosetMoment {
    double value = 0;
    double bound = 0;   // regime bound shape: q'T if q' >= q^{1/3} T^{-2/3}, else (q/q')^{1/2}
    std::string regime;
};
CosetMoment coset_second_moment_value(const DirichletCharacter& psi, u64 qprime, double T, int per_unit);
ExperimentReport coset_second_moment(const DirichletCharacter& psi, const std::vector<u64>& qprimes,
                                     const std::vector<double>& Ts, int per_unit, double cap);

// sum_{psi1 mod q1} sum*_{psi3 mod q3} int_{-T}^{T} |L(1/2 + it, F x psi1 psi3)|^2 dt for an Eisenstein F,
// the L-function taken as a product of three Dirichlet L-functions.
double gl3_second_moment_value(u64 q1, u64 q3, double T, const HeckeCoefficientSource& F, int per_unit);
ExperimentReport gl3_second_moment(const std::vector<std::pair<u64, u64>>& moduli, double T,
                                   const HeckeCoefficientSource& F, int per_unit, double cap);

// The dual moment (1/phi(q)) sum_psi (1/2 pi) int L(1/2+it, F x psi) L(1/2-it, conj psi) Z(psi; t) w(t) dt
// over psi in the predicted support, chi = chi1 x principal(q2).
enum class DualWeight { Indicator, HScript };
struct DualMoment {
    double abs_value = 0;  // (1/phi(q)) sum_psi int |L L Z| |w|
    cplx signed_value = 0; // (1/phi(q)) sum_psi (1/2 pi) int L L Z w
    int characters = 0, skipped = 0;
};
struct DualOptions {
    DualWeight weight = DualWeight::Indicator;
    double T = 3;            // indicator cutoff, or the t-range for the H weight
    int per_unit = 8;
    double pair_T = 30, pair_U = 5;
    int pair_C = 3;
    HScriptOptions hscript{};
};
DualMoment dual_moment_value(const DirichletCharacter& chi1, u64 q2, const HeckeCoefficientSource& F,
                             const DualOptions& opt);
ExperimentReport dual_moment(const std::vector<std::pair<u64, u64>>& moduli, const HeckeCoefficientSource& F,
                             const DualOptions& opt, double cap);

// Heath-Brown sums: sum_{h <= A} |S(q; psi, 4 h q', 0)| against A q' and
// sum_{h <= A, n <= B} |S(q; psi, 4 h q', n)| against the regime bound.
ExperimentReport hb_bound_table(const std::vector<u64>& qs, long A, long B, double cap);

// Moduli <= qmax rich in prime powers: all prime powers and products of two of them, capped in count.
std::vector<u64> hb_sample_moduli(u64 qmax, std::size_t count);

// First primitive character mod q in enumeration order; throws if none exists.
DirichletCharacter first_primitive(u64 q);

}  // namespace recip
