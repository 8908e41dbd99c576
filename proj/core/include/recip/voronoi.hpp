#pragma once

#include <complex>

#include "recip/gl3_coeffs.hpp"

namespace recip {

struct SeriesValue {
    cplx value = 0;
    double tail = 0.0;  // bound on the discarded terms
    u64 terms = 0;
};

// All S(a, b; m) for b mod m at fixed a, as one row.
std::vector<cplx> kloosterman_row(i64 a, u64 m);

// Phi(c, d, l; w) = sum_n A(l, n) n^{-w} e(n dbar / c), Re w > 1, (d, c) = 1.
// Summed to n <= terms.
SeriesValue voronoi_phi(u64 c, i64 d, u64 l, cplx w, const HeckeCoefficientSource& F, u64 terms = 20000);

// Xi(c, d, l; w) = c sum_{n1 | c l} sum_{n2} A(n2, n1)/(n2 n1) S(d l, n2; c l / n1) (n2 n1^2 / (c^3 l))^{-w},
// Re w > 0, (d, c) = 1. The n2 sum runs to n2 <= terms.
SeriesValue voronoi_xi(u64 c, i64 d, u64 l, cplx w, const HeckeCoefficientSource& F, u64 terms = 2000);

}  // namespace recip
