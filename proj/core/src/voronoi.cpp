#include "recip/voronoi.hpp"

#include <cmath>
#include <stdexcept>

#include "recip/exp_sums.hpp"

namespace recip {

std::vector<cplx> kloosterman_row(i64 a, u64 m) {
    std::vector<cplx> row(m, 0.0);
    if (m == 1) {
        row[0] = 1.0;
        return row;
    }
    const auto& roots = unit_roots(m);
    const u64 am = static_cast<u64>(mod_floor(a, static_cast<i64>(m)));
    // bucket[dbar] = e(a d / m), then row[b] = sum_k bucket[k] e(b k / m)
    std::vector<cplx> bucket(m, 0.0);
    for (u64 d = 1; d < m; ++d) {
        if (gcd_u(d, m) != 1) continue;
        bucket[inv_mod(static_cast<i64>(d), m)] += roots[mul_mod(am, d, m)];
    }
    for (u64 b = 0; b < m; ++b) {
        cplx s = 0;
        for (u64 k = 1; k < m; ++k)
            if (bucket[k] != 0.0) s += bucket[k] * roots[mul_mod(b, k, m)];
        row[b] = s;
    }
    return row;
}

SeriesValue voronoi_phi(u64 c, i64 d, u64 l, cplx w, const HeckeCoefficientSource& F, u64 terms) {
    if (!(w.real() > 1.0)) throw std::domain_error("voronoi_phi: series needs Re w > 1");
    if (c == 0 || l == 0) throw std::invalid_argument("voronoi_phi: c, l must be positive");
    if (gcd_u(static_cast<u64>(mod_floor(d, static_cast<i64>(c))), c) != 1 && c > 1)
        throw std::invalid_argument("voronoi_phi: d must be a unit mod c");
    const u64 dbar = c == 1 ? 0 : inv_mod(d, c);
    const auto& roots = unit_roots(c);
    SeriesValue out;
    cplx s = 0;
    for (u64 n = 1; n <= terms; ++n)
        s += F.A(l, n) * std::exp(-w * std::log(static_cast<double>(n))) * roots[mul_mod(n % c, dbar, c)];
    out.value = s;
    out.terms = terms;
    double amax = 0;
    for (u64 a : divisors(l)) amax = std::max(amax, std::abs(F.A(a, 1)));
    out.tail = static_cast<double>(d3(l)) * std::max(1.0, amax) * d3_tail(static_cast<double>(terms), w.real());
    return out;
}

SeriesValue voronoi_xi(u64 c, i64 d, u64 l, cplx w, const HeckeCoefficientSource& F, u64 terms) {
    if (!(w.real() > 0.0)) throw std::domain_error("voronoi_xi: series needs Re w > 0");
    if (c == 0 || l == 0) throw std::invalid_argument("voronoi_xi: c, l must be positive");
    if (c > 1 && gcd_u(static_cast<u64>(mod_floor(d, static_cast<i64>(c))), c) != 1)
        throw std::invalid_argument("voronoi_xi: d must be a unit mod c");
    SeriesValue out;
    const u64 cl = c * l;
    const double c3l = std::pow(static_cast<double>(c), 3) * static_cast<double>(l);
    cplx total = 0;
    double tail = 0;
    for (u64 n1 : divisors(cl)) {
        const u64 m = cl / n1;
        const std::vector<cplx> row = kloosterman_row(d * static_cast<i64>(l), m);
        const double n1d = static_cast<double>(n1);
        const cplx pre = std::exp(-w * std::log(n1d * n1d / c3l)) / n1d;
        cplx s = 0;
        for (u64 n2 = 1; n2 <= terms; ++n2) {
            const cplx& k = row[n2 % m];
            if (k == 0.0) continue;
            s += F.A(n2, n1) * k * std::exp(-(1.0 + w) * std::log(static_cast<double>(n2)));
        }
        total += pre * s;
        tail += std::abs(pre) * static_cast<double>(m) * static_cast<double>(d3(n1)) *
                d3_tail(static_cast<double>(terms), 1.0 + w.real());
    }
    out.value = static_cast<double>(c) * total;
    out.tail = static_cast<double>(c) * tail;
    out.terms = terms;
    return out;
}

}  // namespace recip
