#pragma once

#include <array>
#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "recip/arith.hpp"

namespace recip {

using cplx = std::complex<double>;

// "a", "bi", "a+bi", "a-bi".
cplx parse_complex(std::string s);

// Ordered triples of positive integers with product n.
i64 d3(u64 n);
// Estimate of sum_{n > N} d3(n) n^{-sig}, sig > 1: the integral of the density
// (log x)^2 / 2 + 2 log x + 2, which dominates the derivative of the d3 summatory main term.
double d3_tail(double N, double sig);

// A(1,n) = sum_{n1 n2 n3 = n} n1^{-mu1} n2^{-mu2} n3^{-mu3}.
cplx eisenstein_A1n(const std::array<cplx, 3>& mu, u64 n);
// A(m,n) through A(m,1) = A_{-mu}(1,m) and the Hecke relation.
cplx eisenstein_A(const std::array<cplx, 3>& mu, u64 m, u64 n);

// Provider of GL(3) coefficients A(m,n).
class HeckeCoefficientSource {
public:
    enum class Kind { Eisenstein, Table };

    HeckeCoefficientSource();  // Eisenstein with mu = 0
    static HeckeCoefficientSource eisenstein(const std::array<cplx, 3>& mu);
    // Whitespace-separated "m n re im" lines, '#' comments. With strict set,
    // relation violations throw; otherwise they are collected in violations().
    static HeckeCoefficientSource load_table(const std::string& path, bool strict = false);
    static HeckeCoefficientSource from_table_text(const std::string& text, bool strict = false,
                                                  const std::string& origin = "<text>");
    // "eisenstein:mu1,mu2,mu3" (each entry real or a+bi / bi) or "table:PATH".
    static HeckeCoefficientSource parse(const std::string& spec);

    Kind kind() const { return kind_; }
    bool is_eisenstein() const { return kind_ == Kind::Eisenstein; }
    const std::array<cplx, 3>& mu() const { return mu_; }
    bool selfdual() const { return selfdual_; }
    // Throws std::out_of_range for table entries not present in the file.
    cplx A(u64 m, u64 n) const;
    bool has(u64 m, u64 n) const;
    const std::vector<std::string>& violations() const { return violations_; }
    std::string describe() const;
    // Largest n with every A(n', 1), A(1, n'), n' <= n available (unbounded for Eisenstein).
    u64 coverage() const { return coverage_; }

    // Inverse Euler polynomial coefficients of sum_j A(p^j, 1) X^j:
    // 1 - A(p,1) X + A(1,p) X^2 - X^3.
    std::array<cplx, 4> euler_dual(u64 p) const;
    // Local factor L_p(s, F) = (1 - A(1,p) p^{-s} + A(p,1) p^{-2s} - p^{-3s})^{-1}.
    cplx L_p(u64 p, cplx s) const;
    // Local factor L_p(s, F~) of sum A(n,1) n^{-s}.
    cplx L_p_dual(u64 p, cplx s) const;

private:
    Kind kind_ = Kind::Eisenstein;
    std::array<cplx, 3> mu_{};
    std::map<std::pair<u64, u64>, cplx> table_;
    std::vector<std::string> violations_;
    bool selfdual_ = true;
    u64 coverage_ = ~u64(0);
};

}  // namespace recip
