#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "recip/arith.hpp"

namespace recip {

// Exact levels above this bound are refused; callers switch to floating point.
std::size_t cyclotomic_level_cap();
void set_cyclotomic_level_cap(std::size_t cap);
bool exact_level_supported(u64 N);

// Integer coefficients of the N-th cyclotomic polynomial, constant term first.
const std::vector<i64>& cyclotomic_polynomial(u64 N);

struct CyclotomicLevel;

// Element of Q(zeta_N) with integral numerator over a positive denominator.
//
// Numerators live in the tensor basis of Z[zeta_N] = (x) Z[zeta_{p^a}]: for
// each prime power p^a || N the local exponent ranges over [0, phi(p^a)).
// Reduction is exact, so is_zero and == decide value equality. The power
// basis modulo Phi_N is available through power_basis().
class CyclotomicNumber {
public:
    CyclotomicNumber();  // zero at level 1

    static CyclotomicNumber zero(u64 N);
    static CyclotomicNumber integer(u64 N, i64 v);
    static CyclotomicNumber rational(u64 N, i64 num, i64 den);
    static CyclotomicNumber root_of_unity(u64 N, i64 k);
    // sum_k counts[k] zeta_N^k / den; counts.size() must equal N.
    static CyclotomicNumber from_exponent_counts(u64 N, const std::vector<i64>& counts, i64 den = 1);

    u64 level() const { return N_; }
    const std::vector<i64>& coeffs() const { return c_; }
    i64 denominator() const { return den_; }

    bool is_zero() const;
    bool is_rational() const;
    // Numerator and denominator of a rational value; throws std::domain_error otherwise.
    std::pair<i64, i64> rational_value() const;

    std::complex<double> embed() const;
    CyclotomicNumber rebase(u64 N_new) const;
    CyclotomicNumber conj() const;
    // Coefficients of the numerator modulo Phi_N in the basis 1, zeta, ..., zeta^{phi-1}.
    std::vector<i64> power_basis() const;

    CyclotomicNumber operator-() const;
    CyclotomicNumber& operator+=(const CyclotomicNumber& o);
    CyclotomicNumber& operator-=(const CyclotomicNumber& o);
    CyclotomicNumber& operator*=(const CyclotomicNumber& o);
    CyclotomicNumber& operator*=(i64 k);
    CyclotomicNumber& operator/=(i64 k);

    friend CyclotomicNumber operator+(CyclotomicNumber a, const CyclotomicNumber& b) { return a += b; }
    friend CyclotomicNumber operator-(CyclotomicNumber a, const CyclotomicNumber& b) { return a -= b; }
    friend CyclotomicNumber operator*(CyclotomicNumber a, const CyclotomicNumber& b) { return a *= b; }
    friend CyclotomicNumber operator*(CyclotomicNumber a, i64 k) { return a *= k; }
    friend CyclotomicNumber operator*(i64 k, CyclotomicNumber a) { return a *= k; }
    friend CyclotomicNumber operator/(CyclotomicNumber a, i64 k) { return a /= k; }
    friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b);
    friend bool operator!=(const CyclotomicNumber& a, const CyclotomicNumber& b) { return !(a == b); }

    std::string to_string() const;

private:
    CyclotomicNumber(std::shared_ptr<const CyclotomicLevel> lvl, std::vector<i64> c, i64 den);
    void normalize();
    void align(CyclotomicNumber& other);

    u64 N_ = 1;
    std::shared_ptr<const CyclotomicLevel> lvl_;
    std::vector<i64> c_;
    i64 den_ = 1;
};

}  // namespace recip
