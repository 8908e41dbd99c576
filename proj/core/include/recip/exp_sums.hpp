#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "recip/characters.hpp"
#include "recip/cyclotomic.hpp"

namespace recip {

enum class Backend { Auto, Exact, Numeric };

Backend parse_backend(const std::string& s);
std::string to_string(Backend b);

struct ExpSumValue {
    std::optional<CyclotomicNumber> exact;
    std::complex<double> numeric;
    std::string backend;  // "exact" or "numeric"

    bool is_exact() const { return exact.has_value(); }
    static ExpSumValue from_exact(CyclotomicNumber x);
    static ExpSumValue from_numeric(std::complex<double> z);
};

// True when the backend request resolves to exact arithmetic at level N.
bool use_exact(Backend b, u64 N);

// Shared table of complex roots e(k / N), k in [0, N).
const std::vector<std::complex<double>>& unit_roots(u64 N);

// Divisor-sum evaluation sum_{d | (q, n)} d mu(q/d).
i64 ramanujan(u64 q, i64 n);
// Exponential-sum definition, evaluated exactly in Q(zeta_q).
i64 ramanujan_definition(u64 q, i64 n);

// tau(chi, a) = sum_b chi(b) e(ab / q), by definition.
ExpSumValue gauss(const DirichletCharacter& chi, i64 a, Backend backend = Backend::Auto);
// Closed form through the inducing primitive character.
ExpSumValue gauss_closed_induced(const DirichletCharacter& chi, i64 a, Backend backend = Backend::Auto);

// All tau(chi, a), a mod q, computed once per character and cached.
class GaussTable {
public:
    static std::shared_ptr<const GaussTable> get(const DirichletCharacter& chi, bool want_exact);

    u64 modulus() const { return q_; }
    u64 level() const { return N_; }
    bool has_exact() const { return !exact_.empty(); }
    const std::complex<double>& numeric(u64 a) const { return num_[a % q_]; }
    const CyclotomicNumber& exact(u64 a) const { return exact_.at(a % q_); }

private:
    GaussTable() = default;
    u64 q_ = 1, N_ = 1;
    std::vector<std::complex<double>> num_;
    std::vector<CyclotomicNumber> exact_;
};

// S_chi(m, n; c) = sum_{d mod c, (d,c)=1} chi(d) e((m d + n dbar) / c); chi's modulus must divide c.
ExpSumValue kloosterman(const DirichletCharacter& chi, i64 m, i64 n, u64 c, Backend backend = Backend::Auto);
ExpSumValue kloosterman(i64 m, i64 n, u64 c, Backend backend = Backend::Auto);

// S(q; psi, h, n) = sum_u psi(u + h) conj(psi)(u) e(n u / q), psi primitive mod q.
ExpSumValue heath_brown_S(const DirichletCharacter& psi, i64 h, i64 n, Backend backend = Backend::Auto);

}  // namespace recip
