#include "recip/cyclotomic.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>

namespace recip {

using i128 = __int128;

namespace {

std::atomic<std::size_t> g_level_cap{4000};

i64 narrow(i128 v) {
    if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
        throw std::overflow_error("cyclotomic coefficient overflow");
    return static_cast<i64>(v);
}

i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("cyclotomic coefficient overflow");
    return r;
}

}  // namespace

std::size_t cyclotomic_level_cap() { return g_level_cap.load(); }
void set_cyclotomic_level_cap(std::size_t cap) { g_level_cap.store(cap); }
bool exact_level_supported(u64 N) { return N >= 1 && N <= g_level_cap.load(); }

struct CyclotomicLevel {
    u64 N = 1;
    std::size_t phi = 1;
    struct Axis {
        u64 p, P, phiP, step;  // step = P / p
        std::size_t stride, bstride;
    };
    std::vector<Axis> axes;
    std::vector<std::uint32_t> exp_to_full;  // exponent k -> mixed-radix index
    std::vector<std::int32_t> full_to_basis;
    std::vector<std::uint32_t> basis_exp;    // basis index -> exponent
    std::vector<std::complex<long double>> roots;

    explicit CyclotomicLevel(u64 n) : N(n) {
        auto f = factorize(n);
        std::size_t stride = 1, bstride = 1;
        for (auto& [p, e] : f.factors) {
            u64 P = ipow(p, static_cast<unsigned>(e));
            axes.push_back({p, P, P / p * (p - 1), P / p, stride, bstride});
            stride *= P;
            bstride *= P / p * (p - 1);
        }
        phi = bstride;
        std::vector<u64> u(axes.size());
        for (std::size_t i = 0; i < axes.size(); ++i)
            u[i] = inv_mod(static_cast<i64>((N / axes[i].P) % axes[i].P), axes[i].P);
        exp_to_full.resize(N);
        full_to_basis.assign(N, -1);
        basis_exp.assign(phi, 0);
        for (u64 k = 0; k < N; ++k) {
            std::size_t full = 0, b = 0;
            bool in_basis = true;
            for (std::size_t i = 0; i < axes.size(); ++i) {
                u64 c = mul_mod(k % axes[i].P, u[i], axes[i].P);
                full += c * axes[i].stride;
                if (c >= axes[i].phiP)
                    in_basis = false;
                else
                    b += c * axes[i].bstride;
            }
            exp_to_full[k] = static_cast<std::uint32_t>(full);
            if (in_basis) {
                full_to_basis[full] = static_cast<std::int32_t>(b);
                basis_exp[b] = static_cast<std::uint32_t>(k);
            }
        }
        roots.resize(N);
        const long double two_pi = 6.283185307179586476925286766559L;
        for (u64 k = 0; k < N; ++k) {
            long double a = two_pi * static_cast<long double>(k) / static_cast<long double>(N);
            roots[k] = {std::cos(a), std::sin(a)};
        }
    }

    // Fold every mixed-radix slot onto the basis using Phi_P(zeta_P) = 0 axis by axis.
    void reduce(std::vector<i128>& full) const {
        for (auto& ax : axes) {
            if (ax.p == 1) continue;
            for (std::size_t f = 0; f < full.size(); ++f) {
                u64 c = (f / ax.stride) % ax.P;
                if (c < ax.phiP || full[f] == 0) continue;
                i128 v = full[f];
                full[f] = 0;
                std::size_t base = f - c * ax.stride;
                u64 r = c - ax.phiP;
                for (u64 t = 0; t + 1 < ax.p; ++t) full[base + (r + t * ax.step) * ax.stride] -= v;
            }
        }
    }

    std::vector<i64> extract(const std::vector<i128>& full) const {
        std::vector<i64> c(phi, 0);
        for (std::size_t f = 0; f < full.size(); ++f) {
            if (full[f] == 0) continue;
            std::int32_t b = full_to_basis[f];
            if (b < 0) throw std::logic_error("cyclotomic reduction left a non-basis slot");
            c[static_cast<std::size_t>(b)] = narrow(full[f]);
        }
        return c;
    }
};

namespace {

struct LevelCache {
    std::shared_mutex mu;
    std::map<u64, std::shared_ptr<const CyclotomicLevel>> levels;
    std::map<u64, std::vector<i64>> polys;
};

LevelCache& level_cache() {
    static LevelCache c;
    return c;
}

std::shared_ptr<const CyclotomicLevel> level_data(u64 N) {
    if (N == 0) throw std::domain_error("cyclotomic level must be positive");
    if (!exact_level_supported(N)) throw std::length_error("cyclotomic level above the exact cap");
    auto& c = level_cache();
    {
        std::shared_lock lk(c.mu);
        auto it = c.levels.find(N);
        if (it != c.levels.end()) return it->second;
    }
    auto lvl = std::make_shared<const CyclotomicLevel>(N);
    std::unique_lock lk(c.mu);
    return c.levels.emplace(N, lvl).first->second;
}

// Exact polynomial division of a by monic b, both constant term first.
std::vector<i64> poly_div_exact(std::vector<i64> a, const std::vector<i64>& b) {
    std::size_t db = b.size() - 1;
    if (a.size() < b.size()) throw std::logic_error("poly_div_exact: degree");
    std::vector<i64> q(a.size() - db, 0);
    for (std::size_t i = a.size(); i-- > db;) {
        i64 lead = a[i];
        q[i - db] = lead;
        if (lead)
            for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= lead * b[j];
    }
    for (std::size_t i = 0; i < db; ++i)
        if (a[i] != 0) throw std::logic_error("poly_div_exact: remainder");
    return q;
}

}  // namespace

const std::vector<i64>& cyclotomic_polynomial(u64 N) {
    if (N == 0) throw std::domain_error("cyclotomic_polynomial: N must be positive");
    auto& c = level_cache();
    {
        std::shared_lock lk(c.mu);
        auto it = c.polys.find(N);
        if (it != c.polys.end()) return it->second;
    }
    // x^N - 1 = prod_{d | N} Phi_d
    std::vector<i64> a(N + 1, 0);
    a[0] = -1;
    a[N] = 1;
    for (u64 d : divisors(N))
        if (d < N) a = poly_div_exact(a, cyclotomic_polynomial(d));
    std::unique_lock lk(c.mu);
    return c.polys.emplace(N, std::move(a)).first->second;
}

CyclotomicNumber::CyclotomicNumber() : N_(1), lvl_(level_data(1)), c_(1, 0), den_(1) {}

CyclotomicNumber::CyclotomicNumber(std::shared_ptr<const CyclotomicLevel> lvl, std::vector<i64> c, i64 den)
    : N_(lvl->N), lvl_(std::move(lvl)), c_(std::move(c)), den_(den) {
    normalize();
}

void CyclotomicNumber::normalize() {
    if (den_ == 0) throw std::domain_error("cyclotomic denominator zero");
    if (den_ < 0) {
        den_ = -den_;
        for (auto& x : c_) x = -x;
    }
    i64 g = den_;
    for (i64 x : c_) {
        if (g == 1) break;
        g = std::gcd(g, x);
    }
    if (g > 1) {
        den_ /= g;
        for (auto& x : c_) x /= g;
    }
    bool zero = true;
    for (i64 x : c_)
        if (x) {
            zero = false;
            break;
        }
    if (zero) den_ = 1;
}

CyclotomicNumber CyclotomicNumber::zero(u64 N) {
    auto lvl = level_data(N);
    return CyclotomicNumber(lvl, std::vector<i64>(lvl->phi, 0), 1);
}

CyclotomicNumber CyclotomicNumber::integer(u64 N, i64 v) { return rational(N, v, 1); }

CyclotomicNumber CyclotomicNumber::rational(u64 N, i64 num, i64 den) {
    auto lvl = level_data(N);
    std::vector<i64> c(lvl->phi, 0);
    c[0] = num;  // exponent 0 is basis index 0
    return CyclotomicNumber(lvl, std::move(c), den);
}

CyclotomicNumber CyclotomicNumber::root_of_unity(u64 N, i64 k) {
    std::vector<i64> counts(N, 0);
    counts[static_cast<std::size_t>(mod_floor(k, static_cast<i64>(N)))] = 1;
    return from_exponent_counts(N, counts, 1);
}

CyclotomicNumber CyclotomicNumber::from_exponent_counts(u64 N, const std::vector<i64>& counts, i64 den) {
    if (counts.size() != N) throw std::invalid_argument("from_exponent_counts: size must equal level");
    auto lvl = level_data(N);
    std::vector<i128> full(N, 0);
    for (u64 k = 0; k < N; ++k)
        if (counts[k]) full[lvl->exp_to_full[k]] += counts[k];
    lvl->reduce(full);
    return CyclotomicNumber(lvl, lvl->extract(full), den);
}

bool CyclotomicNumber::is_zero() const {
    for (i64 x : c_)
        if (x) return false;
    return true;
}

bool CyclotomicNumber::is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i]) return false;
    return true;
}

std::pair<i64, i64> CyclotomicNumber::rational_value() const {
    if (!is_rational()) throw std::domain_error("cyclotomic number is not rational");
    return {c_[0], den_};
}

std::complex<double> CyclotomicNumber::embed() const {
    std::complex<long double> s = 0;
    for (std::size_t b = 0; b < c_.size(); ++b)
        if (c_[b]) s += static_cast<long double>(c_[b]) * lvl_->roots[lvl_->basis_exp[b]];
    s /= static_cast<long double>(den_);
    return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

CyclotomicNumber CyclotomicNumber::rebase(u64 N_new) const {
    if (N_new == 0 || N_new % N_ != 0) throw std::domain_error("rebase: target level must be a multiple");
    if (N_new == N_) return *this;
    u64 m = N_new / N_;
    std::vector<i64> counts(N_new, 0);
    for (std::size_t b = 0; b < c_.size(); ++b)
        if (c_[b]) counts[lvl_->basis_exp[b] * m] += c_[b];
    return from_exponent_counts(N_new, counts, den_);
}

CyclotomicNumber CyclotomicNumber::conj() const {
    std::vector<i64> counts(N_, 0);
    for (std::size_t b = 0; b < c_.size(); ++b)
        if (c_[b]) counts[(N_ - lvl_->basis_exp[b]) % N_] += c_[b];
    return from_exponent_counts(N_, counts, den_);
}

std::vector<i64> CyclotomicNumber::power_basis() const {
    const auto& phi_poly = cyclotomic_polynomial(N_);
    std::size_t d = phi_poly.size() - 1;
    std::vector<i128> a(N_, 0);
    for (std::size_t b = 0; b < c_.size(); ++b)
        if (c_[b]) a[lvl_->basis_exp[b]] += c_[b];
    for (std::size_t i = a.size(); i-- > d;) {
        i128 lead = a[i];
        if (!lead) continue;
        a[i] = 0;
        for (std::size_t j = 0; j < d; ++j) a[i - d + j] -= lead * phi_poly[j];
    }
    std::vector<i64> out(d, 0);
    for (std::size_t i = 0; i < d; ++i) out[i] = narrow(a[i]);
    return out;
}

void CyclotomicNumber::align(CyclotomicNumber& other) {
    if (N_ == other.N_) return;
    u64 L = lcm_u(N_, other.N_);
    if (N_ != L) *this = rebase(L);
    if (other.N_ != L) other = other.rebase(L);
}

CyclotomicNumber CyclotomicNumber::operator-() const {
    CyclotomicNumber r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

CyclotomicNumber& CyclotomicNumber::operator+=(const CyclotomicNumber& o_in) {
    CyclotomicNumber o = o_in;
    align(o);
    i64 g = std::gcd(den_, o.den_);
    i64 fa = o.den_ / g, fb = den_ / g;
    for (std::size_t i = 0; i < c_.size(); ++i)
        c_[i] = narrow(static_cast<i128>(c_[i]) * fa + static_cast<i128>(o.c_[i]) * fb);
    den_ = checked_mul(den_, fa);
    normalize();
    return *this;
}

CyclotomicNumber& CyclotomicNumber::operator-=(const CyclotomicNumber& o) { return *this += -o; }

CyclotomicNumber& CyclotomicNumber::operator*=(const CyclotomicNumber& o_in) {
    CyclotomicNumber o = o_in;
    align(o);
    const auto& L = *lvl_;
    std::vector<i128> full(N_, 0);
    std::vector<std::pair<u64, i64>> bterms;
    for (std::size_t j = 0; j < o.c_.size(); ++j)
        if (o.c_[j]) bterms.emplace_back(L.basis_exp[j], o.c_[j]);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        u64 ki = L.basis_exp[i];
        i128 ai = c_[i];
        for (auto& [kj, bj] : bterms) {
            u64 k = ki + kj;
            if (k >= N_) k -= N_;
            full[L.exp_to_full[k]] += ai * bj;
        }
    }
    L.reduce(full);
    c_ = L.extract(full);
    den_ = checked_mul(den_, o.den_);
    normalize();
    return *this;
}

CyclotomicNumber& CyclotomicNumber::operator*=(i64 k) {
    for (auto& x : c_) x = checked_mul(x, k);
    normalize();
    return *this;
}

CyclotomicNumber& CyclotomicNumber::operator/=(i64 k) {
    if (k == 0) throw std::domain_error("cyclotomic division by zero");
    den_ = checked_mul(den_, k);
    normalize();
    return *this;
}

bool operator==(const CyclotomicNumber& a_in, const CyclotomicNumber& b_in) {
    CyclotomicNumber a = a_in, b = b_in;
    a.align(b);
    return a.den_ == b.den_ && a.c_ == b.c_;
}

std::string CyclotomicNumber::to_string() const {
    std::ostringstream os;
    bool first = true;
    if (den_ != 1) os << "(";
    for (std::size_t b = 0; b < c_.size(); ++b) {
        if (!c_[b]) continue;
        if (!first) os << (c_[b] > 0 ? " + " : " - ");
        else if (c_[b] < 0) os << "-";
        first = false;
        i64 mag = c_[b] < 0 ? -c_[b] : c_[b];
        u64 k = lvl_->basis_exp[b];
        if (k == 0) os << mag;
        else {
            if (mag != 1) os << mag << "*";
            os << "z" << N_ << "^" << k;
        }
    }
    if (first) os << "0";
    if (den_ != 1) os << ")/" << den_;
    return os.str();
}

}  // namespace recip
