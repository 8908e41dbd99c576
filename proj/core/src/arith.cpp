#include "recip/arith.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace recip {

bool FactoredModulus::has_prime(u64 p) const {
    for (auto& [q, e] : factors)
        if (q == p) return true;
    return false;
}

int FactoredModulus::valuation(u64 p) const {
    for (auto& [q, e] : factors)
        if (q == p) return e;
    return 0;
}

u64 FactoredModulus::prime_power(u64 p) const { return ipow(p, static_cast<unsigned>(valuation(p))); }

std::vector<u64> FactoredModulus::primes() const {
    std::vector<u64> out;
    for (auto& f : factors) out.push_back(f.first);
    return out;
}

std::string FactoredModulus::to_string() const {
    std::ostringstream os;
    os << value << " = ";
    if (factors.empty()) os << "1";
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) os << " * ";
        os << factors[i].first;
        if (factors[i].second > 1) os << "^" << factors[i].second;
    }
    return os.str();
}

namespace {

FactoredModulus trial_divide(u64 n) {
    FactoredModulus f;
    f.value = n;
    auto take = [&](u64 p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) f.factors.emplace_back(p, e);
    };
    take(2);
    take(3);
    take(5);
    // 2*3*5 wheel
    static const u64 inc[8] = {4, 2, 4, 2, 4, 6, 2, 6};
    u64 p = 7;
    int i = 0;
    while (p * p <= n) {
        take(p);
        p += inc[i];
        i = (i + 1) & 7;
    }
    if (n > 1) f.factors.emplace_back(n, 1);
    return f;
}

struct FactorCache {
    std::shared_mutex mu;
    std::unordered_map<u64, FactoredModulus> map;
};

FactorCache& factor_cache() {
    static FactorCache c;
    return c;
}

}  // namespace

FactoredModulus factorize(u64 n) {
    if (n == 0) throw std::domain_error("factorize: n must be positive");
    if (n < 4) return trial_divide(n);
    auto& c = factor_cache();
    {
        std::shared_lock lk(c.mu);
        auto it = c.map.find(n);
        if (it != c.map.end()) return it->second;
    }
    FactoredModulus f = trial_divide(n);
    std::unique_lock lk(c.mu);
    if (c.map.size() > (1u << 20)) c.map.clear();
    c.map.emplace(n, f);
    return f;
}

u64 gcd_u(u64 a, u64 b) {
    while (b) {
        u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

u64 lcm_u(u64 a, u64 b) {
    if (a == 0 || b == 0) return 0;
    u64 g = gcd_u(a, b);
    u64 r;
    if (__builtin_mul_overflow(a / g, b, &r)) throw std::overflow_error("lcm overflow");
    return r;
}

i64 mod_floor(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>((unsigned __int128)a * b % m); }

u64 pow_mod(u64 a, u64 e, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mul_mod(r, a, m);
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 inv_mod(i64 a, u64 m) {
    if (m == 1) return 0;
    i64 mm = static_cast<i64>(m);
    i64 r0 = mm, r1 = mod_floor(a, mm), s0 = 0, s1 = 1;
    while (r1) {
        i64 q = r0 / r1;
        i64 t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    if (r0 != 1) throw std::domain_error("inv_mod: not invertible");
    return static_cast<u64>(mod_floor(s0, mm));
}

u64 ipow(u64 b, unsigned e) {
    u64 r = 1;
    for (unsigned i = 0; i < e; ++i)
        if (__builtin_mul_overflow(r, b, &r)) throw std::overflow_error("ipow overflow");
    return r;
}

int valuation(u64 n, u64 p) {
    if (n == 0) throw std::domain_error("valuation of zero");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    auto f = factorize(n);
    return f.factors.size() == 1 && f.factors[0].second == 1;
}

u64 euler_phi(u64 n) {
    u64 r = n;
    for (auto& [p, e] : factorize(n).factors) r = r / p * (p - 1);
    return r;
}

int moebius(u64 n) {
    int m = 1;
    for (auto& [p, e] : factorize(n).factors) {
        if (e > 1) return 0;
        m = -m;
    }
    return m;
}

std::vector<u64> divisors(u64 n) {
    std::vector<u64> d{1};
    for (auto& [p, e] : factorize(n).factors) {
        std::size_t k = d.size();
        u64 pp = 1;
        for (int j = 1; j <= e; ++j) {
            pp *= p;
            for (std::size_t i = 0; i < k; ++i) d.push_back(d[i] * pp);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

bool is_squarefree(u64 n) { return moebius(n) != 0; }

bool is_squarefull(u64 n) {
    for (auto& [p, e] : factorize(n).factors)
        if (e < 2) return false;
    return true;
}

std::pair<u64, u64> split_q_infinity(u64 c, const FactoredModulus& q) {
    if (c == 0) throw std::domain_error("split_q_infinity: c must be positive");
    u64 cq = 1;
    for (auto& [p, e] : q.factors)
        while (c % p == 0) {
            c /= p;
            cq *= p;
        }
    return {c, cq};
}

std::pair<u64, u64> squarefree_squarefull_split(u64 n) {
    u64 a = 1, b = 1;
    for (auto& [p, e] : factorize(n).factors) {
        if (e == 1)
            a *= p;
        else
            b *= ipow(p, static_cast<unsigned>(e));
    }
    return {a, b};
}

mpq_class alpha_factor(const FactoredModulus& q, u64 q_prime, u64 q_chi) {
    if (q_prime == 0 || q_chi == 0 || q.value % q_prime != 0 || q_prime % q_chi != 0)
        throw std::domain_error("alpha_factor: requires q_chi | q' | q");
    mpq_class r(1);
    u64 q_over = q.value / q_chi;
    for (auto& [p, e] : q.factors) {
        if (q_prime % p == 0 && q_over % p != 0) r *= mpq_class(p - 1, p);
        if (e == 1 && q_chi % p != 0) r *= mpq_class(p * p - 1, p * p);
    }
    r.canonicalize();
    return r;
}

u64 crt(const std::vector<u64>& residues, const std::vector<u64>& moduli) {
    if (residues.size() != moduli.size()) throw std::invalid_argument("crt: size mismatch");
    u64 x = 0, m = 1;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        u64 mi = moduli[i];
        if (gcd_u(m, mi) != 1) throw std::domain_error("crt: moduli not coprime");
        // x + m*t = r_i mod m_i
        u64 r = residues[i] % mi;
        u64 diff = (r + mi - x % mi) % mi;
        u64 t = mul_mod(diff, inv_mod(static_cast<i64>(m % mi), mi), mi);
        x += m * t;
        m *= mi;
    }
    return x % m;
}

}  // namespace recip
