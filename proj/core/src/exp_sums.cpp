#include "recip/exp_sums.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

namespace recip {

Backend parse_backend(const std::string& s) {
    if (s == "auto") return Backend::Auto;
    if (s == "exact") return Backend::Exact;
    if (s == "numeric" || s == "float") return Backend::Numeric;
    throw std::invalid_argument("unknown backend '" + s + "' (auto|exact|numeric|float)");
}

std::string to_string(Backend b) {
    switch (b) {
        case Backend::Auto: return "auto";
        case Backend::Exact: return "exact";
        case Backend::Numeric: return "numeric";
    }
    return "auto";
}

ExpSumValue ExpSumValue::from_exact(CyclotomicNumber x) {
    ExpSumValue v;
    v.numeric = x.embed();
    v.exact = std::move(x);
    v.backend = "exact";
    return v;
}

ExpSumValue ExpSumValue::from_numeric(std::complex<double> z) {
    ExpSumValue v;
    v.numeric = z;
    v.backend = "numeric";
    return v;
}

bool use_exact(Backend b, u64 N) {
    if (b == Backend::Numeric) return false;
    bool ok = exact_level_supported(N);
    if (b == Backend::Exact && !ok) throw std::length_error("exact backend requested above the cyclotomic level cap");
    return ok;
}

const std::vector<std::complex<double>>& unit_roots(u64 N) {
    static std::shared_mutex mu;
    static std::map<u64, std::vector<std::complex<double>>> cache;
    {
        std::shared_lock lk(mu);
        auto it = cache.find(N);
        if (it != cache.end()) return it->second;
    }
    std::vector<std::complex<double>> r(N);
    for (u64 k = 0; k < N; ++k) {
        long double a = 6.283185307179586476925286766559L * static_cast<long double>(k) / static_cast<long double>(N);
        r[k] = {static_cast<double>(std::cos(a)), static_cast<double>(std::sin(a))};
    }
    std::unique_lock lk(mu);
    return cache.emplace(N, std::move(r)).first->second;
}

namespace {

// chi(n) as an exponent at level N (order(chi) | N), or -1.
inline long char_exp(const DirichletCharacter& chi, i64 n, u64 N) {
    long k = chi.exponent_at(n);
    if (k < 0) return -1;
    u64 o = chi.order();
    return static_cast<long>(static_cast<u64>(k) * o / chi.value_level() * (N / o));
}

}  // namespace

i64 ramanujan(u64 q, i64 n) {
    u64 g = gcd_u(q, static_cast<u64>(n < 0 ? -n : n));
    if (n == 0) g = q;
    i64 s = 0;
    for (u64 d : divisors(g)) s += static_cast<i64>(d) * moebius(q / d);
    return s;
}

i64 ramanujan_definition(u64 q, i64 n) {
    std::vector<i64> counts(q, 0);
    i64 nm = mod_floor(n, static_cast<i64>(q));
    for (u64 a = 0; a < q; ++a)
        if (gcd_u(a, q) == 1) counts[static_cast<std::size_t>(mul_mod(a, static_cast<u64>(nm), q))] += 1;
    auto x = CyclotomicNumber::from_exponent_counts(q, counts);
    auto [num, den] = x.rational_value();
    if (den != 1) throw std::logic_error("Ramanujan sum is not an integer");
    return num;
}

ExpSumValue gauss(const DirichletCharacter& chi, i64 a, Backend backend) {
    const u64 q = chi.modulus();
    const u64 N = lcm_u(q, chi.order());
    const i64 am = mod_floor(a, static_cast<i64>(q));
    if (use_exact(backend, N)) {
        std::vector<i64> counts(N, 0);
        const u64 s = N / q;
        for (u64 b = 0; b < q; ++b) {
            long k = char_exp(chi, static_cast<i64>(b), N);
            if (k < 0) continue;
            u64 e = (static_cast<u64>(k) + mul_mod(static_cast<u64>(am), b, q) * s) % N;
            counts[e] += 1;
        }
        return ExpSumValue::from_exact(CyclotomicNumber::from_exponent_counts(N, counts));
    }
    const auto& roots = unit_roots(N);
    std::complex<double> s = 0;
    for (u64 b = 0; b < q; ++b) {
        long k = char_exp(chi, static_cast<i64>(b), N);
        if (k < 0) continue;
        s += roots[(static_cast<u64>(k) + mul_mod(static_cast<u64>(am), b, q) * (N / q)) % N];
    }
    return ExpSumValue::from_numeric(s);
}

ExpSumValue gauss_closed_induced(const DirichletCharacter& chi, i64 a, Backend backend) {
    const u64 q = chi.modulus();
    const DirichletCharacter star = chi.primitive_part();
    const u64 d = star.modulus();
    const u64 am = static_cast<u64>(mod_floor(a, static_cast<i64>(q)));
    const u64 g = am == 0 ? q : gcd_u(q, am);
    const u64 qg = q / g;
    const u64 N = lcm_u(q, chi.order());
    const bool exact = use_exact(backend, N);
    if (qg % d != 0) {
        if (exact) return ExpSumValue::from_exact(CyclotomicNumber::zero(N));
        return ExpSumValue::from_numeric(0.0);
    }
    const u64 m = qg / d;
    const int mu = moebius(m);
    const i64 scale = static_cast<i64>(euler_phi(q) / euler_phi(qg)) * mu;
    const i64 a_red = static_cast<i64>(am / g);  // a/(q,a); 0 when a = 0
    ExpSumValue tstar = gauss(star, 1, exact ? Backend::Exact : Backend::Numeric);
    if (exact) {
        CyclotomicNumber v = star.conj().evaluate(a_red == 0 ? 1 : a_red) * star.evaluate(static_cast<i64>(m));
        v *= *tstar.exact;
        v *= scale;
        return ExpSumValue::from_exact(v.rebase(N));
    }
    std::complex<double> v = std::conj(star.value(a_red == 0 ? 1 : a_red)) * star.value(static_cast<i64>(m)) *
                             tstar.numeric * static_cast<double>(scale);
    return ExpSumValue::from_numeric(v);
}

std::shared_ptr<const GaussTable> GaussTable::get(const DirichletCharacter& chi, bool want_exact) {
    static std::shared_mutex mu;
    static std::map<std::pair<std::string, bool>, std::shared_ptr<const GaussTable>> cache;
    const u64 q = chi.modulus();
    const u64 N = lcm_u(q, chi.order());
    want_exact = want_exact && exact_level_supported(N);
    auto key = std::make_pair(chi.label(), want_exact);
    {
        std::shared_lock lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    std::shared_ptr<GaussTable> t(new GaussTable());
    t->q_ = q;
    t->N_ = N;
    t->num_.resize(q);
    const auto& roots = unit_roots(N);
    std::vector<long> ke(q);
    for (u64 b = 0; b < q; ++b) ke[b] = char_exp(chi, static_cast<i64>(b), N);
    for (u64 a = 0; a < q; ++a) {
        std::vector<i64> counts;
        if (want_exact) counts.assign(N, 0);
        std::complex<double> s = 0;
        for (u64 b = 0; b < q; ++b) {
            if (ke[b] < 0) continue;
            u64 e = (static_cast<u64>(ke[b]) + mul_mod(a, b, q) * (N / q)) % N;
            if (want_exact) counts[e] += 1;
            s += roots[e];
        }
        if (want_exact) {
            t->exact_.push_back(CyclotomicNumber::from_exponent_counts(N, counts));
            t->num_[a] = t->exact_.back().embed();
        } else {
            t->num_[a] = s;
        }
    }
    std::unique_lock lk(mu);
    if (cache.size() > 4096) cache.clear();
    return cache.emplace(key, t).first->second;
}

ExpSumValue kloosterman(const DirichletCharacter& chi, i64 m, i64 n, u64 c, Backend backend) {
    if (c == 0 || c % chi.modulus() != 0) throw std::domain_error("kloosterman: character modulus must divide c");
    const DirichletCharacter x = chi.modulus() == c ? chi : chi.induce(c);
    const u64 N = lcm_u(c, x.order());
    const i64 ci = static_cast<i64>(c);
    const u64 mm = static_cast<u64>(mod_floor(m, ci)), nn = static_cast<u64>(mod_floor(n, ci));
    const bool exact = use_exact(backend, N);
    std::vector<i64> counts;
    if (exact) counts.assign(N, 0);
    const auto& roots = unit_roots(N);
    std::complex<double> s = 0;
    for (u64 d = 0; d < c; ++d) {
        if (gcd_u(d, c) != 1) continue;
        u64 db = c == 1 ? 0 : inv_mod(static_cast<i64>(d), c);
        long k = char_exp(x, static_cast<i64>(d), N);
        u64 e = (static_cast<u64>(k) + ((mul_mod(mm, d, c) + mul_mod(nn, db, c)) % c) * (N / c)) % N;
        if (exact)
            counts[e] += 1;
        else
            s += roots[e];
    }
    if (exact) return ExpSumValue::from_exact(CyclotomicNumber::from_exponent_counts(N, counts));
    return ExpSumValue::from_numeric(s);
}

ExpSumValue kloosterman(i64 m, i64 n, u64 c, Backend backend) {
    return kloosterman(DirichletCharacter::principal(1), m, n, c, backend);
}

ExpSumValue heath_brown_S(const DirichletCharacter& psi, i64 h, i64 n, Backend backend) {
    if (!psi.is_primitive()) throw std::domain_error("heath_brown_S: psi must be primitive");
    const u64 q = psi.modulus();
    const u64 N = lcm_u(q, psi.order());
    const i64 qi = static_cast<i64>(q);
    const u64 nn = static_cast<u64>(mod_floor(n, qi));
    const bool exact = use_exact(backend, N);
    std::vector<i64> counts;
    if (exact) counts.assign(N, 0);
    const auto& roots = unit_roots(N);
    std::complex<double> s = 0;
    for (u64 u = 0; u < q; ++u) {
        long k1 = char_exp(psi, static_cast<i64>(u) + h, N);
        long k2 = char_exp(psi, static_cast<i64>(u), N);
        if (k1 < 0 || k2 < 0) continue;
        u64 e = (static_cast<u64>(k1) + N - static_cast<u64>(k2) + mul_mod(nn, u, q) * (N / q)) % N;
        if (exact)
            counts[e] += 1;
        else
            s += roots[e];
    }
    if (exact) return ExpSumValue::from_exact(CyclotomicNumber::from_exponent_counts(N, counts));
    return ExpSumValue::from_numeric(s);
}

}  // namespace recip
