#include "recip/char_sums.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <tuple>

namespace recip {

namespace {

// Evaluates the defining double sum for one (chi, psi) pair. Gauss sums are
// tabulated from their definition; each entry is split as
// tau(chi, g v) = chibar(v) tau(chi, g) with g = (a, q), and that split is
// verified exactly when the table is built. The q^2 terms are then grouped by
// the triple of gcd types so the exact sum needs only one cyclotomic product
// per occurring type.
class VEvaluator {
public:
    VEvaluator(const DirichletCharacter& chi, const DirichletCharacter& psi, bool exact)
        : chi_(chi), psi_(psi), q_(chi.modulus()), exact_(exact) {
        lam_ = chi.group().exponent();
        N_ = lcm_u(q_, lam_);
        if (exact_ && !exact_level_supported(N_)) exact_ = false;
        tcb_ = GaussTable::get(chi.conj(), exact_);
        tc_ = GaussTable::get(chi, exact_);
        tpb_ = GaussTable::get(psi.conj(), exact_);
        divs_ = divisors(q_);
        std::map<u64, std::uint32_t> dpos;
        for (std::size_t i = 0; i < divs_.size(); ++i) dpos[divs_[i]] = static_cast<std::uint32_t>(i);
        gidx_.resize(q_);
        unit_.resize(q_);
        for (u64 a = 0; a < q_; ++a) {
            u64 g = a == 0 ? q_ : gcd_u(a, q_);
            gidx_[a] = dpos.at(g);
            u64 v = a / g;
            u64 step = q_ / g;
            if (q_ == 1) v = 0;
            while (q_ > 1 && gcd_u(v % q_, q_) != 1) v += step;
            unit_[a] = q_ == 1 ? 0 : v % q_;
        }
        ce_.resize(q_);
        pe_.resize(q_);
        const u64 sc = N_ / lam_;
        for (u64 n = 0; n < q_; ++n) {
            long k = chi.exponent_at(static_cast<i64>(n));
            ce_[n] = k < 0 ? -1 : static_cast<long>(static_cast<u64>(k) * sc);
            long l = psi.exponent_at(static_cast<i64>(n));
            pe_[n] = l < 0 ? -1 : static_cast<long>(static_cast<u64>(l) * sc);
        }
        D_ = divs_.size();
        zcb_.assign(D_, 0);
        zc_.assign(D_, 0);
        zpb_.assign(D_, 0);
        for (std::size_t i = 0; i < D_; ++i) {
            u64 g = divs_[i] % q_;
            zcb_[i] = std::abs(tcb_->numeric(g)) < 1e-9;
            zc_[i] = std::abs(tc_->numeric(g)) < 1e-9;
            zpb_[i] = std::abs(tpb_->numeric(g)) < 1e-9;
            if (exact_) {
                zcb_[i] = tcb_->exact(g).is_zero();
                zc_[i] = tc_->exact(g).is_zero();
                zpb_[i] = tpb_->exact(g).is_zero();
            }
        }
        if (exact_) verify_split();
    }

    bool exact() const { return exact_; }
    u64 level() const { return N_; }

    ExpSumValue eval(const VArgs& a) {
        const i64 qi = static_cast<i64>(q_);
        auto key = std::make_tuple(mod_floor(a.m1, qi), mod_floor(a.m2, qi), mod_floor(a.m3, qi), mod_floor(a.r, qi));
        {
            std::shared_lock lk(mu_);
            auto it = memo_.find(key);
            if (it != memo_.end()) return it->second;
        }
        ExpSumValue v = exact_ ? eval_exact(key) : eval_numeric(key);
        std::unique_lock lk(mu_);
        if (memo_.size() > 200000) memo_.clear();
        memo_.emplace(key, v);
        return v;
    }

private:
    using Key = std::tuple<i64, i64, i64, i64>;

    void verify_split() const {
        auto check = [&](const GaussTable& T, const DirichletCharacter& c) {
            // tau(c, g v) = cbar(v) tau(c, g)
            for (u64 a = 0; a < q_; ++a) {
                u64 g = divs_[gidx_[a]] % q_;
                CyclotomicNumber rhs = c.conj().evaluate(static_cast<i64>(unit_[a])) * T.exact(g);
                if (rhs != T.exact(a)) throw std::logic_error("Gauss sum change of variables failed");
            }
        };
        check(*tcb_, chi_.conj());
        check(*tc_, chi_);
        check(*tpb_, psi_.conj());
    }

    ExpSumValue eval_numeric(const Key& k) const {
        auto [m1, m2, m3, r] = k;
        const u64 q = q_;
        std::complex<double> s = 0;
        const auto& roots = unit_roots(N_);
        for (u64 t = 0; t < q; ++t) {
            std::complex<double> t3 = tpb_->numeric(static_cast<u64>(m3) * t % q);
            if (t3 == 0.0) continue;
            long x = ce_[(static_cast<u64>(r) * t + static_cast<u64>(m1) * static_cast<u64>(m2)) % q];
            if (x < 0) continue;
            std::complex<double> acc = 0;
            for (u64 u = 0; u < q; ++u) {
                long y = ce_[static_cast<u64>(mod_floor(static_cast<i64>(static_cast<u64>(r) * u % q) - m1, static_cast<i64>(q)))];
                if (y < 0) continue;
                acc += tcb_->numeric((t + static_cast<u64>(m2) * u) % q) * tc_->numeric(u) * roots[static_cast<u64>(y)];
            }
            s += acc * std::conj(roots[static_cast<u64>(x)]) * t3;
        }
        return ExpSumValue::from_numeric(s / static_cast<double>(q));
    }

    ExpSumValue eval_exact(const Key& k) {
        auto [m1, m2, m3, r] = k;
        const u64 q = q_;
        const u64 N = N_;
        std::map<std::size_t, std::vector<i64>> counts;
        for (u64 t = 0; t < q; ++t) {
            u64 a3 = static_cast<u64>(m3) * t % q;
            std::uint32_t g3 = gidx_[a3];
            if (zpb_[g3]) continue;
            long x = ce_[(static_cast<u64>(r) * t + static_cast<u64>(m1) * static_cast<u64>(m2)) % q];
            if (x < 0) continue;
            long e3 = pe_[unit_[a3]];
            for (u64 u = 0; u < q; ++u) {
                std::uint32_t g2 = gidx_[u];
                if (zc_[g2]) continue;
                long y = ce_[static_cast<u64>(mod_floor(static_cast<i64>(static_cast<u64>(r) * u % q) - m1, static_cast<i64>(q)))];
                if (y < 0) continue;
                u64 a1 = (t + static_cast<u64>(m2) * u) % q;
                std::uint32_t g1 = gidx_[a1];
                if (zcb_[g1]) continue;
                long e = ce_[unit_[a1]] - ce_[unit_[u]] + e3 - x + y;
                e %= static_cast<long>(N);
                if (e < 0) e += static_cast<long>(N);
                std::size_t type = (static_cast<std::size_t>(g1) * D_ + g2) * D_ + g3;
                auto& v = counts[type];
                if (v.empty()) v.assign(N, 0);
                v[static_cast<std::size_t>(e)] += 1;
            }
        }
        CyclotomicNumber total = CyclotomicNumber::zero(N);
        for (auto& [type, cnt] : counts) {
            std::size_t g3 = type % D_, g2 = (type / D_) % D_, g1 = type / (D_ * D_);
            CyclotomicNumber P = tcb_->exact(divs_[g1] % q) * tc_->exact(divs_[g2] % q) * tpb_->exact(divs_[g3] % q);
            if (P.is_zero()) continue;
            total += P * CyclotomicNumber::from_exponent_counts(N, cnt);
        }
        total /= static_cast<i64>(q);
        return ExpSumValue::from_exact(total.rebase(N));
    }

    DirichletCharacter chi_, psi_;
    u64 q_, lam_ = 1, N_ = 1;
    bool exact_;
    std::shared_ptr<const GaussTable> tcb_, tc_, tpb_;
    std::vector<u64> divs_;
    std::size_t D_ = 1;
    std::vector<std::uint32_t> gidx_;
    std::vector<u64> unit_;
    std::vector<long> ce_, pe_;
    std::vector<char> zcb_, zc_, zpb_;
    std::shared_mutex mu_;
    std::map<Key, ExpSumValue> memo_;
};

std::shared_ptr<VEvaluator> evaluator(const DirichletCharacter& chi, const DirichletCharacter& psi, bool exact) {
    static std::mutex mu;
    static std::map<std::tuple<std::string, std::string, bool>, std::shared_ptr<VEvaluator>> cache;
    auto key = std::make_tuple(chi.label(), psi.label(), exact);
    {
        std::lock_guard lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto ev = std::make_shared<VEvaluator>(chi, psi, exact);
    std::lock_guard lk(mu);
    if (cache.size() > 20000) cache.clear();
    return cache.emplace(key, ev).first->second;
}

u64 v_level(const DirichletCharacter& chi) { return lcm_u(chi.modulus(), chi.group().exponent()); }

ExpSumValue make_rational(bool exact, u64 N, i64 num, i64 den) {
    if (exact) return ExpSumValue::from_exact(CyclotomicNumber::rational(N, num, den));
    return ExpSumValue::from_numeric(static_cast<double>(num) / static_cast<double>(den));
}

i64 ipow_i(u64 p, int e) { return e <= 0 ? 1 : static_cast<i64>(ipow(p, static_cast<unsigned>(e))); }

ExpSumValue mul(const ExpSumValue& a, const ExpSumValue& b) {
    if (a.is_exact() && b.is_exact()) return ExpSumValue::from_exact(*a.exact * *b.exact);
    return ExpSumValue::from_numeric(a.numeric * b.numeric);
}

ExpSumValue char_value(const DirichletCharacter& c, i64 n, bool exact) {
    if (exact) return ExpSumValue::from_exact(c.evaluate(n));
    return ExpSumValue::from_numeric(c.value(n));
}

}  // namespace

ExpSumValue v_bruteforce(const DirichletCharacter& chi, const DirichletCharacter& psi, const VArgs& a,
                         Backend backend) {
    if (chi.modulus() != psi.modulus()) throw std::invalid_argument("v_bruteforce: chi and psi need the same modulus");
    bool exact = use_exact(backend, v_level(chi));
    return evaluator(chi, psi, exact)->eval(a);
}

bool v_local_hypothesis(u64 q, const VArgs& a) {
    auto f = factorize(q);
    if (f.factors.size() != 1) return false;
    u64 p = f.factors[0].first;
    for (i64 m : {a.m1, a.m2, a.m3, a.r}) {
        if (m <= 0) return false;
        u64 x = static_cast<u64>(m);
        while (x % p == 0) x /= p;
        if (x != 1) return false;
    }
    return a.m1 % a.m3 == 0 && a.m2 % a.m1 == 0;
}

std::string v_family(const DirichletCharacter& chi, const DirichletCharacter& psi) {
    std::string c = chi.is_principal() ? "principal" : (chi.is_primitive() ? "primitive" : "imprimitive");
    std::string s = psi.is_principal() ? "principal" : "nonprincipal";
    return c + "/" + s;
}

VCaseResult v_closed_primepower(const DirichletCharacter& chi, const DirichletCharacter& psi, const VArgs& a,
                                Backend backend) {
    const u64 q = chi.modulus();
    if (psi.modulus() != q) throw std::invalid_argument("v_closed_primepower: chi and psi need the same modulus");
    if (!v_local_hypothesis(q, a))
        throw std::invalid_argument("v_closed_primepower: requires q = p^beta, m3 | m1 | m2, arguments powers of p");
    if (!chi.is_principal() && !chi.is_primitive())
        throw std::domain_error("v_closed_primepower: no closed form for imprimitive nonprincipal chi");
    const auto& f = chi.factored_modulus().factors[0];
    const u64 p = f.first;
    const int beta = f.second;
    const u64 N = v_level(chi);
    const bool exact = use_exact(backend, N);
    const int a1 = valuation(static_cast<u64>(a.m1), p), a2 = valuation(static_cast<u64>(a.m2), p),
              a3 = valuation(static_cast<u64>(a.m3), p), ar = valuation(static_cast<u64>(a.r), p);
    const i64 pi = static_cast<i64>(p);
    const bool m_one = a1 == 0 && a2 == 0 && a3 == 0;
    const i64 s = chi.parity();
    VCaseResult res;
    auto zero = [&](const std::string& label) {
        res.case_label = label;
        res.vanishing = true;
        res.value = make_rational(exact, N, 0, 1);
        return res;
    };
    auto rat = [&](const std::string& label, i64 num, i64 den) {
        res.case_label = label;
        res.value = make_rational(exact, N, num, den);
        return res;
    };
    const double pd = static_cast<double>(p);

    if (chi.is_principal() && psi.is_principal()) {
        res.envelope = std::pow(pd, 2.0 * beta);
        if (ar == 0 && a1 >= 1 && a2 >= 1 && a3 >= 1 && beta == 1)
            return rat("principal/principal: r=1, p|m1,m2,m3, beta=1", (pi - 1) * (pi - 1) * (pi - 1), pi);
        if (ar == 0 && a3 == 0 && a1 >= 1 && a2 >= 1 && beta == 1)
            return rat("principal/principal: m3=r=1, p|m1,m2, beta=1", -(pi - 1) * (pi - 1), pi);
        if (ar == 0 && a1 == 0 && a3 == 0 && a2 >= 1 && beta == 1)
            return rat("principal/principal: m1=m3=r=1, p|m2, beta=1", pi - 1, pi);
        if (m_one && ar >= 1)
            return rat("principal/principal: m1=m2=m3=1, p|r", ipow_i(p, 2 * beta - 1) * (pi - 1), 1);
        if (m_one && ar == 0 && beta == 1)
            return rat("principal/principal: all arguments 1, beta=1", pi * pi * pi - pi * pi - pi - 1, pi);
        if (m_one && ar == 0 && beta >= 2)
            return rat("principal/principal: all arguments 1, beta>=2", ipow_i(p, 2 * beta - 1) * (pi - 1), 1);
        return zero("principal/principal: otherwise");
    }
    if (chi.is_principal()) {
        res.envelope = std::pow(pd, beta / 2.0);
        if (m_one && ar == 0 && beta == 1) {
            res.case_label = "principal/nonprincipal: all arguments 1, beta=1";
            ExpSumValue t = gauss(psi, 1, exact ? Backend::Exact : Backend::Numeric);
            if (exact) {
                CyclotomicNumber v = t.exact->conj() * CyclotomicNumber::rational(N, pi + 1, pi);
                res.value = ExpSumValue::from_exact(v.rebase(lcm_u(v.level(), N)));
            } else {
                res.value = ExpSumValue::from_numeric(std::conj(t.numeric) * ((pd + 1) / pd));
            }
            return res;
        }
        return zero("principal/nonprincipal: otherwise");
    }
    if (psi.is_principal()) {
        res.envelope = std::pow(pd, 3.0 * beta);
        const i64 p33 = ipow_i(p, 3 * beta - 3);
        if (ar == 0 && a1 >= beta && a2 >= beta && a3 >= beta)
            return rat("primitive/principal: r=1, p^beta|m1,m2,m3", s * p33 * (pi - 1) * (pi - 1) * (pi - 1), 1);
        if (ar == 0 && a3 == beta - 1 && a1 >= beta && a2 >= beta)
            return rat("primitive/principal: r=1, p^(beta-1)||m3, p^beta|m1,m2", -s * p33 * (pi - 1) * (pi - 1), 1);
        if (ar == 0 && a1 == beta - 1 && a3 == beta - 1 && a2 >= beta)
            return rat("primitive/principal: r=1, p^(beta-1)||m1,m3, p^beta|m2", s * p33 * (pi - 1), 1);
        if (ar == 0 && a1 == beta - 1 && a2 == beta - 1 && a3 == beta - 1 && beta >= 2)
            return rat("primitive/principal: r=1, p^(beta-1)||m1,m2,m3, beta>=2", -s * p33, 1);
        if (m_one && ar >= beta)
            return rat("primitive/principal: m1=m2=m3=1, p^beta|r", ipow_i(p, 2 * beta - 1) * (pi - 1), 1);
        if (m_one && ar == beta - 1 && beta >= 2)
            return rat("primitive/principal: m1=m2=m3=1, p^(beta-1)||r, beta>=2", -ipow_i(p, 2 * beta - 1), 1);
        if (m_one && ar == 0 && beta == 1) return rat("primitive/principal: all arguments 1, beta=1", -pi - s, 1);
        return zero("primitive/principal: otherwise");
    }
    // chi primitive, psi nonprincipal of conductor p^alpha
    const int alpha = valuation(psi.conductor(), p);
    if (alpha == beta) {
        if (m_one && ar == 0) {
            res.case_label = "primitive/primitive: all arguments 1";
            ExpSumValue t = gauss(psi.conj(), 1, exact ? Backend::Exact : Backend::Numeric);
            ExpSumValue g = g_sum(chi, psi, exact ? Backend::Exact : Backend::Numeric);
            ExpSumValue v = mul(t, g);
            if (v.is_exact())
                res.value = ExpSumValue::from_exact((*v.exact * s).rebase(lcm_u(v.exact->level(), N)));
            else
                res.value = ExpSumValue::from_numeric(v.numeric * static_cast<double>(s));
            return res;
        }
        return zero("primitive/primitive: otherwise");
    }
    if (m_one && ar == beta - alpha) {
        res.case_label = "primitive/imprimitive: m1=m2=m3=1, p^(beta-alpha)||r (bound only)";
        res.exact_identity = false;
        res.bound = std::pow(pd, 2.0 * beta - alpha / 2.0);
        res.value = v_bruteforce(chi, psi, a, exact ? Backend::Exact : Backend::Numeric);
        return res;
    }
    if (ar == 0 && a1 == beta - alpha && a2 == beta - alpha && a3 == beta - alpha) {
        res.case_label = "primitive/imprimitive: r=1, p^(beta-alpha)||m1,m2,m3 (bound only)";
        res.exact_identity = false;
        res.bound = std::pow(pd, 3.0 * beta - 1.5 * alpha);
        res.value = v_bruteforce(chi, psi, a, exact ? Backend::Exact : Backend::Numeric);
        return res;
    }
    return zero("primitive/imprimitive: otherwise");
}

ExpSumValue v_general(const DirichletCharacter& chi, const DirichletCharacter& psi, const VArgs& a,
                      Backend backend) {
    const u64 q = chi.modulus();
    if (psi.modulus() != q) throw std::invalid_argument("v_general: chi and psi need the same modulus");
    if (a.m1 <= 0 || a.m2 <= 0 || a.m3 <= 0 || a.r <= 0) throw std::invalid_argument("v_general: arguments must be positive");
    const bool exact = use_exact(backend, v_level(chi));
    const Backend be = exact ? Backend::Exact : Backend::Numeric;
    if (q == 1) return make_rational(exact, 1, 1, 1);
    const auto fq = chi.factored_modulus();
    // strip the parts coprime to q
    auto [m1c, m1q] = split_q_infinity(static_cast<u64>(a.m1), fq);
    auto [m2c, m2q] = split_q_infinity(static_cast<u64>(a.m2), fq);
    auto [m3c, m3q] = split_q_infinity(static_cast<u64>(a.m3), fq);
    auto [rc, rq] = split_q_infinity(static_cast<u64>(a.r), fq);
    const i64 qi = static_cast<i64>(q);
    const i64 mprod = static_cast<i64>(mul_mod(mul_mod(m1c % q, m2c % q, q), m3c % q, q));
    ExpSumValue twist = mul(char_value(psi, mprod, exact), char_value(psi.conj(), mod_floor(static_cast<i64>(rc % q), qi), exact));
    VArgs b{static_cast<i64>(m1q), static_cast<i64>(m2q), static_cast<i64>(m3q), static_cast<i64>(rq)};

    ExpSumValue core;
    if (fq.factors.size() == 1) {
        if ((chi.is_principal() || chi.is_primitive()) && v_local_hypothesis(q, b))
            core = v_closed_primepower(chi, psi, b, be).value;
        else
            core = v_bruteforce(chi, psi, b, be);
    } else {
        const u64 p = fq.factors[0].first;
        const u64 q1 = fq.prime_power(p), q2 = q / q1;
        auto part = [&](u64 m, bool first) {
            u64 x = 1;
            while (m % p == 0) {
                m /= p;
                x *= p;
            }
            return static_cast<i64>(first ? x : m);
        };
        VArgs b1{part(m1q, true), part(m2q, true), part(m3q, true), part(rq, true)};
        VArgs b2{part(m1q, false), part(m2q, false), part(m3q, false), part(rq, false)};
        DirichletCharacter chi1 = chi.local_component(p), chi2 = chi.complement_component(p);
        DirichletCharacter psi1 = psi.local_component(p), psi2 = psi.complement_component(p);
        auto prod3 = [](const VArgs& x, u64 mod) {
            u64 v = static_cast<u64>(x.m1) % mod;
            v = mul_mod(v, static_cast<u64>(x.m2) % mod, mod);
            return static_cast<i64>(mul_mod(v, static_cast<u64>(x.m3) % mod, mod));
        };
        ExpSumValue tw = mul(char_value(psi1, prod3(b2, q1), exact),
                             char_value(psi1.conj(), static_cast<i64>(mul_mod(q2 % q1, static_cast<u64>(b2.r) % q1, q1)), exact));
        tw = mul(tw, char_value(psi2, prod3(b1, q2), exact));
        tw = mul(tw, char_value(psi2.conj(), static_cast<i64>(mul_mod(q1 % q2, static_cast<u64>(b1.r) % q2, q2)), exact));
        ExpSumValue v1 = v_general(chi1, psi1, b1, be);
        ExpSumValue v2 = v_general(chi2, psi2, b2, be);
        core = mul(tw, mul(v1, v2));
    }
    ExpSumValue out = mul(twist, core);
    if (out.is_exact()) return ExpSumValue::from_exact(out.exact->rebase(lcm_u(out.exact->level(), v_level(chi))));
    return out;
}

ExpSumValue g_sum(const DirichletCharacter& chi, const DirichletCharacter& psi, Backend backend) {
    const u64 q = chi.modulus();
    if (psi.modulus() != q) throw std::invalid_argument("g_sum: chi and psi need the same modulus");
    const u64 lam = chi.group().exponent();
    const bool exact = use_exact(backend, lam);
    std::vector<i64> counts(lam, 0);
    const auto& ct = chi.value_table();
    const auto& pt = psi.value_table();
    const long L = static_cast<long>(lam);
    for (u64 t = 0; t < q; ++t) {
        long a = ct[t], b = ct[(t + 1) % q];
        if (a < 0 || b < 0) continue;
        for (u64 u = 0; u < q; ++u) {
            long c = ct[u], d = ct[(u + 1) % q];
            if (c < 0 || d < 0) continue;
            long e = pt[(mul_mod(u, t, q) + q - 1 % q) % q];
            if (e < 0) continue;
            long k = ((b - a + c - d + e) % L + 2 * L) % L;
            counts[static_cast<std::size_t>(k)] += 1;
        }
    }
    if (exact) return ExpSumValue::from_exact(CyclotomicNumber::from_exponent_counts(lam, counts));
    const auto& roots = unit_roots(lam);
    std::complex<double> s = 0;
    for (u64 k = 0; k < lam; ++k)
        if (counts[k]) s += static_cast<double>(counts[k]) * roots[k];
    return ExpSumValue::from_numeric(s);
}

}  // namespace recip
