#include "recip/z_local.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

namespace recip {

namespace {

// n^{-s}
cplx npow(u64 n, cplx s) { return n == 1 ? cplx(1.0) : std::exp(-s * std::log(static_cast<double>(n))); }

u64 mult_order(u64 a, u64 m) {
    if (m == 1) return 1;
    u64 x = a % m, k = 1;
    while (x != 1) {
        x = mul_mod(x, a, m);
        ++k;
    }
    return k;
}

std::string local_case(const DirichletCharacter& chi, const DirichletCharacter& psi) {
    if (chi.is_principal()) return psi.is_principal() ? "principal-principal" : "principal-nonprincipal";
    if (psi.is_principal()) return "primitive-principal";
    return psi.is_primitive() ? "primitive-primitive" : "primitive-imprimitive";
}

struct Tuple {
    int c1, c2, d, n1;
};

std::vector<Tuple> factor_tuples(int beta) {
    std::vector<Tuple> out;
    for (int d = 0; d <= std::min(beta, 1); ++d)
        for (int c2 = 0; c2 <= beta - d; ++c2)
            for (int n1 = 0; n1 <= beta - d - c2; ++n1) out.push_back({beta - d - c2 - n1, c2, d, n1});
    return out;
}

// Coefficients A(p^j, 1), j < J, and the generating function sum_j A(p^j,1) Y^j.
struct DualSeries {
    std::vector<cplx> a;
    cplx e1, e2;  // A(p,1), A(1,p)
    DualSeries(const HeckeCoefficientSource& F, u64 p, int J) {
        e1 = F.A(p, 1);
        e2 = F.A(1, p);
        a.push_back(1.0);
        // recurrence a_j = e1 a_{j-1} - e2 a_{j-2} + a_{j-3}
        for (int j = 1; j < J; ++j) {
            cplx v = e1 * a[j - 1];
            if (j >= 2) v -= e2 * a[j - 2];
            if (j >= 3) v += a[j - 3];
            a.push_back(v);
        }
    }
    cplx G(cplx Y) const { return 1.0 / (1.0 - e1 * Y + e2 * Y * Y - Y * Y * Y); }
    // sum_{j >= J} a_j Y^j
    cplx tail(cplx Y, int J) const {
        cplx head = 0, y = 1;
        for (int j = 0; j < J; ++j, y *= Y) head += a[static_cast<std::size_t>(j)] * y;
        return G(Y) - head;
    }
};

}  // namespace

bool z_in_region(cplx w, cplx z) {
    return w.real() > 5.0 / 28.0 && z.real() > -1.0 / 7.0 && z.real() < 2.0 * w.real() - 0.5;
}

cplx L_q_dual(u64 q, const HeckeCoefficientSource& F, cplx s) {
    cplx r = 1;
    for (u64 p : factorize(q).primes()) r *= F.L_p_dual(p, s);
    return r;
}

cplx L_q(u64 q, const HeckeCoefficientSource& F, cplx s) {
    cplx r = 1;
    for (u64 p : factorize(q).primes()) r *= F.L_p(p, s);
    return r;
}

LocalZFactor z_tilde_wz(const DirichletCharacter& chi, const DirichletCharacter& psi, const DirichletCharacter& psic,
                        const HeckeCoefficientSource& F, cplx w, cplx z, const ZOptions& opt) {
    const u64 q = chi.modulus();
    LocalZFactor out;
    if (psi.modulus() != q) throw std::invalid_argument("z_tilde: chi and psi need the same modulus");
    if (gcd_u(psic.modulus(), q) != 1) throw std::invalid_argument("z_tilde: complementary character must be coprime");
    if (!opt.allow_continuation && !z_in_region(w, z))
        throw std::domain_error("z_tilde: (w, z) outside the region of absolute convergence");
    if (q == 1) {
        out.value = 1;
        out.case_label = "trivial";
        return out;
    }
    const auto& fm = chi.factored_modulus();
    if (fm.factors.size() != 1) throw std::invalid_argument("z_tilde: modulus must be a prime power");
    if (!chi.is_principal() && !chi.is_primitive())
        throw std::domain_error("z_tilde: chi must be principal or primitive");
    const u64 p = fm.factors[0].first;
    const int beta = fm.factors[0].second;
    out.p = p;
    out.beta = beta;
    out.prime_power = q;
    out.case_label = local_case(chi, psi);

    const cplx a = 2.0 * w - 0.5 - z;
    const cplx pp = psic.value(static_cast<i64>(p));
    const cplx lead = std::conj(psic.value(static_cast<i64>(q))) * npow(q, a);
    bool any = false;
    std::map<std::tuple<i64, i64, i64, i64>, cplx> memo;
    auto V = [&](i64 m1, i64 m2, i64 m3, i64 r) -> cplx {
        auto key = std::make_tuple(m1 % static_cast<i64>(q), m2 % static_cast<i64>(q), m3 % static_cast<i64>(q),
                                   r % static_cast<i64>(q));
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        ExpSumValue v = v_general(chi, psi, VArgs{m1, m2, m3, r}, opt.backend);
        bool zero = v.is_exact() ? v.exact->is_zero() : v.numeric == 0.0;
        ++out.terms;
        if (!zero) any = true;
        cplx val = zero ? cplx(0.0) : v.numeric;
        memo.emplace(key, val);
        return val;
    };
    auto P = [&](int e) { return static_cast<i64>(ipow(p, static_cast<unsigned>(e))); };

    cplx total = 0;
    // c0 = p^k, k >= 1: only c10 = p^beta and n20 = 1 survive the coprimality conditions
    const cplx rho = std::conj(pp) * npow(p, a);
    {
        cplx s = 0, rk = rho;
        for (int k = 1; k < beta; ++k, rk *= rho) s += rk * V(1, 1, 1, P(k));
        cplx vinf = V(1, 1, 1, P(beta));
        if (vinf != 0.0) s += vinf * std::pow(rho, beta) / (1.0 - rho);
        total += lead * s;
    }
    // c0 = 1
    const cplx X = pp * npow(p, 0.5 + z);
    DualSeries ds(F, p, beta + 1);
    const double phiq = static_cast<double>(euler_phi(q));
    for (const Tuple& T : factor_tuples(beta)) {
        const u64 c10 = P(T.c1), c20 = P(T.c2), d0 = P(T.d), n10 = P(T.n1);
        cplx W = std::conj(psic.value(static_cast<i64>(q))) / (phiq * phiq);
        W *= static_cast<double>((T.d ? -1 : 1)) * static_cast<double>(euler_phi(c10 * d0 * n10)) *
             static_cast<double>(euler_phi(c10));
        const u64 mc = psic.modulus();
        u64 tw = mul_mod(mul_mod(c20 % mc, c20 % mc, mc), c20 % mc, mc);
        tw = mul_mod(tw, mul_mod(mul_mod(d0 % mc, d0 % mc, mc), d0 % mc, mc), mc);
        tw = mul_mod(tw, mul_mod(n10 % mc, n10 % mc, mc), mc);
        W *= F.A(1, n10) * psic.value(static_cast<i64>(tw));
        W *= npow(c10, a) * npow(c20, 2.0 * w - 1.0 + 2.0 * z) * npow(d0, 2.0 * w + 2.0 * z) *
             npow(n10, 2.0 * w - 0.5 + z);
        const i64 m1 = static_cast<i64>(c20 * d0 * n10), m3 = static_cast<i64>(c20);
        const u64 base = c20 * d0 * d0 * n10;
        const int J0 = std::max(0, beta - valuation(base, p));
        cplx s = 0, xj = 1;
        for (int j = 0; j < J0; ++j, xj *= X)
            s += ds.a[static_cast<std::size_t>(j)] * xj * V(m1, static_cast<i64>(base) * P(j), m3, 1);
        cplx vinf = V(m1, static_cast<i64>(base) * P(J0), m3, 1);
        if (vinf != 0.0) s += vinf * ds.tail(X, J0);
        total += W * s;
    }
    out.vanishing = !any;
    out.value = any ? total : cplx(0.0);
    return out;
}

LocalZFactor z_tilde(const DirichletCharacter& chi, const DirichletCharacter& psi, const DirichletCharacter& psic,
                     const HeckeCoefficientSource& F, double t, const ZOptions& opt) {
    return z_tilde_wz(chi, psi, psic, F, 0.5, cplx(0.0, t), opt);
}

ZGlobal z_global_wz(const DirichletCharacter& chi, const DirichletCharacter& psi, const HeckeCoefficientSource& F,
                    cplx w, cplx z, const ZOptions& opt) {
    if (chi.modulus() != psi.modulus()) throw std::invalid_argument("z_global: chi and psi need the same modulus");
    ZGlobal g;
    for (u64 p : chi.factored_modulus().primes()) {
        LocalZFactor f = z_tilde_wz(chi.local_component(p), psi.local_component(p), psi.complement_component(p), F, w,
                                    z, opt);
        g.value *= f.value;
        g.vanishing = g.vanishing || f.vanishing;
        g.trace.push_back(std::move(f));
    }
    if (g.vanishing) g.value = 0;
    return g;
}

ZGlobal z_global(const DirichletCharacter& chi, const DirichletCharacter& psi, const HeckeCoefficientSource& F,
                 double t, const ZOptions& opt) {
    return z_global_wz(chi, psi, F, 0.5, cplx(0.0, t), opt);
}

cplx z_direct(const DirichletCharacter& chi, const DirichletCharacter& psi, const HeckeCoefficientSource& F, cplx w,
              cplx z, const ZOptions& opt) {
    const u64 q = chi.modulus();
    if (psi.modulus() != q) throw std::invalid_argument("z_direct: chi and psi need the same modulus");
    if (!opt.allow_continuation && !z_in_region(w, z))
        throw std::domain_error("z_direct: (w, z) outside the region of absolute convergence");
    if (q == 1) return 1.0;
    const cplx a = 2.0 * w - 0.5 - z;
    const cplx b = 2.0 * w - 1.0 + 2.0 * z, c = 2.0 * w + 2.0 * z, e = 2.0 * w - 0.5 + z, f = 0.5 + z;

    // One summation state of a single prime: its weight and its p-power contributions to (m1, m2, m3, r) mod q.
    struct State {
        cplx weight;
        u64 m1, m2, m3, r;
    };
    std::vector<std::vector<State>> per_prime;
    for (auto [p, beta] : chi.factored_modulus().factors) {
        const u64 pb = ipow(p, static_cast<unsigned>(beta));
        const u64 period = mult_order(p, q / pb);
        auto pmod = [&](int k) { return pow_mod(p, static_cast<u64>(k), q); };
        auto P = [&](int k) { return ipow(p, static_cast<unsigned>(k)); };
        std::vector<State> st;
        // c0-part p^k with k >= 1: c10 = p^beta, n20 = 1
        const cplx x = npow(p, a);
        const cplx lead = npow(pb, a);
        for (int k = 1; k < beta; ++k) st.push_back({lead * std::pow(x, k), 1, 1, 1, pmod(k)});
        for (u64 r = 0; r < period; ++r) {
            int k = beta + static_cast<int>(r);
            st.push_back({lead * std::pow(x, k) / (1.0 - std::pow(x, static_cast<int>(period))), 1, 1, 1, pmod(k)});
        }
        // c0-part 1
        DualSeries ds(F, p, beta + 1);
        const cplx X = npow(p, f);
        const double phib = static_cast<double>(euler_phi(pb));
        for (const Tuple& T : factor_tuples(beta)) {
            const u64 c10 = P(T.c1), c20 = P(T.c2), d0 = P(T.d), n10 = P(T.n1);
            cplx W = (T.d ? -1.0 : 1.0) * static_cast<double>(euler_phi(c10 * d0 * n10)) *
                     static_cast<double>(euler_phi(c10)) / (phib * phib);
            W *= F.A(1, n10) * npow(c10, a) * npow(c20, b) * npow(d0, c) * npow(n10, e);
            const u64 m1 = c20 * d0 * n10 % q, m3 = c20 % q, base = c20 * d0 * d0 * n10 % q;
            for (int j = 0; j < beta; ++j)
                st.push_back({W * ds.a[static_cast<std::size_t>(j)] * std::pow(X, j), m1, mul_mod(base, pmod(j), q), m3, 1});
            // j = beta + r + period * m: roots-of-unity filter on the generating function
            for (u64 r = 0; r < period; ++r) {
                cplx s = 0;
                for (u64 l = 0; l < period; ++l) {
                    double ang = 2.0 * M_PI * static_cast<double>(l) / static_cast<double>(period);
                    cplx om(std::cos(ang), std::sin(ang));
                    cplx omr = std::pow(std::conj(om), static_cast<int>((static_cast<u64>(beta) + r) % period));
                    s += omr * ds.tail(om * X, beta);
                }
                s /= static_cast<double>(period);
                const int j = beta + static_cast<int>(r);
                st.push_back({W * s, m1, mul_mod(base, pmod(j), q), m3, 1});
            }
        }
        per_prime.push_back(std::move(st));
    }
    std::map<std::tuple<u64, u64, u64, u64>, cplx> memo;
    auto V = [&](u64 m1, u64 m2, u64 m3, u64 r) {
        auto key = std::make_tuple(m1, m2, m3, r);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        // residues stand in for the integers: the sum depends on its arguments mod q only
        auto lift = [&](u64 x) { return static_cast<i64>(x == 0 ? q : x); };
        cplx v = v_bruteforce(chi, psi, VArgs{lift(m1), lift(m2), lift(m3), lift(r)}, Backend::Numeric).numeric;
        memo.emplace(key, v);
        return v;
    };
    cplx total = 0;
    std::vector<std::size_t> idx(per_prime.size(), 0);
    while (true) {
        cplx W = 1;
        u64 m1 = 1, m2 = 1, m3 = 1, r = 1;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            const State& s = per_prime[i][idx[i]];
            W *= s.weight;
            m1 = mul_mod(m1, s.m1, q);
            m2 = mul_mod(m2, s.m2, q);
            m3 = mul_mod(m3, s.m3, q);
            r = mul_mod(r, s.r, q);
        }
        if (W != 0.0) total += W * V(m1, m2, m3, r);
        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] == per_prime[i].size()) idx[i++] = 0;
        if (i == idx.size()) break;
    }
    return total;
}

cplx z_w_special(const DirichletCharacter& chi, const HeckeCoefficientSource& F, cplx w) {
    const u64 q = chi.modulus();
    if (q == 1) return 1.0;
    const auto& fm = chi.factored_modulus();
    if (fm.factors.size() != 1) throw std::invalid_argument("z_w_special: modulus must be a prime power");
    const u64 p = fm.factors[0].first;
    const int beta = fm.factors[0].second;
    const double pd = static_cast<double>(p);
    auto pw = [&](cplx s) { return std::exp(s * std::log(pd)); };
    const cplx A1p = F.A(1, p);
    const cplx B = 1.0 - A1p * pw(2.0 * w - 2.0) + A1p * pw(2.0 * w - 3.0) + pw(6.0 * w - 5.0) - 1.0 / (pd * pd) -
                   pw(6.0 * w - 6.0);
    const cplx L = F.L_p_dual(p, 2.0 * w - 1.0);
    if (chi.is_principal()) {
        if (beta >= 2) return static_cast<double>(q);
        return pw(4.0 - 6.0 * w) * L * B + (pd * pd - 2.0) / pd;
    }
    if (!chi.is_primitive()) throw std::domain_error("z_w_special: chi must be principal or primitive");
    const double s = chi.parity();
    cplx main = s * pw((5.0 - 6.0 * w) * static_cast<double>(beta)) * L * B;
    if (beta == 1) return main - s;
    return main - s * pw((5.0 - 6.0 * w) * static_cast<double>(beta - 1));
}

cplx z_limit_corollary(const DirichletCharacter& chi1, u64 q2, const HeckeCoefficientSource& F) {
    if (!F.selfdual()) throw std::domain_error("z_limit_corollary: requires a selfdual coefficient source");
    const u64 q1 = chi1.modulus();
    if (!chi1.is_primitive()) throw std::invalid_argument("z_limit_corollary: chi1 must be primitive");
    if (gcd_u(q1, q2) != 1) throw std::invalid_argument("z_limit_corollary: q1 and q2 must be coprime");
    if (!is_squarefree(q2)) return 0.0;
    const double q1d = static_cast<double>(q1);
    return static_cast<double>(chi1.parity()) * q1d * q1d * static_cast<double>(q2) / L_q(q1 * q2, F, 1.0);
}

bool z_support_predicted(const DirichletCharacter& psi, u64 q1, u64 q2) {
    if (psi.modulus() != q1 * q2) throw std::invalid_argument("z_support_predicted: psi must have modulus q1 q2");
    for (auto [p, beta] : factorize(q2).factors)
        if (beta >= 2 && !psi.local_component(p).is_principal()) return false;
    return true;
}

}  // namespace recip
