#include "recip/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

#include "recip/char_sums.hpp"
#include "recip/experiments.hpp"
#include "recip/special_functions.hpp"
#include "recip/z_local.hpp"

namespace recip {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Exact equality when both sides carry exact values, else a relative tolerance.
bool same(const ExpSumValue& a, const ExpSumValue& b, double tol = 1e-9) {
    if (a.is_exact() && b.is_exact()) return *a.exact == *b.exact;
    return std::abs(a.numeric - b.numeric) <= tol * (1 + std::abs(b.numeric));
}

double gap(const ExpSumValue& a, const ExpSumValue& b) {
    if (a.is_exact() && b.is_exact()) return (*a.exact == *b.exact) ? 0.0 : std::abs(a.numeric - b.numeric) + 1e-300;
    return std::abs(a.numeric - b.numeric);
}

ExpSumValue scaled(const ExpSumValue& v, const CyclotomicNumber& f) {
    if (v.is_exact()) return ExpSumValue::from_exact(*v.exact * f);
    return ExpSumValue::from_numeric(v.numeric * f.embed());
}

bool exactly_zero(const ExpSumValue& v) { return v.is_exact() ? v.exact->is_zero() : v.numeric == 0.0; }

std::string args_label(const VArgs& a) {
    return "m1=" + std::to_string(a.m1) + ";m2=" + std::to_string(a.m2) + ";m3=" + std::to_string(a.m3) +
           ";r=" + std::to_string(a.r);
}

bool in_family(VFamily f, const DirichletCharacter& chi, const DirichletCharacter& psi) {
    switch (f) {
        case VFamily::PrincipalPrincipal: return chi.is_principal() && psi.is_principal();
        case VFamily::PrincipalNonprincipal: return chi.is_principal() && !psi.is_principal();
        case VFamily::PrimitivePrincipal: return !chi.is_principal() && psi.is_principal();
        case VFamily::PrimitiveNonprincipal: return !chi.is_principal() && !psi.is_principal();
        case VFamily::All: return true;
    }
    return false;
}

// Characters admitted by the local closed forms: principal or primitive.
bool admissible_local(const DirichletCharacter& chi) { return chi.is_principal() || chi.is_primitive(); }

bool admissible(const DirichletCharacter& chi) {
    for (const DirichletCharacter& c : chi.local_components())
        if (!admissible_local(c)) return false;
    return true;
}

template <class T>
std::vector<T> spread(const std::vector<T>& v, std::size_t k) {
    if (v.size() <= k) return v;
    std::vector<T> out;
    for (std::size_t i = 0; i < k; ++i) out.push_back(v[i * v.size() / k]);
    return out;
}

}  // namespace

VFamily parse_v_family(const std::string& name) {
    if (name == "principal-principal" || name == "vchi-4.3") return VFamily::PrincipalPrincipal;
    if (name == "principal-nonprincipal" || name == "vchi-4.4") return VFamily::PrincipalNonprincipal;
    if (name == "primitive-principal" || name == "vchi-4.5") return VFamily::PrimitivePrincipal;
    if (name == "primitive-nonprincipal" || name == "vchi-4.6") return VFamily::PrimitiveNonprincipal;
    if (name == "all" || name == "v-closed-forms") return VFamily::All;
    throw std::invalid_argument("unknown character-sum family '" + name + "'");
}

std::string to_string(VFamily f) {
    switch (f) {
        case VFamily::PrincipalPrincipal: return "principal-principal";
        case VFamily::PrincipalNonprincipal: return "principal-nonprincipal";
        case VFamily::PrimitivePrincipal: return "primitive-principal";
        case VFamily::PrimitiveNonprincipal: return "primitive-nonprincipal";
        case VFamily::All: return "all";
    }
    return "all";
}

std::vector<u64> prime_powers_up_to(u64 bound) {
    std::vector<u64> out;
    for (u64 n = 2; n <= bound; ++n)
        if (factorize(n).factors.size() == 1) out.push_back(n);
    return out;
}

// ---- character sums

ExperimentReport verify_v_closed_forms(VFamily family, u64 max_prime_power, Backend backend, double bound_cap) {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentReport rep;
    rep.experiment = "v_closed_forms";
    rep.param("family", to_string(family));
    rep.param("max_prime_power", static_cast<double>(max_prime_power));
    rep.param("backend", to_string(backend));
    rep.param("bound_cap", bound_cap);
    long cases = 0, vanishing = 0, bound_only = 0;
    double worst_envelope = 0;
    for (u64 q : prime_powers_up_to(max_prime_power)) {
        const auto f = factorize(q).factors[0];
        const u64 p = f.first;
        const int beta = f.second;
        const auto chars = DirichletCharacter::enumerate(q);
        for (const DirichletCharacter& chi : chars) {
            if (!admissible_local(chi)) continue;
            for (const DirichletCharacter& psi : chars) {
                if (!in_family(family, chi, psi)) continue;
                for (int e3 = 0; e3 <= beta + 1; ++e3)
                    for (int e1 = e3; e1 <= beta + 1; ++e1)
                        for (int e2 = e1; e2 <= beta + 1; ++e2)
                            for (int er = 0; er <= beta + 1; ++er) {
                                const VArgs a{static_cast<i64>(ipow(p, e1)), static_cast<i64>(ipow(p, e2)),
                                              static_cast<i64>(ipow(p, e3)), static_cast<i64>(ipow(p, er))};
                                const VCaseResult c = v_closed_primepower(chi, psi, a, backend);
                                const ExpSumValue bf = v_bruteforce(chi, psi, a, backend);
                                const std::string pt = "q=" + std::to_string(q) + ";chi=" + chi.label() +
                                                       ";psi=" + psi.label() + ";" + args_label(a) +
                                                       ";case=" + c.case_label;
                                ++cases;
                                if (c.envelope > 0)
                                    worst_envelope = std::max(worst_envelope, std::abs(bf.numeric) / c.envelope);
                                if (!c.exact_identity) {
                                    ++bound_only;
                                    const double r = std::abs(bf.numeric) / c.bound;
                                    rep.check(pt + ";kind=bound", bf.numeric, c.bound, r, bound_cap);
                                    continue;
                                }
                                if (c.vanishing) {
                                    ++vanishing;
                                    // exact zero on the cyclotomic backend, rounding level otherwise
                                    const bool ok = backend == Backend::Numeric
                                                        ? std::abs(bf.numeric) <= 1e-9 * static_cast<double>(q * q)
                                                        : exactly_zero(c.value) && exactly_zero(bf);
                                    rep.add(pt + ";kind=vanishing", bf.numeric, 0, std::abs(bf.numeric),
                                            ok ? Status::Pass : Status::Fail);
                                    continue;
                                }
                                rep.add(pt + ";kind=exact", c.value.numeric, 0, gap(c.value, bf),
                                        same(c.value, bf) ? Status::Pass : Status::Fail);
                            }
            }
        }
    }
    rep.check("envelope", worst_envelope, bound_cap, worst_envelope / bound_cap, 1.0);
    rep.diag("cases", static_cast<double>(cases));
    rep.diag("vanishing", static_cast<double>(vanishing));
    rep.diag("bound_only", static_cast<double>(bound_only));
    rep.runtime_s = seconds_since(t0);
    return rep;
}

namespace {

struct MultCounts {
    long twist = 0, crt = 0, general = 0, grel = 0, bad = 0;
};

// Multiplicativity properties for one (chi, psi, args) triple at modulus q; rows only for failures
// and one summary row per modulus, to keep the report readable.
void mult_case(ExperimentReport& rep, const DirichletCharacter& chi, const DirichletCharacter& psi, const VArgs& a,
               const VArgs& coprime, MultCounts& n, const std::string& tag) {
    const u64 q = chi.modulus();
    const FactoredModulus& fm = chi.factored_modulus();
    const std::string pt = tag + ";q=" + std::to_string(q) + ";chi=" + chi.label() + ";psi=" + psi.label() + ";" +
                           args_label(a);
    const ExpSumValue base = v_bruteforce(chi, psi, a);

    // coprime twist
    const VArgs tw{a.m1 * coprime.m1, a.m2 * coprime.m2, a.m3 * coprime.m3, a.r * coprime.r};
    const ExpSumValue lhs = v_bruteforce(chi, psi, tw);
    const CyclotomicNumber fac =
        psi.evaluate(coprime.m1 * coprime.m2 * coprime.m3) * psi.conj().evaluate(coprime.r);
    const ExpSumValue rhs = scaled(base, fac);
    ++n.twist;
    if (!same(lhs, rhs)) {
        ++n.bad;
        rep.add(pt + ";property=coprime-twist", lhs.numeric, 0, gap(lhs, rhs), Status::Fail);
    }

    // CRT factorization along the first prime power
    if (fm.factors.size() >= 2) {
        const u64 p = fm.factors[0].first;
        const u64 q1 = fm.prime_power(p), q2 = q / q1;
        const DirichletCharacter chi1 = chi.local_component(p), chi2 = chi.complement_component(p);
        const DirichletCharacter psi1 = psi.local_component(p), psi2 = psi.complement_component(p);
        const FactoredModulus f1 = factorize(q1);
        auto split = [&](i64 m) {
            auto [c2, c1] = split_q_infinity(static_cast<u64>(m), f1);  // c1 | q1^infty
            return std::pair<i64, i64>{static_cast<i64>(c1), static_cast<i64>(c2)};
        };
        const auto [m11, m12] = split(a.m1);
        const auto [m21, m22] = split(a.m2);
        const auto [m31, m32] = split(a.m3);
        const auto [r1, r2] = split(a.r);
        // arguments must be supported on the primes of q for the factorization
        const FactoredModulus fq2 = factorize(q2);
        auto supported = [&](i64 m) { return split_q_infinity(static_cast<u64>(m), fq2).first == 1; };
        if (supported(m12) && supported(m22) && supported(m32) && supported(r2)) {
            const ExpSumValue v1 = v_bruteforce(chi1, psi1, VArgs{m11, m21, m31, r1});
            const ExpSumValue v2 = v_bruteforce(chi2, psi2, VArgs{m12, m22, m32, r2});
            const CyclotomicNumber tw1 = psi1.evaluate(m12 * m22 * m32) * psi1.conj().evaluate(static_cast<i64>(q2) * r2);
            const CyclotomicNumber tw2 = psi2.evaluate(m11 * m21 * m31) * psi2.conj().evaluate(static_cast<i64>(q1) * r1);
            ExpSumValue prod;
            if (v1.is_exact() && v2.is_exact())
                prod = ExpSumValue::from_exact(*v1.exact * *v2.exact * tw1 * tw2);
            else
                prod = ExpSumValue::from_numeric(v1.numeric * v2.numeric * tw1.embed() * tw2.embed());
            ++n.crt;
            if (!same(base, prod)) {
                ++n.bad;
                rep.add(pt + ";property=crt", base.numeric, 0, gap(base, prod), Status::Fail);
            }
        }
    }

    // the dispatching evaluator
    const ExpSumValue gen = v_general(chi, psi, a);
    ++n.general;
    if (!same(gen, base)) {
        ++n.bad;
        rep.add(pt + ";property=general", gen.numeric, 0, gap(gen, base), Status::Fail);
    }

    // g-relation, primitive characters only
    if (chi.is_primitive() && psi.is_primitive() && a.m1 == 1 && a.m2 == 1 && a.m3 == 1 && a.r == 1) {
        const ExpSumValue g = g_sum(chi, psi);
        const ExpSumValue tau = gauss(psi.conj(), 1);
        ExpSumValue r;
        if (g.is_exact() && tau.is_exact())
            r = ExpSumValue::from_exact(*tau.exact * *g.exact * static_cast<i64>(chi.parity()));
        else
            r = ExpSumValue::from_numeric(tau.numeric * g.numeric * static_cast<double>(chi.parity()));
        ++n.grel;
        if (!same(base, r)) {
            ++n.bad;
            rep.add(pt + ";property=g-relation", base.numeric, 0, gap(base, r), Status::Fail);
        }
    }
}

// Smallest tuple of integers > 1 coprime to q, used as twist multipliers.
VArgs coprime_multipliers(u64 q) {
    std::vector<i64> c;
    for (i64 k = 2; c.size() < 4; ++k)
        if (gcd_u(static_cast<u64>(k), q) == 1) c.push_back(k);
    return VArgs{c[0], c[1], c[0] * c[1], c[2]};
}

// Arguments supported on the primes of q: all units, then the radical in m1, m2 and r.
std::vector<VArgs> supported_args(u64 q) {
    const i64 rad = [&] {
        i64 r = 1;
        for (auto [p, e] : factorize(q).factors) r *= static_cast<i64>(p);
        return r;
    }();
    return {VArgs{1, 1, 1, 1}, VArgs{rad, rad * rad, 1, rad}};
}

}  // namespace

ExperimentReport verify_v_multiplicativity(u64 qmax, int random_cases, u64 random_qmax, u64 seed) {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentReport rep;
    rep.experiment = "v_multiplicativity";
    rep.param("qmax", static_cast<double>(qmax));
    rep.param("random_cases", static_cast<double>(random_cases));
    rep.param("random_qmax", static_cast<double>(random_qmax));
    rep.param("seed", static_cast<double>(seed));
    for (u64 q = 2; q <= qmax; ++q) {
        MultCounts n;
        const auto chars = DirichletCharacter::enumerate(q);
        const VArgs cop = coprime_multipliers(q);
        for (const DirichletCharacter& chi : chars)
            for (const DirichletCharacter& psi : chars)
                for (const VArgs& a : supported_args(q)) mult_case(rep, chi, psi, a, cop, n, "exhaustive");
        const std::string pt = "exhaustive;q=" + std::to_string(q) + ";twist=" + std::to_string(n.twist) +
                               ";crt=" + std::to_string(n.crt) + ";general=" + std::to_string(n.general) +
                               ";g-relation=" + std::to_string(n.grel);
        rep.add(pt, static_cast<double>(n.bad), 0, static_cast<double>(n.bad), n.bad ? Status::Fail : Status::Pass);
    }
    std::mt19937_64 rng(seed);
    std::vector<u64> composite;
    for (u64 q = 4; q <= random_qmax; ++q)
        if (!is_prime(q)) composite.push_back(q);
    for (int k = 0; k < random_cases; ++k) {
        const u64 q = composite[rng() % composite.size()];
        const auto chars = DirichletCharacter::enumerate(q);
        const DirichletCharacter& chi = chars[rng() % chars.size()];
        const DirichletCharacter& psi = chars[rng() % chars.size()];
        // random arguments built from the primes of q times a small cofactor
        auto draw = [&] {
            i64 m = 1;
            for (auto [p, e] : factorize(q).factors) m *= static_cast<i64>(ipow(p, static_cast<unsigned>(rng() % 3)));
            return m;
        };
        VArgs a{draw(), draw(), draw(), draw()};
        MultCounts n;
        mult_case(rep, chi, psi, a, coprime_multipliers(q), n, "random");
        if (chi.is_primitive() && psi.is_primitive()) mult_case(rep, chi, psi, VArgs{}, coprime_multipliers(q), n, "random");
        const std::string pt = "random;k=" + std::to_string(k) + ";q=" + std::to_string(q) + ";chi=" + chi.label() +
                               ";psi=" + psi.label() + ";" + args_label(a);
        rep.add(pt, static_cast<double>(n.bad), 0, static_cast<double>(n.bad), n.bad ? Status::Fail : Status::Pass);
    }
    rep.runtime_s = seconds_since(t0);
    return rep;
}

ExperimentReport verify_g_sums(int two_exp, u64 pmax) {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentReport rep;
    rep.experiment = "g_sums";
    rep.param("two_exp", static_cast<double>(two_exp));
    rep.param("pmax", static_cast<double>(pmax));
    for (int b = 1; b <= two_exp; ++b) {
        const u64 q = ipow(2, static_cast<unsigned>(b));
        const auto chars = DirichletCharacter::enumerate(q);
        long nonzero = 0;
        for (const DirichletCharacter& chi : chars)
            for (const DirichletCharacter& psi : chars)
                if (!exactly_zero(g_sum(chi, psi, Backend::Exact))) ++nonzero;
        rep.add("q=" + std::to_string(q) + ";pairs=" + std::to_string(chars.size() * chars.size()) + ";check=vanishing",
                static_cast<double>(nonzero), 0, static_cast<double>(nonzero), nonzero ? Status::Fail : Status::Pass);
    }
    for (u64 p = 3; p <= pmax; ++p) {
        if (!is_prime(p)) continue;
        const auto prim = DirichletCharacter::enumerate_primitive(p);
        double worst = 0;
        for (const DirichletCharacter& chi : prim)
            for (const DirichletCharacter& psi : prim) worst = std::max(worst, std::abs(g_sum(chi, psi, Backend::Numeric).numeric));
        const double bd = 3.0 * static_cast<double>(p);
        rep.check("p=" + std::to_string(p) + ";pairs=" + std::to_string(prim.size() * prim.size()) + ";check=max|g|",
                  worst, bd, worst / bd, 1.0);
    }
    rep.runtime_s = seconds_since(t0);
    return rep;
}

// ---- exponential sums

ExperimentReport verify_exp_sums(const ExpSumSweep& sw) {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentReport rep;
    rep.experiment = "exp_sums";
    rep.param("gauss_qmax", static_cast<double>(sw.gauss_qmax));
    rep.param("kl_pairs", static_cast<double>(sw.kl_pairs));
    rep.param("kl_cmax", static_cast<double>(sw.kl_cmax));
    rep.param("ram_max", static_cast<double>(sw.ram_max));
    rep.param("hb_qmax", static_cast<double>(sw.hb_qmax));
    rep.param("seed", static_cast<double>(sw.seed));

    for (u64 q = 1; q <= sw.gauss_qmax; ++q) {
        long bad = 0, n = 0;
        double worst = 0;
        for (const DirichletCharacter& chi : DirichletCharacter::enumerate(q))
            for (u64 a = 0; a < q; ++a) {
                const ExpSumValue d = gauss(chi, static_cast<i64>(a)), c = gauss_closed_induced(chi, static_cast<i64>(a));
                ++n;
                if (!same(d, c)) ++bad;
                worst = std::max(worst, gap(d, c));
            }
        rep.add("gauss;q=" + std::to_string(q) + ";cases=" + std::to_string(n), static_cast<double>(bad), 0, worst,
                bad ? Status::Fail : Status::Pass);
    }

    std::mt19937_64 rng(sw.seed);
    for (int k = 0; k < sw.kl_pairs; ++k) {
        u64 c1, c2;
        do {
            c1 = 2 + rng() % (sw.kl_cmax - 1);
            c2 = 2 + rng() % (sw.kl_cmax - 1);
        } while (gcd_u(c1, c2) != 1);
        const auto ch1 = DirichletCharacter::enumerate(c1), ch2 = DirichletCharacter::enumerate(c2);
        const DirichletCharacter& x1 = ch1[rng() % ch1.size()];
        const DirichletCharacter& x2 = ch2[rng() % ch2.size()];
        const i64 m = static_cast<i64>(rng() % (c1 * c2)), n = static_cast<i64>(rng() % (c1 * c2));
        const DirichletCharacter x = combine_components({x1, x2});
        const i64 c1b = static_cast<i64>(inv_mod(static_cast<i64>(c2), c1));  // inverse of c2 mod c1
        const i64 c2b = static_cast<i64>(inv_mod(static_cast<i64>(c1), c2));  // inverse of c1 mod c2
        const ExpSumValue lhs = kloosterman(x, m, n, c1 * c2);
        const ExpSumValue a1 = kloosterman(x1, m * c1b, n * c1b, c1), a2 = kloosterman(x2, m * c2b, n * c2b, c2);
        const ExpSumValue b1 = kloosterman(x1, m, n * c1b * c1b, c1), b2 = kloosterman(x2, m, n * c2b * c2b, c2);
        const cplx first = a1.numeric * a2.numeric;
        const cplx second = x1.value(static_cast<i64>(c2)) * x2.value(static_cast<i64>(c1)) * b1.numeric * b2.numeric;
        const double err = std::max(std::abs(lhs.numeric - first), std::abs(lhs.numeric - second));
        const double tol = 1e-9 * (1 + std::abs(lhs.numeric));
        rep.add("kloosterman;c1=" + std::to_string(c1) + ";c2=" + std::to_string(c2) + ";chi1=" + x1.label() +
                    ";chi2=" + x2.label() + ";m=" + std::to_string(m) + ";n=" + std::to_string(n),
                lhs.numeric, 0, err, err <= tol ? Status::Pass : Status::Fail);
    }

    {
        long bad = 0;
        u64 first_bad = 0;
        for (u64 q = 1; q <= sw.ram_max; ++q)
            for (i64 n = 1; n <= static_cast<i64>(sw.ram_max); ++n)
                if (ramanujan(q, n) != ramanujan_definition(q, n)) {
                    if (!bad) first_bad = q;
                    ++bad;
                }
        rep.add("ramanujan;qmax=" + std::to_string(sw.ram_max) + ";nmax=" + std::to_string(sw.ram_max) +
                    (bad ? ";first_bad_q=" + std::to_string(first_bad) : ""),
                static_cast<double>(bad), 0, static_cast<double>(bad), bad ? Status::Fail : Status::Pass);
    }

    for (u64 q = 3; q <= sw.hb_qmax; ++q) {
        const auto prim = DirichletCharacter::enumerate_primitive(q);
        if (prim.empty()) continue;
        // S(psi, k, n) = e(-nk/q) S(conj psi, k, -n); with psi in place of conj psi only for real psi
        long bad = 0, n = 0, literal_off = 0;
        for (const DirichletCharacter& psi : spread(prim, 3)) {
            const DirichletCharacter psib = psi.conj();
            const u64 step = std::max<u64>(1, q / 8);
            for (u64 k = 0; k < q; k += step)
                for (i64 m : {i64(0), i64(1), i64(2), static_cast<i64>(q / 2), static_cast<i64>(q) - 1}) {
                    const ExpSumValue a = heath_brown_S(psi, static_cast<i64>(k), m);
                    const CyclotomicNumber tw =
                        CyclotomicNumber::root_of_unity(q, mod_floor(-m * static_cast<i64>(k), static_cast<i64>(q)));
                    const ExpSumValue b = scaled(heath_brown_S(psib, static_cast<i64>(k), -m), tw);
                    const ExpSumValue c = scaled(heath_brown_S(psi, static_cast<i64>(k), -m), tw);
                    ++n;
                    if (!same(a, b)) ++bad;
                    if (!same(a, c)) {
                        if (psi.is_real()) ++bad;
                        else ++literal_off;
                    }
                }
        }
        rep.add("heath-brown-symmetry;q=" + std::to_string(q) + ";cases=" + std::to_string(n), static_cast<double>(bad),
                0, static_cast<double>(bad), bad ? Status::Fail : Status::Pass);
        if (literal_off)
            rep.add("heath-brown-symmetry-same-character;q=" + std::to_string(q) + ";complex-psi-mismatches",
                    static_cast<double>(literal_off), 0, 0, Status::Info);
    }
    rep.runtime_s = seconds_since(t0);
    return rep;
}

// ---- local factors

namespace {

HeckeCoefficientSource random_imaginary_source(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1, 1);
    return HeckeCoefficientSource::eisenstein({cplx(0, u(rng)), cplx(0, u(rng)), cplx(0, u(rng))});
}

}  // namespace

ExperimentReport verify_z_factorization(const std::vector<u64>& qs, u64 seed, double tol) {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentReport rep;
    rep.experiment = "z_factorization";
    rep.param("seed", static_cast<double>(seed));
    rep.param("tol", tol);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ut(-3, 3);
    for (u64 q : qs) {
        const HeckeCoefficientSource F = random_imaginary_source(rng);
        std::vector<std::pair<DirichletCharacter, DirichletCharacter>> pairs;
        const auto chars = DirichletCharacter::enumerate(q);
        for (const DirichletCharacter& chi : chars) {
            if (!admissible(chi)) continue;
            for (const DirichletCharacter& psi : chars) pairs.emplace_back(chi, psi);
        }
        double worst_prod = 0, worst_direct = 0;
        std::size_t n = 0;
        for (const auto& [chi, psi] : spread(pairs, 48)) {
            const double t = ut(rng);
            const ZGlobal g = z_global(chi, psi, F, t);
            cplx prod = 1;
            for (u64 p : chi.factored_modulus().primes())
                prod *= z_tilde(chi.local_component(p), psi.local_component(p), psi.complement_component(p), F, t).value;
            const cplx direct = z_direct(chi, psi, F, 0.5, cplx(0, t));
            worst_prod = std::max(worst_prod, std::abs(g.value - prod) / (1 + std::abs(prod)));
            worst_direct = std::max(worst_direct, std::abs(g.value - direct) / (1 + std::abs(direct)));
            ++n;
        }
        const std::string pt = "q=" + std::to_string(q) + ";pairs=" + std::to_string(n) + ";coeffs=" + F.describe();
        rep.check(pt + ";against=local-product", worst_prod, tol, worst_prod / tol, 1.0);
        rep.check(pt + ";against=direct-sum", worst_direct, tol, worst_direct / tol, 1.0);
    }
    rep.runtime_s = seconds_since(t0);
    return rep;
}

ExperimentReport verify_z_support(const std::vector<std::pair<u64, u64>>& moduli) {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentReport rep;
    rep.experiment = "z_support";
    const HeckeCoefficientSource F = HeckeCoefficientSource::eisenstein({cplx(0, 0.3), cplx(0, -0.1), cplx(0, 0.5)});
    rep.param("coeffs", F.describe());
    for (auto [q1, q2] : moduli) {
        for (const DirichletCharacter& chi1 : DirichletCharacter::enumerate_primitive(q1)) {
            const DirichletCharacter chi = combine_components({chi1, DirichletCharacter::principal(q2)});
            long outside = 0, inside = 0, wrong = 0, inside_zero = 0;
            for (const DirichletCharacter& psi : DirichletCharacter::enumerate(q1 * q2)) {
                const ZGlobal z = z_global(chi, psi, F, 0.7);
                const bool zero = z.value == cplx(0.0);
                if (z_support_predicted(psi, q1, q2)) {
                    ++inside;
                    if (zero) ++inside_zero;
                } else {
                    ++outside;
                    if (!zero || !z.vanishing) ++wrong;
                }
            }
            const std::string pt = "q1=" + std::to_string(q1) + ";q2=" + std::to_string(q2) + ";chi1=" + chi1.label() +
                                   ";inside=" + std::to_string(inside) + ";outside=" + std::to_string(outside) +
                                   ";inside_zero=" + std::to_string(inside_zero);
            rep.add(pt, static_cast<double>(wrong), 0, static_cast<double>(wrong), wrong ? Status::Fail : Status::Pass);
        }
    }
    rep.runtime_s = seconds_since(t0);
    return rep;
}

ExperimentReport verify_z_closed_forms(const std::vector<u64>& prime_powers, int samples, u64 seed, double tol) {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentReport rep;
    rep.experiment = "z_closed_forms";
    rep.param("samples", static_cast<double>(samples));
    rep.param("seed", static_cast<double>(seed));
    rep.param("tol", tol);
    std::mt19937_64 rng(seed);
    // z = 2w - 3/2 lies in the region of absolute convergence for w > 19/28
    std::uniform_real_distribution<double> uw(0.75, 2.0);
    const HeckeCoefficientSource F0 = HeckeCoefficientSource::eisenstein({});
    for (u64 q : prime_powers) {
        const HeckeCoefficientSource Fr = random_imaginary_source(rng);
        for (const DirichletCharacter& chi : DirichletCharacter::enumerate(q)) {
            if (!admissible_local(chi)) continue;
            for (const HeckeCoefficientSource* F : {&F0, &Fr}) {
                double worst = 0;
                for (int k = 0; k < samples; ++k) {
                    const double w = uw(rng);
                    const cplx closed = z_w_special(chi, *F, w);
                    const cplx direct = z_direct(chi, DirichletCharacter::principal(q), *F, w, 2 * w - 1.5);
                    worst = std::max(worst, std::abs(closed - direct) / (1 + std::abs(direct)));
                }
                rep.check("q=" + std::to_string(q) + ";chi=" + chi.label() + ";coeffs=" + F->describe(), worst, tol,
                          worst / tol, 1.0);
            }
        }
    }
    rep.runtime_s = seconds_since(t0);
    return rep;
}

ExperimentReport verify_z_limit(const std::vector<std::pair<u64, u64>>& moduli, double tol) {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentReport rep;
    rep.experiment = "z_limit";
    rep.param("tol", tol);
    const HeckeCoefficientSource F = HeckeCoefficientSource::eisenstein({});
    rep.param("coeffs", F.describe());
    ZOptions opt;
    opt.allow_continuation = true;
    constexpr int levels = 6;
    constexpr double h0 = 0.05;
    for (auto [q1, q2] : moduli) {
        const DirichletCharacter chi1 = first_primitive(q1);
        const u64 q = q1 * q2;
        const DirichletCharacter chi = combine_components({chi1, DirichletCharacter::principal(q2)});
        const DirichletCharacter psi0 = DirichletCharacter::principal(q);
        // Richardson table on h_k = h0 2^{-k}, error expansion in integer powers of h
        std::vector<std::vector<cplx>> R(levels, std::vector<cplx>(levels));
        for (int k = 0; k < levels; ++k) {
            const double w = 0.5 + h0 * std::ldexp(1.0, -k);
            R[k][0] = z_global_wz(chi, psi0, F, w, 2 * w - 1.5, opt).value / L_q_dual(q, F, 2 * w - 1);
            for (int j = 1; j <= k; ++j) {
                const double f = std::ldexp(1.0, j);
                R[k][j] = (f * R[k][j - 1] - R[k - 1][j - 1]) / (f - 1);
            }
        }
        const cplx extrap = R[levels - 1][levels - 1];
        const cplx closed = z_limit_corollary(chi1, q2, F);
        const double err = std::abs(extrap - closed) / std::max(1.0, std::abs(closed));
        rep.check("q1=" + std::to_string(q1) + ";q2=" + std::to_string(q2) + ";chi1=" + chi1.label() +
                      ";closed=" + format_number(closed.real()),
                  extrap, tol, err / tol, 1.0);
    }
    rep.runtime_s = seconds_since(t0);
    return rep;
}

// ---- transforms

ExperimentReport verify_transform_identities(const TransformSweep& sw) {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentReport rep;
    rep.experiment = "transform_identities";
    rep.param("T", sw.T);
    rep.param("U", sw.U);
    rep.param("C", static_cast<double>(sw.C));
    rep.param("tol", sw.tol);
    rep.param("moment_tol", sw.moment_tol);
    const TestFunctionPair pair(sw.T, sw.U, sw.C);
    const TransformEngine eng(pair);

    for (cplx s : sw.s_points) {
        const RouteComparison r = mellin_H_routes(eng, s);
        rep.check("identity=mellin-fourier;s=" + format_number(s.real()) + (s.imag() < 0 ? "" : "+") +
                      format_number(s.imag()) + "i",
                  r.spectral, sw.tol, r.rel, sw.tol);
    }

    const std::vector<cplx> S{cplx(0.6, 0), cplx(0.6, 4), cplx(-1.4, 2)};
    for (double r : {0.5, 1.0, 3.0})
        for (cplx s : S) {
            const cplx c = mellin_J_plus(r, s), n = mellin_J_plus_numeric(r, s);
            rep.check("identity=kernel-mellin-plus;r=" + format_number(r) + ";S=" + format_number(s.real()) + "+" +
                          format_number(s.imag()) + "i",
                      c, sw.tol, std::abs(c - n) / std::abs(c), sw.tol);
        }
    for (int k : {2, 4, 6, 8})
        for (cplx s : S) {
            const cplx c = mellin_J_hol(k, s), n = mellin_J_hol_numeric(k, s);
            rep.check("identity=kernel-mellin-hol;k=" + std::to_string(k) + ";S=" + format_number(s.real()) + "+" +
                          format_number(s.imag()) + "i",
                      c, sw.tol, std::abs(c - n) / std::abs(c), sw.tol);
        }

    const double TU = sw.T * sw.U, mt = sw.moment_tol * TU;
    for (int l = 0; l <= sw.C; ++l) {
        const double m = eng.F_moment(l);
        rep.check("identity=vanishing-moment;l=" + std::to_string(l), m, mt, std::abs(m) / mt, 1.0);
        const cplx mh = eng.F_hol_moment(l);
        rep.check("identity=vanishing-moment-hol;l=" + std::to_string(l), mh, mt, std::abs(mh) / mt, 1.0);
    }

    struct Triple {
        double t, u, tg, tol;
    };
    for (Triple x : {Triple{1.3, 0.15, 0.4, sw.tol}, Triple{0.7, 0.25, 0.1, sw.tol}, Triple{-2.0, 0.1, 1.2, sw.tol},
                     Triple{1.3, 0.02, 0.4, 1e-5}})
        for (int sign : {1, -1}) {
            const HyperIdentity h = hyper_identity_check(x.t, x.u, x.tg, sign);
            rep.check("identity=hypergeometric;t=" + format_number(x.t) + ";u=" + format_number(x.u) +
                          ";tg=" + format_number(x.tg) + ";sign=" + (sign > 0 ? "+" : "-"),
                      h.lhs, x.tol, h.rel, x.tol);
        }

    const MainTerms mtm = eng.main_terms();
    rep.add("main-term=maass/TU", mtm.maass_mass / TU, 0, mtm.maass_mass / TU,
            mtm.maass_mass > 0 ? Status::Pass : Status::Fail);
    rep.add("main-term=hol/TU", mtm.hol_mass / TU, 0, mtm.hol_mass / TU, Status::Info);
    rep.runtime_s = seconds_since(t0);
    return rep;
}

ExperimentReport verify_hscript_localization(const LocalizationSweep& sw) {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentReport rep;
    rep.experiment = "hscript_localization";
    rep.param("T", sw.T);
    rep.param("U", sw.U);
    rep.param("C", static_cast<double>(sw.C));
    rep.param("sigma2", sw.hscript.sigma2);
    rep.param("tau_max", sw.hscript.tau_max);
    const TestFunctionPair pair(sw.T, sw.U, sw.C);
    const TransformEngine eng(pair);
    const HScriptEvaluator H(eng, sw.mu, sw.hscript);
    const double inner = sw.T / sw.U;
    // H^-(t) = conj H^+(-t) for real spectral parameters, so the + branch on a symmetric grid covers both
    for (int i = 0; i < sw.inner_points; ++i) {
        const double t = -inner + 2 * inner * i / (sw.inner_points - 1);
        const cplx v = H.eval(t, +1).value;
        const double r = std::abs(v) / sw.U;
        const bool ok = std::isfinite(r) && r >= sw.lo && r <= sw.hi;
        rep.add("region=inner;t=" + format_number(t), v, sw.U, r, ok ? Status::Pass : Status::Fail);
    }
    std::vector<double> lx, ly;
    for (int i = 0; i < sw.outer_points; ++i) {
        const double t = 2 * inner * std::pow(5.0, static_cast<double>(i) / (sw.outer_points - 1));
        const double m = std::max(std::abs(H.eval(t, +1).value), std::abs(H.eval(-t, +1).value));
        rep.add("region=outer;|t|=" + format_number(t), m, 0, 0, Status::Info);
        lx.push_back(std::log(t));
        ly.push_back(std::log(m));
    }
    // least-squares slope of log |H| against log |t|
    const double n = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double limit = -sw.C + sw.slack;
    rep.add("fit=decay-exponent", slope, limit, slope, slope <= limit ? Status::Pass : Status::Fail);
    rep.runtime_s = seconds_since(t0);
    return rep;
}

// ---- L-functions

ExperimentReport verify_l_functions(u64 qmax, double fe_tol, double zeta_tol) {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentReport rep;
    rep.experiment = "l_functions";
    rep.param("qmax", static_cast<double>(qmax));
    rep.param("fe_tol", fe_tol);
    rep.param("zeta_tol", zeta_tol);
    std::vector<cplx> grid;
    for (int j = 0; j <= 10; ++j) grid.emplace_back(0.25 + 0.05 * j, -10.0 + 2.0 * j);
    for (u64 q = 3; q <= qmax; ++q) {
        const auto prim = DirichletCharacter::enumerate_primitive(q);
        if (prim.empty()) continue;
        double worst = 0;
        for (const DirichletCharacter& psi : prim)
            for (cplx s : grid) worst = std::max(worst, functional_equation_residual(s, psi));
        rep.check("functional-equation;q=" + std::to_string(q) + ";characters=" + std::to_string(prim.size()), worst,
                  fe_tol, worst / fe_tol, 1.0);
    }
    const cplx z2 = riemann_zeta(2.0);
    const double exact = M_PI * M_PI / 6;
    const double err = std::abs(z2 - exact) / exact;
    rep.check("zeta(2)", z2, zeta_tol, err / zeta_tol, 1.0);
    rep.runtime_s = seconds_since(t0);
    return rep;
}

}  // namespace recip
