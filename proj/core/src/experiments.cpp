#include "recip/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>

#include "recip/exp_sums.hpp"
#include "recip/special_functions.hpp"
#include "recip/z_local.hpp"

namespace recip {

namespace {

cplx cpow(double x, cplx e) { return x == 1.0 ? cplx(1.0) : std::exp(e * std::log(x)); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_c(cplx z) {
    if (z.imag() == 0.0) return format_number(z.real());
    return format_number(z.real()) + (z.imag() < 0 ? "" : "+") + format_number(z.imag()) + "i";
}

// c0 | q^infty with c0 <= cap, ascending.
std::vector<u64> qpowers(const FactoredModulus& fm, u64 cap) {
    std::vector<u64> out{1};
    for (auto [p, beta] : fm.factors) {
        (void)beta;
        const std::size_t n = out.size();
        for (std::size_t i = 0; i < n; ++i)
            for (u64 v = out[i] * p; v <= cap; v *= p) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// The Kloosterman / Xi side, both signs at once; all exponential sums are tabulated per modulus.
class VoronoiLhs {
public:
    VoronoiLhs(const DirichletCharacter& chi, const HeckeCoefficientSource& F, cplx W, u64 M)
        : chi_(chi), q_(chi.modulus()), F_(F), W_(W), M_(M) {
        chiv_.resize(q_);
        for (u64 a = 0; a < q_; ++a) chiv_[a] = q_ == 1 ? cplx(1.0) : chi.value(static_cast<i64>(a));
    }

    // sum_{c1 | Q} sum_b Y_Q(c1, b) Xi(c1, sign b, l; W) for sign = -1, +1
    std::array<cplx, 2> inner(u64 Q, u64 l) {
        std::array<cplx, 2> out{0.0, 0.0};
        for (u64 c1 : divisors(Q)) {
            const std::vector<cplx>& Z = zt(Q, c1);
            const cplx c3l = cpow(static_cast<double>(c1) * c1 * c1 * static_cast<double>(l), W_);
            for (u64 n1 : divisors(c1 * l)) {
                const u64 C = c1 * l / n1;
                const std::vector<cplx>& P = p_table(n1, C);
                const cplx pref = static_cast<double>(c1) * c3l * cpow(static_cast<double>(n1), -1.0 - 2.0 * W_);
                std::array<cplx, 2> acc{0.0, 0.0};
                for (u64 x = 0; x < C; ++x) {
                    if (C > 1 && gcd_u(x, C) != 1) continue;
                    const cplx px = P[C == 1 ? 0 : inv_mod(static_cast<i64>(x), C)];
                    const u64 r = (x % c1) * (n1 % c1) % c1;
                    acc[0] += px * Z[(c1 - r) % c1];
                    acc[1] += px * Z[r];
                }
                out[0] += pref * acc[0];
                out[1] += pref * acc[1];
                ++terms_;
            }
        }
        return out;
    }

    long terms() const { return terms_; }

private:
    // G_Q(k) = sum_{a mod Q} chi(a) S_{chibar^2}(1, a; Q) e(ak / Q)
    const std::vector<cplx>& gq(u64 Q) {
        auto it = G_.find(Q);
        if (it != G_.end()) return it->second;
        const auto& e = unit_roots(Q);
        std::vector<cplx> B(Q, 0.0), S(Q, 0.0), G(Q, 0.0);
        for (u64 d = 0; d < Q; ++d) {
            if (Q > 1 && gcd_u(d, Q) != 1) continue;
            const cplx c = std::conj(chiv_[d % q_]);
            B[Q == 1 ? 0 : inv_mod(static_cast<i64>(d), Q)] += c * c * e[d % Q];
        }
        for (u64 a = 0; a < Q; ++a) {
            cplx s = 0;
            u64 idx = 0;
            for (u64 k = 0; k < Q; ++k, idx = (idx + a) % Q)
                if (B[k] != 0.0) s += B[k] * e[idx];
            S[a] = chiv_[a % q_] * s;
        }
        for (u64 k = 0; k < Q; ++k) {
            cplx s = 0;
            u64 idx = 0;
            for (u64 a = 0; a < Q; ++a, idx = (idx + k) % Q)
                if (S[a] != 0.0) s += S[a] * e[idx];
            G[k] = s;
        }
        return G_.emplace(Q, std::move(G)).first->second;
    }

    // Zt(r) = sum_{b in (Z/c1)^x} Y_Q(c1, b) e(br / c1), Y_Q(c1, b) = G_Q(bbar Q / c1)
    const std::vector<cplx>& zt(u64 Q, u64 c1) {
        const auto key = std::make_pair(Q, c1);
        auto it = Zt_.find(key);
        if (it != Zt_.end()) return it->second;
        const std::vector<cplx>& G = gq(Q);
        const auto& e = unit_roots(c1);
        std::vector<cplx> Y(c1, 0.0), Z(c1, 0.0);
        for (u64 b = 0; b < c1; ++b) {
            if (c1 > 1 && gcd_u(b, c1) != 1) continue;
            const u64 bbar = c1 == 1 ? 0 : inv_mod(static_cast<i64>(b), c1);
            Y[b] = G[bbar * (Q / c1) % Q];
        }
        for (u64 r = 0; r < c1; ++r) {
            cplx s = 0;
            for (u64 b = 0; b < c1; ++b)
                if (Y[b] != 0.0) s += Y[b] * e[b * r % c1];
            Z[r] = s;
        }
        return Zt_.emplace(key, std::move(Z)).first->second;
    }

    // P(y) = sum_{n2 <= M} A(n2, n1) n2^{-1-W} e(n2 y / C)
    const std::vector<cplx>& p_table(u64 n1, u64 C) {
        const auto key = std::make_pair(n1, C);
        auto it = P_.find(key);
        if (it != P_.end()) return it->second;
        auto cit = coef_.find(n1);
        if (cit == coef_.end()) {
            std::vector<cplx> a(M_ + 1, 0.0);
            for (u64 n2 = 1; n2 <= M_; ++n2) a[n2] = F_.A(n2, n1) * cpow(static_cast<double>(n2), -1.0 - W_);
            cit = coef_.emplace(n1, std::move(a)).first;
        }
        const std::vector<cplx>& a = cit->second;
        std::vector<cplx> b(std::min<u64>(C, M_ + 1), 0.0);
        std::vector<u64> res(b.size(), 0);
        if (C <= M_) {
            for (u64 n2 = 1; n2 <= M_; ++n2) b[n2 % C] += a[n2];
            for (u64 r = 0; r < C; ++r) res[r] = r;
        } else {
            for (u64 n2 = 1; n2 <= M_; ++n2) {
                b[n2] = a[n2];
                res[n2] = n2;
            }
        }
        const auto& e = unit_roots(C);
        std::vector<cplx> P(C, 0.0);
        for (u64 y = 0; y < C; ++y) {
            if (C > 1 && gcd_u(y, C) != 1) continue;
            cplx s = 0;
            for (std::size_t i = 0; i < b.size(); ++i)
                if (b[i] != 0.0) s += b[i] * e[res[i] * y % C];
            P[y] = s;
        }
        return P_.emplace(key, std::move(P)).first->second;
    }

    const DirichletCharacter& chi_;
    u64 q_;
    const HeckeCoefficientSource& F_;
    cplx W_;
    u64 M_;
    std::vector<cplx> chiv_;
    std::map<u64, std::vector<cplx>> G_;
    std::map<std::pair<u64, u64>, std::vector<cplx>> Zt_, P_;
    std::map<u64, std::vector<cplx>> coef_;
    long terms_ = 0;
};

}  // namespace

void validate_voronoi_region(cplx w, cplx s, const VoronoiContour& c) {
    const double u = w.real(), sg = s.real();
    auto fail = [](const std::string& m) { throw std::domain_error("voronoi identity: " + m); };
    if (!(u > 1.5)) fail("needs Re w > 3/2");
    if (!(5.0 - 6.0 * u < sg && sg < -2.0 * u - 1.0)) fail("needs 5 - 6 Re w < Re s < -2 Re w - 1");
    if (!(0.5 < c.x1 && c.x1 < -sg / 2.0 - u)) fail("needs 1/2 < x1 < -Re s / 2 - Re w");
    if (!(0.0 < c.delta && c.delta < sg / 2.0 + 3.0 * u - 2.0)) fail("needs 0 < delta < Re s / 2 + 3 Re w - 2");
}

std::array<VoronoiSides, 2> voronoi_identity_sides(const DirichletCharacter& chi, const HeckeCoefficientSource& F,
                                                   cplx w, cplx s, const VoronoiContour& contour,
                                                   const VoronoiTruncation& trunc) {
    if (!F.is_eisenstein()) throw std::domain_error("voronoi identity: needs an Eisenstein source");
    validate_voronoi_region(w, s, contour);
    const u64 q = chi.modulus();
    const cplx W = -s / 2.0 - w;
    std::array<VoronoiSides, 2> out;

    // left-hand side
    VoronoiLhs lhs(chi, F, W, trunc.n2_max);
    const std::vector<u64> c0s = qpowers(chi.factored_modulus(), trunc.c0_max);
    std::array<double, 2> shell{0.0, 0.0};
    for (u64 lp = 1; lp <= trunc.ell_max; ++lp) {
        if (gcd_u(lp, q) != 1) continue;
        std::array<cplx, 2> row{0.0, 0.0};
        for (u64 c0 : c0s)
            for (u64 cp : divisors(lp)) {
                const cplx wt = cpow(static_cast<double>(lp), -2.0 * w) * cpow(static_cast<double>(c0), s - 2.0) *
                                cpow(static_cast<double>(cp), s + 2.0 * w - 2.0);
                const auto in = lhs.inner(cp * c0 * q, lp / cp);
                row[0] += wt * in[0];
                row[1] += wt * in[1];
            }
        for (int k = 0; k < 2; ++k) {
            out[k].lhs += row[k];
            if (2 * lp > trunc.ell_max) shell[k] += std::abs(row[k]);
        }
    }

    // right-hand side: straightened line plus the G-poles between the line and the bent contour
    const auto psis = DirichletCharacter::enumerate(q);
    const cplx pref = cpow(static_cast<double>(q), 1.0 - s) / static_cast<double>(euler_phi(q));
    const cplx shift = s / 2.0 + w - 0.5;
    auto integrand = [&](cplx z, std::array<cplx, 2>& acc, cplx weight) {
        const std::vector<cplx> zf = hurwitz_residues(0.5 + z, q);
        const std::vector<cplx> zb = hurwitz_residues(2.0 * w - 0.5 - z, q);
        const bool mu0 = F.mu()[0] == 0.0 && F.mu()[1] == 0.0 && F.mu()[2] == 0.0;
        for (const DirichletCharacter& psi : psis) {
            cplx Lf;
            if (mu0) {
                const cplx L = q == 1 ? zf[0] : dirichlet_L_from(zf, 0.5 + z, psi);
                Lf = L * L * L;
            } else {
                Lf = gl3_L(0.5 + z, F, psi, LRoute::Product).value;
            }
            const DirichletCharacter pb = psi.conj();
            const cplx Lb = q == 1 ? zb[0] : dirichlet_L_from(zb, 2.0 * w - 0.5 - z, pb);
            const cplx Z = q == 1 ? cplx(1.0) : z_global_wz(chi, psi, F, w, z).value;
            const cplx base = Lf * Lb * Z * weight;
            const cplx pm = q == 1 ? cplx(1.0) : psi.value(-1);
            acc[0] += base * pm;
            acc[1] += base;
        }
    };
    // line: z = x1 + i tau, (1/2 pi i) dz = dtau / 2 pi
    NodeSet nodes;
    const double tmax = trunc.tau_max;
    double a = -tmax;
    while (a < tmax) {
        const double width = std::abs(a) < 40 ? 0.5 : std::min(4.0, 0.05 * std::abs(a));
        const double b = std::min(tmax, a + width);
        nodes.add_panel(a, b, 10);
        a = b;
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const cplx z(contour.x1, nodes.x[i]);
        std::array<cplx, 2> acc{0.0, 0.0};
        integrand(z, acc, 1.0);
        const cplx y = shift + z;
        out[0].rhs_line += nodes.w[i] / (2.0 * M_PI) * acc[0] * G_pm(y, -1);
        out[1].rhs_line += nodes.w[i] / (2.0 * M_PI) * acc[1] * G_pm(y, +1);
        if (i == 0 || i + 1 == nodes.size()) {
            out[0].rhs_edge = std::max(out[0].rhs_edge, std::abs(acc[0] * G_pm(y, -1)) * tmax / 2.0);
            out[1].rhs_edge = std::max(out[1].rhs_edge, std::abs(acc[1] * G_pm(y, +1)) * tmax / 2.0);
        }
    }
    // residues of G^{sign}(y) at y = -m: (2 pi)^m (-1)^m / m! e^{-sign pi i m / 2}
    for (int m = 0;; ++m) {
        const cplx zm = -static_cast<double>(m) - shift;
        if (!(zm.real() > contour.x1)) break;
        std::array<cplx, 2> acc{0.0, 0.0};
        integrand(zm, acc, 1.0);
        const double r = std::pow(2.0 * M_PI, m) * (m % 2 ? -1.0 : 1.0) / std::tgamma(m + 1.0);
        out[0].rhs_residues += acc[0] * r * std::exp(cplx(0.0, M_PI * m / 2.0));
        out[1].rhs_residues += acc[1] * r * std::exp(cplx(0.0, -M_PI * m / 2.0));
    }
    for (int k = 0; k < 2; ++k) {
        out[k].rhs_line *= pref;
        out[k].rhs_residues *= pref;
        out[k].rhs_edge *= std::abs(pref);
        out[k].rhs = out[k].rhs_line + out[k].rhs_residues;
        out[k].rel = std::abs(out[k].lhs - out[k].rhs) / std::abs(out[k].rhs);
        out[k].lhs_shell = shell[k];
        out[k].lhs_terms = lhs.terms();
        out[k].rhs_nodes = static_cast<long>(nodes.size());
    }
    return out;
}

ExperimentReport voronoi_identity_check(const DirichletCharacter& chi, const HeckeCoefficientSource& F, cplx w,
                                        cplx s, const VoronoiContour& contour, const VoronoiTruncation& trunc,
                                        double tol, bool doubling_check) {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentReport rep;
    rep.experiment = "voronoi_identity";
    rep.param("q", static_cast<double>(chi.modulus()));
    rep.param("chi", chi.label());
    rep.param("coeffs", F.describe());
    rep.param("w", fmt_c(w));
    rep.param("s", fmt_c(s));
    rep.param("x1", contour.x1);
    rep.param("delta", contour.delta);
    rep.param("ell_max", static_cast<double>(trunc.ell_max));
    rep.param("c0_max", static_cast<double>(trunc.c0_max));
    rep.param("n2_max", static_cast<double>(trunc.n2_max));
    rep.param("tau_max", trunc.tau_max);
    rep.param("tol", tol);
    const auto sides = voronoi_identity_sides(chi, F, w, s, contour, trunc);
    std::array<VoronoiSides, 2> fine;
    if (doubling_check) fine = voronoi_identity_sides(chi, F, w, s, contour, trunc.doubled());
    const double loose = std::max(1e-2, 10 * tol);
    for (int k = 0; k < 2; ++k) {
        const VoronoiSides& v = sides[k];
        const std::string sg = k == 0 ? "sign=-" : "sign=+";
        rep.add(sg + ";side=lhs", v.lhs, 0, 0, Status::Info);
        rep.add(sg + ";side=rhs", v.rhs, 0, 0, Status::Info);
        rep.check(sg + ";side=gap", v.lhs - v.rhs, std::abs(v.rhs), v.rel, tol);
        if (doubling_check) {
            const double r = fine[k].rel / v.rel;
            rep.check(sg + ";side=gap-doubled", fine[k].lhs - fine[k].rhs, std::abs(fine[k].rhs), fine[k].rel, tol);
            rep.add(sg + ";side=doubling-ratio", r, 1.0, r, r < 1.0 ? Status::Pass : Status::Fail);
        }
        rep.diag(sg + ";lhs_shell_rel", v.lhs_shell / std::abs(v.lhs));
        rep.diag(sg + ";rhs_edge_rel", v.rhs_edge / std::abs(v.rhs));
        if (v.lhs_shell / std::abs(v.lhs) > loose || v.rhs_edge / std::abs(v.rhs) > loose) rep.converged = false;
    }
    rep.diag("lhs_terms", static_cast<double>(sides[0].lhs_terms));
    rep.diag("rhs_nodes", static_cast<double>(sides[0].rhs_nodes));
    rep.runtime_s = seconds_since(t0);
    return rep;
}

// ---- moments

NodeSet t_grid(double T, int per_unit) {
    NodeSet ns;
    const int panels = std::max(1, static_cast<int>(std::ceil(2 * T * per_unit)));
    ns.add_uniform(-T, T, panels, 10);
    return ns;
}

namespace {

// int over [-T_k, T_k] of f for each T_k (ascending), by shells so that the nodes are shared.
std::vector<double> shell_integrals(const std::function<double(double)>& f, const std::vector<double>& Ts,
                                    int per_unit) {
    std::vector<double> out;
    double acc = 0, lo = 0;
    for (double T : Ts) {
        if (T < lo) throw std::invalid_argument("shell_integrals: T values must ascend");
        if (T > lo) {
            const int panels = std::max(1, static_cast<int>(std::ceil((T - lo) * per_unit)));
            NodeSet ns;
            ns.add_uniform(lo, T, panels, 10);
            for (std::size_t i = 0; i < ns.size(); ++i) acc += ns.w[i] * (f(ns.x[i]) + f(-ns.x[i]));
        }
        out.push_back(acc);
        lo = T;
    }
    return out;
}

std::vector<DirichletCharacter> coset(const DirichletCharacter& psi, u64 qprime) {
    std::vector<DirichletCharacter> out;
    for (const DirichletCharacter& c : DirichletCharacter::enumerate(qprime))
        out.push_back(multiply(psi, c.induce(psi.modulus())));
    return out;
}

double coset_bound(u64 q, u64 qp, double T, std::string* regime) {
    const double th = std::cbrt(static_cast<double>(q)) / std::pow(T, 2.0 / 3.0);
    if (static_cast<double>(qp) >= th) {
        if (regime) *regime = "large";
        return static_cast<double>(qp) * T;
    }
    if (regime) *regime = "small";
    return std::sqrt(static_cast<double>(q) / static_cast<double>(qp));
}

// sum over the characters of |L(1/2 + it, .)|^2 from one table of Hurwitz values
double coset_integrand(const std::vector<DirichletCharacter>& chars, double t) {
    const cplx s(0.5, t);
    const u64 q = chars.front().modulus();
    if (q == 1) return std::norm(riemann_zeta(s));
    const std::vector<cplx> z = hurwitz_residues(s, q);
    double acc = 0;
    for (const DirichletCharacter& c : chars) acc += std::norm(dirichlet_L_from(z, s, c));
    return acc;
}

// L(s, F x psi) = prod_j L(s + mu_j, psi) for an Eisenstein source
cplx eisenstein_L(cplx s, const std::array<cplx, 3>& mu, const DirichletCharacter& psi,
                  std::map<std::pair<double, double>, std::vector<cplx>>* cache = nullptr) {
    cplx out = 1;
    const u64 q = psi.modulus();
    for (const cplx& m : mu) {
        const cplx a = s + m;
        if (q == 1) {
            out *= riemann_zeta(a);
            continue;
        }
        if (cache) {
            auto key = std::make_pair(a.real(), a.imag());
            auto it = cache->find(key);
            if (it == cache->end()) it = cache->emplace(key, hurwitz_residues(a, q)).first;
            out *= dirichlet_L_from(it->second, a, psi);
        } else {
            out *= dirichlet_L(a, psi);
        }
    }
    return out;
}

}  // namespace

CosetMoment coset_second_moment_value(const DirichletCharacter& psi, u64 qprime, double T, int per_unit) {
    if (!psi.is_primitive()) throw std::invalid_argument("coset_second_moment: psi must be primitive");
    if (psi.modulus() % qprime != 0) throw std::invalid_argument("coset_second_moment: q' must divide q");
    const auto chars = coset(psi, qprime);
    CosetMoment m;
    m.value = shell_integrals([&](double t) { return coset_integrand(chars, t); }, {T}, per_unit).front();
    m.bound = coset_bound(psi.modulus(), qprime, T, &m.regime);
    return m;
}

ExperimentReport coset_second_moment(const DirichletCharacter& psi, const std::vector<u64>& qprimes,
                                     const std::vector<double>& Ts, int per_unit, double cap) {
    const auto t0 = std::chrono::steady_clock::now();
    if (!psi.is_primitive()) throw std::invalid_argument("coset_second_moment: psi must be primitive");
    const u64 q = psi.modulus();
    if (q > 500) throw std::invalid_argument("coset_second_moment: desk scale is q <= 500");
    ExperimentReport rep;
    rep.experiment = "coset_second_moment";
    rep.param("q", static_cast<double>(q));
    rep.param("psi", psi.label());
    rep.param("nodes_per_unit", static_cast<double>(per_unit));
    rep.param("cap", cap);
    for (u64 qp : qprimes) {
        if (q % qp != 0) throw std::invalid_argument("coset_second_moment: q' must divide q");
        const auto chars = coset(psi, qp);
        const auto vals = shell_integrals([&](double t) { return coset_integrand(chars, t); }, Ts, per_unit);
        double prev = 0;
        for (std::size_t i = 0; i < Ts.size(); ++i) {
            if (Ts[i] > 10) throw std::invalid_argument("coset_second_moment: desk scale is T <= 10");
            std::string regime;
            const double bd = coset_bound(q, qp, Ts[i], &regime);
            const std::string pt = "q'=" + std::to_string(qp) + ";T=" + format_number(Ts[i]) + ";regime=" + regime;
            rep.check(pt, vals[i], bd, vals[i] / bd, cap);
            if (i > 0)
                rep.add(pt + ";check=monotone", vals[i] - prev, 0, vals[i] - prev,
                        vals[i] >= prev ? Status::Pass : Status::Fail);
            prev = vals[i];
        }
    }
    rep.runtime_s = seconds_since(t0);
    return rep;
}

double gl3_second_moment_value(u64 q1, u64 q3, double T, const HeckeCoefficientSource& F, int per_unit) {
    if (!F.is_eisenstein()) throw std::invalid_argument("gl3_second_moment: table sources are rejected (series does not converge at 1/2)");
    if (gcd_u(q1, q3) != 1) throw std::invalid_argument("gl3_second_moment: q1 and q3' must be coprime");
    std::vector<DirichletCharacter> chars;
    const auto prim = q3 == 1 ? std::vector<DirichletCharacter>{DirichletCharacter()}
                              : DirichletCharacter::enumerate_primitive(q3);
    for (const DirichletCharacter& a : DirichletCharacter::enumerate(q1))
        for (const DirichletCharacter& b : prim) chars.push_back(combine_components({a, b}));
    const auto mu = F.mu();
    auto f = [&](double t) {
        std::map<std::pair<double, double>, std::vector<cplx>> cache;
        double acc = 0;
        for (const DirichletCharacter& c : chars) acc += std::norm(eisenstein_L(cplx(0.5, t), mu, c, &cache));
        return acc;
    };
    return shell_integrals(f, {T}, per_unit).front();
}

ExperimentReport gl3_second_moment(const std::vector<std::pair<u64, u64>>& moduli, double T,
                                   const HeckeCoefficientSource& F, int per_unit, double cap) {
    const auto t0 = std::chrono::steady_clock::now();
    if (!F.is_eisenstein()) throw std::invalid_argument("gl3_second_moment: table sources are rejected (series does not converge at 1/2)");
    if (T > 5) throw std::invalid_argument("gl3_second_moment: desk scale is T <= 5");
    ExperimentReport rep;
    rep.experiment = "gl3_second_moment";
    rep.param("T", T);
    rep.param("coeffs", F.describe());
    rep.param("nodes_per_unit", static_cast<double>(per_unit));
    rep.param("cap", cap);
    for (auto [q1, q3] : moduli) {
        if (q1 * q3 > 200) throw std::invalid_argument("gl3_second_moment: desk scale is q1 q3' <= 200");
        const double v = gl3_second_moment_value(q1, q3, T, F, per_unit);
        const double bd = std::pow(static_cast<double>(q1 * q3) * T, 1.5);
        rep.check("q1=" + std::to_string(q1) + ";q3'=" + std::to_string(q3), v, bd, v / bd, cap);
    }
    rep.runtime_s = seconds_since(t0);
    return rep;
}

namespace {

struct DualParts {
    std::vector<DirichletCharacter> support;
    int skipped = 0;
};

DualParts dual_support(u64 q1, u64 q2) {
    DualParts d;
    for (const DirichletCharacter& psi : DirichletCharacter::enumerate(q1 * q2)) {
        if (z_support_predicted(psi, q1, q2))
            d.support.push_back(psi);
        else
            ++d.skipped;  // Z vanishes identically there; nothing is evaluated
    }
    return d;
}

}  // namespace

DualMoment dual_moment_value(const DirichletCharacter& chi1, u64 q2, const HeckeCoefficientSource& F,
                             const DualOptions& opt) {
    if (!F.is_eisenstein()) throw std::invalid_argument("dual_moment: needs an Eisenstein source");
    if (!chi1.is_primitive()) throw std::invalid_argument("dual_moment: chi1 must be primitive");
    const u64 q1 = chi1.modulus(), q = q1 * q2;
    if (gcd_u(q1, q2) != 1) throw std::invalid_argument("dual_moment: q1 and q2 must be coprime");
    const DirichletCharacter chi = combine_components({chi1, DirichletCharacter::principal(q2)});
    const DualParts parts = dual_support(q1, q2);
    const auto mu = F.mu();
    std::unique_ptr<TransformEngine> eng;
    std::unique_ptr<HScriptEvaluator> hs;
    if (opt.weight == DualWeight::HScript) {
        eng = std::make_unique<TransformEngine>(TestFunctionPair(opt.pair_T, opt.pair_U, opt.pair_C));
        hs = std::make_unique<HScriptEvaluator>(*eng, mu, opt.hscript);
    }
    DualMoment out;
    out.characters = static_cast<int>(parts.support.size());
    out.skipped = parts.skipped;
    const NodeSet nodes = t_grid(opt.T, opt.per_unit);
    const double phiq = static_cast<double>(euler_phi(q));
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double t = nodes.x[i];
        std::map<std::pair<double, double>, std::vector<cplx>> cache;
        cplx hp = 0, hm = 0;
        if (hs) {
            hp = hs->eval(t, +1).value;
            hm = hs->eval(t, -1).value;
        }
        for (const DirichletCharacter& psi : parts.support) {
            const cplx Lf = eisenstein_L(cplx(0.5, t), mu, psi, &cache);
            const cplx Lb = q == 1 ? riemann_zeta(cplx(0.5, -t)) : dirichlet_L(cplx(0.5, -t), psi.conj());
            const cplx Z = q == 1 ? cplx(1.0) : z_global(chi, psi, F, t).value;
            const cplx v = Lf * Lb * Z;
            cplx wt = 1.0;
            if (hs) {
                // sum_{+-} psi(-+1) H^{+-}(t)
                const cplx pm = q == 1 ? cplx(1.0) : psi.value(-1);
                wt = pm * hp + hm;
            }
            out.abs_value += nodes.w[i] * std::abs(v * wt) / phiq;
            out.signed_value += nodes.w[i] * v * wt / (2 * M_PI * phiq);
        }
    }
    return out;
}

ExperimentReport dual_moment(const std::vector<std::pair<u64, u64>>& moduli, const HeckeCoefficientSource& F,
                             const DualOptions& opt, double cap) {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentReport rep;
    rep.experiment = "dual_moment";
    rep.param("weight", opt.weight == DualWeight::Indicator ? "indicator" : "hscript");
    rep.param("T", opt.T);
    rep.param("coeffs", F.describe());
    rep.param("nodes_per_unit", static_cast<double>(opt.per_unit));
    if (opt.weight == DualWeight::HScript) {
        rep.param("pair_T", opt.pair_T);
        rep.param("pair_U", opt.pair_U);
        rep.param("pair_C", static_cast<double>(opt.pair_C));
    }
    rep.param("cap", cap);
    for (auto [q1, q2] : moduli) {
        if (q1 * q2 > 60) throw std::invalid_argument("dual_moment: desk scale is q1 q2 <= 60");
        const DirichletCharacter chi1 = q1 == 1 ? DirichletCharacter() : first_primitive(q1);
        const std::string base = "q1=" + std::to_string(q1) + ";q2=" + std::to_string(q2) + ";chi1=" + chi1.label();
        // characters outside the predicted support contribute exactly zero and are not evaluated
        const DualParts parts = dual_support(q1, q2);
        rep.add(base + ";outside-support=" + std::to_string(parts.skipped), 0.0, 0, 0, Status::Pass);
        if (opt.weight == DualWeight::Indicator) {
            double prev = 0;
            const int steps = std::max(1, static_cast<int>(std::round(opt.T)));
            for (int k = 1; k <= steps; ++k) {
                DualOptions o = opt;
                o.T = opt.T * k / steps;
                const DualMoment m = dual_moment_value(chi1, q2, F, o);
                const double bd = static_cast<double>(q1) * std::sqrt(static_cast<double>(q2)) * o.T;
                const std::string pt = base + ";T=" + format_number(o.T);
                rep.add(pt + ";variant=signed", m.signed_value, 0, 0, Status::Info);
                if (k == steps)
                    rep.check(pt + ";variant=abs", m.abs_value, bd, m.abs_value / bd, cap);
                else
                    rep.add(pt + ";variant=abs", m.abs_value, bd, m.abs_value / bd, Status::Info);
                if (k > 1)
                    rep.add(pt + ";check=monotone", m.abs_value - prev, 0, m.abs_value - prev,
                            m.abs_value >= prev ? Status::Pass : Status::Fail);
                prev = m.abs_value;
            }
        } else {
            const DualMoment m = dual_moment_value(chi1, q2, F, opt);
            const bool fin = std::isfinite(m.abs_value) && std::isfinite(std::abs(m.signed_value));
            rep.add(base + ";variant=signed", m.signed_value, 0, 0, fin ? Status::Pass : Status::Fail);
            rep.add(base + ";variant=abs", m.abs_value, 0, 0, fin ? Status::Pass : Status::Fail);
        }
    }
    rep.runtime_s = seconds_since(t0);
    return rep;
}

// ---- Heath-Brown tables

std::vector<u64> hb_sample_moduli(u64 qmax, std::size_t count) {
    std::vector<u64> pp;  // prime powers with a primitive character
    for (u64 n = 3; n <= qmax; ++n) {
        const FactoredModulus fm = factorize(n);
        if (fm.factors.size() == 1 && n != 2) pp.push_back(n);
    }
    std::vector<u64> all = pp;
    for (std::size_t i = 0; i < pp.size(); ++i)
        for (std::size_t j = i + 1; j < pp.size(); ++j) {
            if (gcd_u(pp[i], pp[j]) != 1 || pp[i] * pp[j] > qmax) continue;
            const u64 n = pp[i] * pp[j];
            if (!is_squarefree(n)) all.push_back(n);  // keep the prime-power-rich products only
        }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    std::vector<u64> rich, rest;
    for (u64 n : all) (is_squarefree(n) ? rest : rich).push_back(n);
    std::vector<u64> out;
    auto take = [&](const std::vector<u64>& v, std::size_t k) {
        if (v.empty() || k == 0) return;
        for (std::size_t i = 0; i < k; ++i) out.push_back(v[i * v.size() / k]);
    };
    const std::size_t kr = std::min(rich.size(), (count * 3) / 4);
    take(rich, kr);
    take(rest, std::min(rest.size(), count - kr));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ExperimentReport hb_bound_table(const std::vector<u64>& qs, long A, long B, double cap) {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentReport rep;
    rep.experiment = "hb_bound_table";
    rep.param("A", static_cast<double>(A));
    rep.param("B", static_cast<double>(B));
    rep.param("cap", cap);
    for (u64 q : qs) {
        if (q > 500) throw std::invalid_argument("hb_bound_table: desk scale is q <= 500");
        const auto prim = DirichletCharacter::enumerate_primitive(q);
        if (prim.empty()) continue;
        const DirichletCharacter& psi = prim.front();
        const Backend be = q <= 64 ? Backend::Auto : Backend::Numeric;
        const double qd = static_cast<double>(q);
        const std::string base = "q=" + std::to_string(q) + ";psi=" + psi.label();
        const double s00 = std::abs(heath_brown_S(psi, 0, 0, be).numeric);
        const double phi = static_cast<double>(euler_phi(q));
        rep.add(base + ";row=h=n=0", s00 * static_cast<double>(A), static_cast<double>(A) * phi,
                std::abs(s00 - phi), std::abs(s00 - phi) < 1e-9 * phi ? Status::Pass : Status::Fail);
        for (u64 qp : divisors(q)) {
            const double qpd = static_cast<double>(qp);
            double s1 = 0, s2 = 0;
            for (long h = 1; h <= A; ++h) {
                const i64 hh = 4 * h * static_cast<i64>(qp);
                s1 += std::abs(heath_brown_S(psi, hh, 0, be).numeric);
                for (long n = 1; n <= B; ++n) s2 += std::abs(heath_brown_S(psi, hh, n, be).numeric);
            }
            const std::string pt = base + ";q'=" + std::to_string(qp);
            const double b1 = static_cast<double>(A) * qpd;
            rep.check(pt + ";sum=h", s1, b1, s1 / b1, cap);
            const bool small = static_cast<double>(A) * std::pow(static_cast<double>(B), 4.0 / 3.0) <= qpd * std::cbrt(qd);
            const double b2 = small ? std::pow(static_cast<double>(A) * qpd, 0.25) * std::pow(qd, 0.75)
                                    : static_cast<double>(A * B) * std::sqrt(qd / qpd);
            rep.check(pt + ";sum=hn;regime=" + (small ? "small" : "large"), s2, b2, s2 / b2, cap);
        }
    }
    rep.runtime_s = seconds_since(t0);
    return rep;
}

DirichletCharacter first_primitive(u64 q) {
    const auto prim = DirichletCharacter::enumerate_primitive(q);
    if (prim.empty()) throw std::invalid_argument("no primitive character mod " + std::to_string(q));
    return prim.front();
}

}  // namespace recip
