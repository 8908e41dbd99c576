#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "recip/char_sums.hpp"
#include "recip/experiments.hpp"
#include "recip/exp_sums.hpp"
#include "recip/report.hpp"
#include "recip/transforms.hpp"
#include "recip/verify.hpp"
#include "recip/z_local.hpp"

namespace recip::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep))
        if (!tok.empty()) out.push_back(tok);
    return out;
}

double to_double(const std::string& s) {
    std::size_t pos = 0;
    const double x = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("not a number: '" + s + "'");
    return x;
}

std::array<cplx, 3> parse_mu(const std::string& s) {
    const auto parts = split(s, ',');
    if (parts.size() == 1) {
        const cplx m = parse_complex(parts[0]);
        return {m, m, m};
    }
    if (parts.size() != 3) throw std::invalid_argument("--mu expects one or three entries");
    return {parse_complex(parts[0]), parse_complex(parts[1]), parse_complex(parts[2])};
}

class Sink {
public:
    Sink(std::ostream& out, Format f) : out_(out), f_(f) {}
    void emit(const ExperimentReport& r) {
        write_report(out_, r, f_, !header_);
        header_ = true;
        if (!r.converged)
            diverged_ = true;
        else if (!r.passed())
            failed_ = true;
    }
    int code() const { return diverged_ ? NotConverged : (failed_ ? CheckFailed : Ok); }

private:
    std::ostream& out_;
    Format f_;
    bool header_ = false, failed_ = false, diverged_ = false;
};

// The effective configuration, emitted ahead of every report stream.
ExperimentReport config_report(const Config& cfg) {
    ExperimentReport r;
    r.experiment = "config";
    for (const auto& [k, v] : cfg.values()) r.param(k, v);
    r.add("effective-config", 0.0, 0, 0, Status::Info);
    return r;
}

DirichletCharacter default_character(u64 q, bool prefer_real) {
    if (q == 1) return DirichletCharacter();
    const auto prim = DirichletCharacter::enumerate_primitive(q);
    if (prim.empty()) throw std::invalid_argument("no primitive character mod " + std::to_string(q));
    if (prefer_real)
        for (const DirichletCharacter& c : prim)
            if (c.is_real()) return c;
    return prim.front();
}

std::string value_point(const ExpSumValue& v) {
    return ";backend=" + v.backend + (v.is_exact() ? ";exact=" + v.exact->to_string() : "");
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3) throw std::invalid_argument("grid must be a:b:n, got '" + spec + "'");
    const double a = to_double(parts[0]), b = to_double(parts[1]);
    const double nd = to_double(parts[2]);
    if (nd < 1 || nd != std::floor(nd)) throw std::invalid_argument("grid count must be a positive integer");
    const int n = static_cast<int>(nd);
    std::vector<double> out;
    for (int i = 0; i < n; ++i) out.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
    return out;
}

std::vector<double> parse_list(const std::string& spec) {
    std::vector<double> out;
    for (const std::string& t : split(spec, ',')) out.push_back(to_double(t));
    if (out.empty()) throw std::invalid_argument("empty list");
    return out;
}

std::vector<std::pair<unsigned long, unsigned long>> parse_pairs(const std::string& spec) {
    std::vector<std::pair<unsigned long, unsigned long>> out;
    for (const std::string& t : split(spec, ',')) {
        const auto x = t.find('x');
        if (x == std::string::npos) throw std::invalid_argument("pair must be AxB, got '" + t + "'");
        const double a = to_double(t.substr(0, x)), b = to_double(t.substr(x + 1));
        if (a < 1 || b < 1 || a != std::floor(a) || b != std::floor(b))
            throw std::invalid_argument("pair entries must be positive integers: '" + t + "'");
        out.emplace_back(static_cast<unsigned long>(a), static_cast<unsigned long>(b));
    }
    if (out.empty()) throw std::invalid_argument("empty pair list");
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Character sums, local factors, transforms and moment experiments for twisted GL(3) L-functions",
                 "recip"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand; inherited by every subcommand
    std::string config_path, format_opt;
    std::vector<std::string> sets;
    app.add_option("--config", config_path, "flat key = value configuration file");
    app.add_option("--set", sets, "override one configuration entry, key=value")->take_all();
    app.add_option("--format", format_opt, "jsonl or csv (default from the configuration)");

    // ---- verify
    auto* verify = app.add_subcommand("verify", "identity sweeps against independent oracles");
    verify->require_subcommand(1);
    auto* v_lemma = verify->add_subcommand("lemma", "closed forms of character sums and local factors");
    std::string lemma_name;
    std::optional<long> max_pp;
    std::optional<std::string> backend_opt;
    v_lemma->add_option("--name", lemma_name,
                        "principal-principal|principal-nonprincipal|primitive-principal|primitive-nonprincipal|all|"
                        "v-multiplicativity|g-sums|z-closed-forms|z-factorization|z-limit|z-support|exp-sums|"
                        "l-functions (numbered aliases vchi-4.3..4.6, vchi-mult, z-6.1, z-7.1, z-cor-6.2, z-cor-7.2)")
        ->required();
    v_lemma->add_option("--max-prime-power", max_pp, "largest prime power in the sweep");
    v_lemma->add_option("--backend", backend_opt, "auto|exact|float");

    auto* v_tr = verify->add_subcommand("transform-identities", "Mellin, kernel, moment and hypergeometric identities");
    std::optional<double> tT, tU;
    std::optional<int> tC;
    v_tr->add_option("--T", tT);
    v_tr->add_option("--U", tU);
    v_tr->add_option("--C", tC);

    auto* v_loc = verify->add_subcommand("localization", "localization and decay of the H weight");
    double lT = 100, lU = 10;
    int lC = 4;
    std::string lmu = "0";
    v_loc->add_option("--T", lT, "spectral centre")->capture_default_str();
    v_loc->add_option("--U", lU, "window")->capture_default_str();
    v_loc->add_option("--C", lC, "number of forced zeros")->capture_default_str();
    v_loc->add_option("--mu", lmu, "spectral parameters mu1,mu2,mu3")->capture_default_str();

    // ---- sum
    auto* sum = app.add_subcommand("sum", "evaluate one exponential sum");
    sum->set_help_flag("--help", "print this help message and exit");  // -h is taken by --h
    std::string sum_kind, sum_chi;
    std::optional<long> s_q, s_a, s_m, s_n, s_c, s_h;
    std::optional<std::string> s_backend;
    sum->add_option("kind", sum_kind, "gauss|kloosterman|ramanujan|hb")
        ->required()
        ->check(CLI::IsMember({"gauss", "kloosterman", "ramanujan", "hb"}));
    sum->add_option("--q", s_q, "modulus (ramanujan)");
    sum->add_option("--chi", sum_chi, "character label q:e1,e2,...");
    sum->add_option("--a", s_a, "additive argument (gauss)");
    sum->add_option("--m", s_m);
    sum->add_option("--n", s_n);
    sum->add_option("--c", s_c, "Kloosterman modulus");
    sum->add_option("--h", s_h, "shift (hb)");
    sum->add_option("--backend", s_backend, "auto|exact|float");

    // ---- zfactor
    auto* zf = app.add_subcommand("zfactor", "local and global factors of the twisted Z function");
    unsigned long z_q1 = 1, z_q2 = 1;
    std::string z_chi, z_psi = "all", z_coeffs = "eisenstein:0,0,0";
    double z_t = 0;
    std::optional<std::string> z_w, z_z;
    bool z_cont = false;
    zf->add_option("--q1", z_q1, "modulus of the primitive part chi1")->required();
    zf->add_option("--q2", z_q2, "modulus of the principal part")->capture_default_str();
    zf->add_option("--chi", z_chi, "chi1 label mod q1 (default: first primitive)");
    zf->add_option("--psi", z_psi, "psi label mod q1 q2, or all")->capture_default_str();
    zf->add_option("--t", z_t, "height for w = 1/2, z = it")->capture_default_str();
    zf->add_option("--w", z_w, "general w (with --z)");
    zf->add_option("--z", z_z, "general z (with --w)");
    zf->add_flag("--continue", z_cont, "allow analytic continuation of the tail sums");
    zf->add_option("--coeffs", z_coeffs, "eisenstein:mu1,mu2,mu3 or table:PATH")->capture_default_str();

    // ---- transform
    auto* tr = app.add_subcommand("transform", "transforms of the test-function pair");
    tr->require_subcommand(1);
    auto* hh = tr->add_subcommand("hh", "the weight H^{+-}(t) on a grid");
    std::optional<double> hT, hU, hsig, htau;
    std::optional<int> hC;
    std::optional<std::string> hmu;
    std::string hgrid = "-10:10:21";
    hh->add_option("--T", hT);
    hh->add_option("--U", hU);
    hh->add_option("--C", hC);
    hh->add_option("--mu", hmu, "spectral parameters mu1,mu2,mu3");
    hh->add_option("--t-grid", hgrid, "a:b:n")->capture_default_str();
    hh->add_option("--sigma2", hsig, "contour abscissa in (0, 1)");
    hh->add_option("--tau-max", htau, "log-spaced panels up to this height");
    auto* mt = tr->add_subcommand("main-terms", "the Maass and holomorphic main-term masses");
    mt->add_option("--T", hT);
    mt->add_option("--U", hU);
    mt->add_option("--C", hC);

    // ---- moment
    auto* mom = app.add_subcommand("moment", "desk-scale moment experiments");
    mom->require_subcommand(1);
    auto* m_coset = mom->add_subcommand("coset", "second moment over a coset of characters");
    unsigned long mc_q = 0;
    std::string mc_psi, mc_qp, mc_T = "1,2,3,4,5";
    std::optional<double> m_cap;
    std::optional<int> m_nodes;
    m_coset->add_option("--q", mc_q, "modulus of the primitive psi")->required();
    m_coset->add_option("--psi", mc_psi, "psi label (default: first primitive)");
    m_coset->add_option("--qprime", mc_qp, "divisors q' of q (default: 1,q)");
    m_coset->add_option("--T", mc_T, "heights")->capture_default_str();
    m_coset->add_option("--cap", m_cap);
    m_coset->add_option("--nodes-per-unit", m_nodes);
    auto* m_gl3 = mom->add_subcommand("gl3", "second moment of GL(3) x GL(1) L-functions");
    std::string mg_pairs = "1x1,5x1,5x3,8x3", m_coeffs = "eisenstein:0,0,0";
    double mg_T = 3;
    m_gl3->add_option("--pairs", mg_pairs, "q1xq3 list")->capture_default_str();
    m_gl3->add_option("--T", mg_T)->capture_default_str();
    m_gl3->add_option("--coeffs", m_coeffs)->capture_default_str();
    m_gl3->add_option("--cap", m_cap);
    m_gl3->add_option("--nodes-per-unit", m_nodes);
    auto* m_dual = mom->add_subcommand("dual", "the character side of the reciprocity formula");
    std::string md_pairs = "5x3,7x4", md_weight = "indicator";
    double md_T = 3;
    std::optional<double> md_pT, md_pU;
    std::optional<int> md_pC;
    m_dual->add_option("--pairs", md_pairs, "q1xq2 list")->capture_default_str();
    m_dual->add_option("--T", md_T)->capture_default_str();
    m_dual->add_option("--weight", md_weight, "indicator|hscript")
        ->capture_default_str()
        ->check(CLI::IsMember({"indicator", "hscript"}));
    m_dual->add_option("--pair-T", md_pT);
    m_dual->add_option("--pair-U", md_pU);
    m_dual->add_option("--pair-C", md_pC);
    m_dual->add_option("--coeffs", m_coeffs)->capture_default_str();
    m_dual->add_option("--cap", m_cap);
    m_dual->add_option("--nodes-per-unit", m_nodes);
    auto* m_hb = mom->add_subcommand("hb", "Heath-Brown bound tables");
    std::string mh_q;
    unsigned long mh_qmax = 500, mh_count = 30;
    std::optional<long> mh_A, mh_B;
    m_hb->add_option("--q", mh_q, "explicit moduli (default: a prime-power-rich sample)");
    m_hb->add_option("--qmax", mh_qmax)->capture_default_str();
    m_hb->add_option("--count", mh_count)->capture_default_str();
    m_hb->add_option("--A", mh_A);
    m_hb->add_option("--B", mh_B);
    m_hb->add_option("--cap", m_cap);

    // ---- reciprocity
    auto* rec = app.add_subcommand("reciprocity", "end-to-end Voronoi identity: Kloosterman side against L-function side");
    unsigned long r_q = 1;
    std::string r_chi, r_coeffs = "eisenstein:0,0,0";
    std::optional<std::string> r_w, r_s;
    std::optional<double> r_x1, r_delta, r_tau, r_tol;
    std::optional<unsigned long> r_ell, r_c0, r_n2;
    bool r_nodouble = false;
    rec->add_option("--q", r_q, "modulus of chi")->capture_default_str();
    rec->add_option("--chi", r_chi, "character label (default: a real primitive character)");
    rec->add_option("--w", r_w);
    rec->add_option("--s", r_s);
    rec->add_option("--x1", r_x1);
    rec->add_option("--delta", r_delta);
    rec->add_option("--coeffs", r_coeffs)->capture_default_str();
    rec->add_option("--ell-max", r_ell);
    rec->add_option("--c0-max", r_c0);
    rec->add_option("--n2-max", r_n2);
    rec->add_option("--tau-max", r_tau);
    rec->add_option("--tol", r_tol);
    rec->add_flag("--no-doubling", r_nodouble, "skip the doubled-truncation convergence check");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return Ok;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return Ok;
    } catch (const CLI::ParseError& e) {
        if (!args.empty() && args[0].rfind("-", 0) != 0 && !app.get_subcommand_no_throw(args[0]))
            err << "recip: unknown subcommand '" << args[0] << "'\n\n" << app.help();
        else
            err << "recip: " << e.what() << "\n\n" << app.help();
        return Usage;
    }

    try {
        Config cfg = Config::defaults();
        if (!config_path.empty()) {
            if (!std::ifstream(config_path)) throw std::invalid_argument("cannot open config file " + config_path);
            cfg.merge(Config::load(config_path));
        }
        for (const std::string& kv : sets) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
            cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
        }
        if (!format_opt.empty()) cfg.set("format", format_opt);
        const Format fmt = parse_format(cfg.get("format"));
        const Backend cfg_backend = parse_backend(cfg.get("backend"));
        const u64 seed = static_cast<u64>(cfg.get_int("seed"));

        std::vector<ExperimentReport> reports;
        if (v_lemma->parsed()) {
            const Backend be = backend_opt ? parse_backend(*backend_opt) : cfg_backend;
            const u64 mpp = static_cast<u64>(max_pp.value_or(cfg.get_int("sweep.max_prime_power")));
            const std::string& n = lemma_name;
            if (n == "vchi-mult" || n == "v-multiplicativity")
                reports.push_back(verify_v_multiplicativity(30, static_cast<int>(cfg.get_int("sweep.random_cases")), 100, seed));
            else if (n == "g-sums")
                reports.push_back(verify_g_sums(4, 100));
            else if (n == "z-6.1" || n == "z-closed-forms")
                reports.push_back(verify_z_closed_forms(prime_powers_up_to(mpp), 10, seed));
            else if (n == "z-7.1" || n == "z-factorization")
                reports.push_back(verify_z_factorization({3, 4, 5, 8, 9, 12, 15, 20, 28, 30, 45, 60}, seed));
            else if (n == "z-cor-6.2" || n == "z-limit")
                reports.push_back(verify_z_limit({{5, 3}, {7, 4}, {5, 4}, {7, 1}}));
            else if (n == "z-cor-7.2" || n == "z-support")
                reports.push_back(verify_z_support({{5, 3}, {5, 12}, {7, 4}, {8, 3}, {9, 10}}));
            else if (n == "exp-sums") {
                ExpSumSweep sw;
                sw.seed = seed;
                reports.push_back(verify_exp_sums(sw));
            } else if (n == "l-functions")
                reports.push_back(verify_l_functions(50));
            else
                reports.push_back(verify_v_closed_forms(parse_v_family(n), mpp, be));
        } else if (v_tr->parsed()) {
            TransformSweep sw;
            sw.T = tT.value_or(cfg.get_double("transform.T"));
            sw.U = tU.value_or(cfg.get_double("transform.U"));
            sw.C = tC.value_or(static_cast<int>(cfg.get_int("transform.C")));
            sw.tol = cfg.get_double("tol.transform");
            reports.push_back(verify_transform_identities(sw));
        } else if (v_loc->parsed()) {
            LocalizationSweep sw;
            sw.T = lT;
            sw.U = lU;
            sw.C = lC;
            sw.mu = parse_mu(lmu);
            sw.hscript.sigma2 = cfg.get_double("hscript.sigma2");
            sw.hscript.tau_max = cfg.get_double("hscript.tau_max");
            reports.push_back(verify_hscript_localization(sw));
        } else if (sum->parsed()) {
            const Backend be = s_backend ? parse_backend(*s_backend) : cfg_backend;
            ExperimentReport r;
            r.experiment = "sum";
            r.param("kind", sum_kind);
            if (sum_kind == "ramanujan") {
                if (!s_q || *s_q < 1 || !s_n) throw std::invalid_argument("sum ramanujan needs --q >= 1 and --n");
                const i64 v = ramanujan(static_cast<u64>(*s_q), *s_n);
                r.add("q=" + std::to_string(*s_q) + ";n=" + std::to_string(*s_n) + ";exact=" + std::to_string(v),
                      static_cast<double>(v), 0, 0, Status::Info);
            } else if (sum_kind == "gauss") {
                if (sum_chi.empty()) throw std::invalid_argument("sum gauss needs --chi");
                const DirichletCharacter chi = DirichletCharacter::parse(sum_chi);
                const i64 a = s_a.value_or(1);
                const ExpSumValue v = gauss(chi, a, be);
                r.add("chi=" + chi.label() + ";a=" + std::to_string(a) + value_point(v), v.numeric, 0, 0, Status::Info);
            } else if (sum_kind == "kloosterman") {
                if (!s_c || *s_c < 1 || !s_m || !s_n) throw std::invalid_argument("sum kloosterman needs --m, --n and --c >= 1");
                const DirichletCharacter chi = sum_chi.empty() ? DirichletCharacter() : DirichletCharacter::parse(sum_chi);
                const ExpSumValue v = kloosterman(chi, *s_m, *s_n, static_cast<u64>(*s_c), be);
                r.add("chi=" + chi.label() + ";m=" + std::to_string(*s_m) + ";n=" + std::to_string(*s_n) +
                          ";c=" + std::to_string(*s_c) + value_point(v),
                      v.numeric, 0, 0, Status::Info);
            } else {
                if (sum_chi.empty()) throw std::invalid_argument("sum hb needs --chi (primitive)");
                const DirichletCharacter psi = DirichletCharacter::parse(sum_chi);
                const i64 h = s_h.value_or(0), n = s_n.value_or(0);
                const ExpSumValue v = heath_brown_S(psi, h, n, be);
                r.add("psi=" + psi.label() + ";h=" + std::to_string(h) + ";n=" + std::to_string(n) + value_point(v),
                      v.numeric, 0, 0, Status::Info);
            }
            reports.push_back(r);
        } else if (zf->parsed()) {
            if (gcd_u(z_q1, z_q2) != 1) throw std::invalid_argument("zfactor: q1 and q2 must be coprime");
            const DirichletCharacter chi1 = z_chi.empty() ? default_character(z_q1, false) : DirichletCharacter::parse(z_chi);
            if (chi1.modulus() != z_q1) throw std::invalid_argument("zfactor: --chi must be a character mod q1");
            const DirichletCharacter chi = combine_components({chi1, DirichletCharacter::principal(z_q2)});
            const HeckeCoefficientSource F = HeckeCoefficientSource::parse(z_coeffs);
            const u64 q = z_q1 * z_q2;
            std::vector<DirichletCharacter> psis;
            if (z_psi == "all")
                psis = DirichletCharacter::enumerate(q);
            else
                psis.push_back(DirichletCharacter::parse(z_psi));
            if (z_w.has_value() != z_z.has_value()) throw std::invalid_argument("zfactor: --w and --z go together");
            ZOptions opt;
            opt.allow_continuation = z_cont;
            opt.backend = cfg_backend;
            ExperimentReport r;
            r.experiment = "zfactor";
            r.param("q1", static_cast<double>(z_q1));
            r.param("q2", static_cast<double>(z_q2));
            r.param("chi", chi.label());
            r.param("coeffs", F.describe());
            if (z_w) {
                r.param("w", *z_w);
                r.param("z", *z_z);
            } else {
                r.param("t", z_t);
            }
            for (const DirichletCharacter& psi : psis) {
                if (psi.modulus() != q) throw std::invalid_argument("zfactor: --psi must be a character mod q1 q2");
                const ZGlobal g = z_w ? z_global_wz(chi, psi, F, parse_complex(*z_w), parse_complex(*z_z), opt)
                                      : z_global(chi, psi, F, z_t, opt);
                const std::string base = "psi=" + psi.label();
                for (const LocalZFactor& lf : g.trace)
                    r.add(base + ";p^beta=" + std::to_string(lf.p) + "^" + std::to_string(lf.beta) + ";case=" + lf.case_label,
                          lf.value, 0, lf.tail, Status::Info);
                const bool predicted = z_support_predicted(psi, z_q1, z_q2);
                const Status st = predicted ? Status::Info : (g.value == cplx(0.0) ? Status::Pass : Status::Fail);
                r.add(base + ";global;predicted-support=" + (predicted ? "yes" : "no"), g.value, 0, 0, st);
            }
            reports.push_back(r);
        } else if (hh->parsed()) {
            const double T = hT.value_or(cfg.get_double("transform.T"));
            const double U = hU.value_or(cfg.get_double("transform.U"));
            const int C = hC.value_or(static_cast<int>(cfg.get_int("transform.C")));
            const auto mu = parse_mu(hmu.value_or(cfg.get("transform.mu")));
            HScriptOptions o;
            o.sigma2 = hsig.value_or(cfg.get_double("hscript.sigma2"));
            o.tau_max = htau.value_or(cfg.get_double("hscript.tau_max"));
            const TransformEngine eng(TestFunctionPair(T, U, C));
            const HScriptEvaluator H(eng, mu, o);
            ExperimentReport r;
            r.experiment = "transform_hh";
            r.param("T", T);
            r.param("U", U);
            r.param("C", static_cast<double>(C));
            r.param("sigma2", o.sigma2);
            r.param("tau_max", o.tau_max);
            for (double t : parse_grid(hgrid))
                for (int sign : {1, -1}) {
                    const HScriptValue v = H.eval(t, sign);
                    const bool fin = std::isfinite(v.value.real()) && std::isfinite(v.value.imag());
                    r.add("t=" + format_number(t) + ";sign=" + (sign > 0 ? "+" : "-"), v.value, 0, std::abs(v.tail),
                          fin ? Status::Info : Status::Fail);
                }
            reports.push_back(r);
        } else if (mt->parsed()) {
            const double T = hT.value_or(cfg.get_double("transform.T"));
            const double U = hU.value_or(cfg.get_double("transform.U"));
            const int C = hC.value_or(static_cast<int>(cfg.get_int("transform.C")));
            const TransformEngine eng(TestFunctionPair(T, U, C));
            const MainTerms m = eng.main_terms();
            ExperimentReport r;
            r.experiment = "transform_main_terms";
            r.param("T", T);
            r.param("U", U);
            r.param("C", static_cast<double>(C));
            r.add("maass_mass", m.maass_mass, T * U, m.maass_mass / (T * U), m.maass_mass > 0 ? Status::Pass : Status::Fail);
            r.add("hol_mass", m.hol_mass, T * U, m.hol_mass / (T * U), Status::Info);
            r.add("secondary", m.secondary, 0, 0, Status::Info);
            reports.push_back(r);
        } else if (m_coset->parsed()) {
            const DirichletCharacter psi = mc_psi.empty() ? default_character(mc_q, false) : DirichletCharacter::parse(mc_psi);
            std::vector<u64> qps;
            if (mc_qp.empty())
                qps = {1, mc_q};
            else
                for (double x : parse_list(mc_qp)) qps.push_back(static_cast<u64>(x));
            reports.push_back(coset_second_moment(psi, qps, parse_list(mc_T),
                                                  m_nodes.value_or(static_cast<int>(cfg.get_int("coset.nodes_per_unit"))),
                                                  m_cap.value_or(cfg.get_double("coset.cap"))));
        } else if (m_gl3->parsed()) {
            std::vector<std::pair<u64, u64>> pairs;
            for (auto [a, b] : parse_pairs(mg_pairs)) pairs.emplace_back(a, b);
            reports.push_back(gl3_second_moment(pairs, mg_T, HeckeCoefficientSource::parse(m_coeffs),
                                                m_nodes.value_or(static_cast<int>(cfg.get_int("gl3.nodes_per_unit"))),
                                                m_cap.value_or(cfg.get_double("gl3.cap"))));
        } else if (m_dual->parsed()) {
            std::vector<std::pair<u64, u64>> pairs;
            for (auto [a, b] : parse_pairs(md_pairs)) pairs.emplace_back(a, b);
            DualOptions o;
            o.weight = md_weight == "hscript" ? DualWeight::HScript : DualWeight::Indicator;
            o.T = md_T;
            o.per_unit = m_nodes.value_or(static_cast<int>(cfg.get_int("dual.nodes_per_unit")));
            o.pair_T = md_pT.value_or(cfg.get_double("dual.pair_T"));
            o.pair_U = md_pU.value_or(cfg.get_double("dual.pair_U"));
            o.pair_C = md_pC.value_or(static_cast<int>(cfg.get_int("dual.pair_C")));
            o.hscript.sigma2 = cfg.get_double("hscript.sigma2");
            o.hscript.tau_max = cfg.get_double("hscript.tau_max");
            reports.push_back(dual_moment(pairs, HeckeCoefficientSource::parse(m_coeffs), o,
                                          m_cap.value_or(cfg.get_double("dual.cap"))));
        } else if (m_hb->parsed()) {
            std::vector<u64> qs;
            if (mh_q.empty())
                qs = hb_sample_moduli(mh_qmax, mh_count);
            else
                for (double x : parse_list(mh_q)) qs.push_back(static_cast<u64>(x));
            reports.push_back(hb_bound_table(qs, mh_A.value_or(cfg.get_int("hb.A")), mh_B.value_or(cfg.get_int("hb.B")),
                                             m_cap.value_or(cfg.get_double("hb.cap"))));
        } else if (rec->parsed()) {
            const DirichletCharacter chi = r_chi.empty() ? default_character(r_q, true) : DirichletCharacter::parse(r_chi);
            const HeckeCoefficientSource F = HeckeCoefficientSource::parse(r_coeffs);
            VoronoiContour c;
            c.x1 = r_x1.value_or(cfg.get_double("voronoi.x1"));
            c.delta = r_delta.value_or(cfg.get_double("voronoi.delta"));
            VoronoiTruncation tr;
            tr.ell_max = r_ell.value_or(static_cast<u64>(cfg.get_int("voronoi.ell_max")));
            tr.c0_max = r_c0.value_or(static_cast<u64>(cfg.get_int("voronoi.c0_max")));
            tr.n2_max = r_n2.value_or(static_cast<u64>(cfg.get_int("voronoi.n2_max")));
            tr.tau_max = r_tau.value_or(cfg.get_double("voronoi.tau_max"));
            const cplx w = parse_complex(r_w.value_or(cfg.get("voronoi.w")));
            const cplx s = parse_complex(r_s.value_or(cfg.get("voronoi.s")));
            reports.push_back(voronoi_identity_check(chi, F, w, s, c, tr, r_tol.value_or(cfg.get_double("tol.voronoi")),
                                                     !r_nodouble));
        }

        Sink sink(out, fmt);
        sink.emit(config_report(cfg));
        for (const ExperimentReport& r : reports) sink.emit(r);
        return sink.code();
    } catch (const std::invalid_argument& e) {
        err << "recip: " << e.what() << "\n";
        return Usage;
    } catch (const std::domain_error& e) {
        err << "recip: " << e.what() << "\n";
        return Usage;
    } catch (const std::length_error& e) {
        err << "recip: " << e.what() << "\n";
        return Usage;
    } catch (const std::out_of_range& e) {
        err << "recip: " << e.what() << "\n";
        return Usage;
    } catch (const std::exception& e) {
        err << "recip: numerical failure: " << e.what() << "\n";
        return NotConverged;
    }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace recip::cli
