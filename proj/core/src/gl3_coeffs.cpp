#include "recip/gl3_coeffs.hpp"

#include <cmath>
#include <fstream>
#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace recip {

namespace {

cplx pow_neg(u64 n, cplx mu) { return n == 1 ? cplx(1.0) : std::exp(-mu * std::log(static_cast<double>(n))); }

}  // namespace

cplx parse_complex(std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
    if (s.empty()) throw std::invalid_argument("empty complex number");
    auto num = [&](const std::string& t) {
        std::size_t pos = 0;
        double v = std::stod(t, &pos);
        if (pos != t.size()) throw std::invalid_argument("malformed complex number '" + s + "'");
        return v;
    };
    try {
        if (s.back() != 'i') return {num(s), 0.0};
        std::string body = s.substr(0, s.size() - 1);
        std::size_t split = std::string::npos;
        for (std::size_t k = body.size(); k-- > 1;)
            if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
                split = k;
                break;
            }
        std::string re = split == std::string::npos ? "" : body.substr(0, split);
        std::string im = split == std::string::npos ? body : body.substr(split);
        double iv = (im.empty() || im == "+") ? 1.0 : (im == "-" ? -1.0 : num(im));
        return {re.empty() ? 0.0 : num(re), iv};
    } catch (const std::logic_error&) {
        throw std::invalid_argument("malformed complex number '" + s + "'");
    }
}


i64 d3(u64 n) {
    i64 r = 1;
    for (auto [p, e] : factorize(n).factors) r *= static_cast<i64>((e + 1) * (e + 2) / 2);
    return r;
}

double d3_tail(double N, double sig) {
    // int_N^inf (L^2 / 2 + 2 L + 2) x^{-sig} dx with L = log x
    const double L = std::log(N), e = sig - 1.0;
    const double i0 = 1 / e, i1 = L / e + 1 / (e * e), i2 = L * L / e + 2 * L / (e * e) + 2 / (e * e * e);
    return std::pow(N, -e) * (i2 / 2 + 2 * i1 + 2 * i0);
}

cplx eisenstein_A1n(const std::array<cplx, 3>& mu, u64 n) {
    cplx s = 0;
    for (u64 a : divisors(n))
        for (u64 b : divisors(n / a)) s += pow_neg(a, mu[0]) * pow_neg(b, mu[1]) * pow_neg(n / a / b, mu[2]);
    return s;
}

cplx eisenstein_A(const std::array<cplx, 3>& mu, u64 m, u64 n) {
    const std::array<cplx, 3> neg{-mu[0], -mu[1], -mu[2]};
    cplx s = 0;
    for (u64 d : divisors(gcd_u(m, n))) {
        int mo = moebius(d);
        if (mo == 0) continue;
        s += static_cast<double>(mo) * eisenstein_A1n(neg, m / d) * eisenstein_A1n(mu, n / d);
    }
    return s;
}

HeckeCoefficientSource::HeckeCoefficientSource() = default;

HeckeCoefficientSource HeckeCoefficientSource::eisenstein(const std::array<cplx, 3>& mu) {
    HeckeCoefficientSource s;
    s.kind_ = Kind::Eisenstein;
    s.mu_ = mu;
    // selfdual when the multiset {mu} is closed under negation
    std::array<bool, 3> used{};
    bool ok = true;
    for (int i = 0; i < 3 && ok; ++i) {
        bool found = false;
        for (int j = 0; j < 3; ++j)
            if (!used[j] && std::abs(mu[i] + mu[j]) < 1e-12) {
                used[j] = found = true;
                break;
            }
        ok = found;
    }
    s.selfdual_ = ok;
    return s;
}

HeckeCoefficientSource HeckeCoefficientSource::from_table_text(const std::string& text, bool strict,
                                                               const std::string& origin) {
    HeckeCoefficientSource s;
    s.kind_ = Kind::Table;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        ls.clear();
        ls.seekg(0);
        long long m, n;
        double re, im;
        std::string extra;
        if (!(ls >> m >> n >> re >> im) || (ls >> extra))
            throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": expected 'm n re im'");
        if (m < 1 || n < 1) throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": indices must be positive");
        auto key = std::make_pair(static_cast<u64>(m), static_cast<u64>(n));
        if (s.table_.count(key))
            throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": duplicate entry");
        s.table_[key] = {re, im};
    }
    if (!s.table_.count({1, 1})) throw std::runtime_error(origin + ": missing A(1,1)");

    auto note = [&](const std::string& msg) {
        if (strict) throw std::runtime_error(origin + ": " + msg);
        s.violations_.push_back(msg);
    };
    const double tol = 1e-9;
    auto at = [&](u64 m, u64 n) { return s.table_.at({m, n}); };
    if (std::abs(at(1, 1) - cplx(1.0)) > tol) note("A(1,1) != 1");
    for (const auto& [k1, v1] : s.table_) {
        // coprime multiplicativity A(m1 m2, n1 n2) = A(m1,n1) A(m2,n2)
        for (const auto& [k2, v2] : s.table_) {
            if (k1 >= k2 || k1 == std::make_pair<u64, u64>(1, 1)) continue;
            if (gcd_u(k1.first * k1.second, k2.first * k2.second) != 1) continue;
            auto key = std::make_pair(k1.first * k2.first, k1.second * k2.second);
            auto it = s.table_.find(key);
            if (it == s.table_.end()) continue;
            if (std::abs(it->second - v1 * v2) > tol * (1 + std::abs(it->second)))
                note("multiplicativity violated at A(" + std::to_string(key.first) + "," + std::to_string(key.second) +
                     ")");
        }
        // Hecke relation A(m,n) = sum_{d | (m,n)} mu(d) A(m/d,1) A(1,n/d)
        auto [m, n] = k1;
        if (m > 1 && n > 1) {
            cplx sum = 0;
            bool complete = true;
            for (u64 d : divisors(gcd_u(m, n))) {
                int mo = moebius(d);
                if (mo == 0) continue;
                auto a = s.table_.find({m / d, 1});
                auto b = s.table_.find({1, n / d});
                if (a == s.table_.end() || b == s.table_.end()) {
                    complete = false;
                    break;
                }
                sum += static_cast<double>(mo) * a->second * b->second;
            }
            if (complete && std::abs(sum - v1) > tol * (1 + std::abs(v1)))
                note("Hecke relation violated at A(" + std::to_string(m) + "," + std::to_string(n) + ")");
        }
    }
    u64 cov = 0;
    while (s.table_.count({cov + 1, 1}) && s.table_.count({1, cov + 1})) ++cov;
    s.coverage_ = cov;
    s.selfdual_ = true;
    for (u64 p = 2; p <= cov; ++p)
        if (is_prime(p) && std::abs(at(1, p) - at(p, 1)) > tol) s.selfdual_ = false;
    return s;
}

HeckeCoefficientSource HeckeCoefficientSource::load_table(const std::string& path, bool strict) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open coefficient table '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return from_table_text(ss.str(), strict, path);
}

HeckeCoefficientSource HeckeCoefficientSource::parse(const std::string& spec) {
    if (spec.rfind("eisenstein:", 0) == 0) {
        std::string body = spec.substr(11);
        std::array<cplx, 3> mu{};
        std::istringstream in(body);
        std::string item;
        int k = 0;
        while (std::getline(in, item, ',')) {
            if (k >= 3) throw std::invalid_argument("eisenstein coefficients take exactly three parameters");
            mu[static_cast<std::size_t>(k++)] = parse_complex(item);
        }
        if (k != 3) throw std::invalid_argument("eisenstein coefficients take exactly three parameters");
        return eisenstein(mu);
    }
    if (spec == "eisenstein") return eisenstein({});
    if (spec.rfind("table:", 0) == 0) return load_table(spec.substr(6));
    throw std::invalid_argument("coefficient source must be eisenstein:mu1,mu2,mu3 or table:PATH");
}

cplx HeckeCoefficientSource::A(u64 m, u64 n) const {
    if (kind_ == Kind::Eisenstein) return eisenstein_A(mu_, m, n);
    auto it = table_.find({m, n});
    if (it == table_.end())
        throw std::out_of_range("A(" + std::to_string(m) + "," + std::to_string(n) + ") not in coefficient table");
    return it->second;
}

bool HeckeCoefficientSource::has(u64 m, u64 n) const { return kind_ == Kind::Eisenstein || table_.count({m, n}); }

std::string HeckeCoefficientSource::describe() const {
    if (kind_ == Kind::Table) return "table(" + std::to_string(table_.size()) + " entries)";
    std::ostringstream o;
    o << "eisenstein:";
    for (int i = 0; i < 3; ++i) o << (i ? "," : "") << mu_[i].real() << (mu_[i].imag() < 0 ? "" : "+") << mu_[i].imag() << "i";
    return o.str();
}

std::array<cplx, 4> HeckeCoefficientSource::euler_dual(u64 p) const { return {1.0, -A(p, 1), A(1, p), -1.0}; }

cplx HeckeCoefficientSource::L_p(u64 p, cplx s) const {
    cplx x = std::exp(-s * std::log(static_cast<double>(p)));
    return 1.0 / (1.0 - A(1, p) * x + A(p, 1) * x * x - x * x * x);
}

cplx HeckeCoefficientSource::L_p_dual(u64 p, cplx s) const {
    cplx x = std::exp(-s * std::log(static_cast<double>(p)));
    return 1.0 / (1.0 - A(p, 1) * x + A(1, p) * x * x - x * x * x);
}

}  // namespace recip
