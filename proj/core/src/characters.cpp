#include "recip/characters.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>

namespace recip {

namespace {

u64 least_primitive_root(u64 p, int beta) {
    u64 pb = ipow(p, static_cast<unsigned>(beta));
    u64 phi = pb / p * (p - 1);
    auto ell = factorize(phi).primes();
    for (u64 g = 2; g < pb; ++g) {
        if (g % p == 0) continue;
        bool ok = true;
        for (u64 l : ell)
            if (pow_mod(g, phi / l, pb) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw std::logic_error("no primitive root");
}

struct GroupCache {
    std::shared_mutex mu;
    std::map<u64, std::shared_ptr<const CharacterGroup>> groups;
};

GroupCache& group_cache() {
    static GroupCache c;
    return c;
}

}  // namespace

CharacterGroup::CharacterGroup(u64 q) : fm_(factorize(q)) {
    phi_ = euler_phi(q);
    for (auto& [p, beta] : fm_.factors) {
        Local L;
        L.p = p;
        L.beta = beta;
        L.pb = ipow(p, static_cast<unsigned>(beta));
        if (p != 2) {
            L.gens = {least_primitive_root(p, beta)};
            L.orders = {L.pb / p * (p - 1)};
        } else if (beta == 1) {
            L.gens = {1};
            L.orders = {1};
        } else if (beta == 2) {
            L.gens = {3};
            L.orders = {2};
        } else {
            L.gens = {L.pb - 1, 5};
            L.orders = {2, L.pb / 4};
        }
        std::size_t ng = L.gens.size();
        L.dlog.assign(L.pb * ng, 0);
        if (ng == 1) {
            u64 x = 1;
            for (u64 k = 0; k < L.orders[0]; ++k) {
                L.dlog[x] = static_cast<std::uint32_t>(k);
                x = mul_mod(x, L.gens[0], L.pb);
            }
        } else {
            u64 x = 1;
            for (u64 b = 0; b < L.orders[1]; ++b) {
                L.dlog[x * 2 + 1] = static_cast<std::uint32_t>(b);
                u64 y = L.pb - x;
                L.dlog[y * 2] = 1;
                L.dlog[y * 2 + 1] = static_cast<std::uint32_t>(b);
                x = mul_mod(x, 5, L.pb);
            }
        }
        for (u64 o : L.orders) lambda_ = lcm_u(lambda_, o);
        ngens_ += ng;
        locals_.push_back(std::move(L));
    }
}

std::shared_ptr<const CharacterGroup> CharacterGroup::get(u64 q) {
    if (q == 0) throw std::domain_error("character modulus must be positive");
    auto& c = group_cache();
    {
        std::shared_lock lk(c.mu);
        auto it = c.groups.find(q);
        if (it != c.groups.end()) return it->second;
    }
    std::shared_ptr<const CharacterGroup> g(new CharacterGroup(q));
    std::unique_lock lk(c.mu);
    return c.groups.emplace(q, g).first->second;
}

u64 CharacterGroup::generator_lift(std::size_t local, std::size_t j) const {
    std::vector<u64> res, mods;
    for (std::size_t i = 0; i < locals_.size(); ++i) {
        mods.push_back(locals_[i].pb);
        res.push_back(i == local ? locals_[i].gens.at(j) : 1);
    }
    return crt(res, mods);
}

std::vector<u64> CharacterGroup::dlog(u64 n) const {
    if (gcd_u(n % fm_.value, fm_.value) != 1) throw std::domain_error("dlog of a non-unit");
    std::vector<u64> out;
    for (auto& L : locals_) {
        u64 r = n % L.pb;
        for (std::size_t j = 0; j < L.gens.size(); ++j) out.push_back(L.dlog[r * L.gens.size() + j]);
    }
    return out;
}

DirichletCharacter::DirichletCharacter() : DirichletCharacter(1, {}) {}

DirichletCharacter::DirichletCharacter(u64 q, std::vector<u64> exponents)
    : G_(CharacterGroup::get(q)), e_(std::move(exponents)) {
    if (e_.size() != G_->generator_count()) {
        std::ostringstream os;
        os << "character mod " << q << " needs " << G_->generator_count() << " exponents, got " << e_.size();
        throw std::invalid_argument(os.str());
    }
    std::size_t j = 0;
    for (auto& L : G_->locals())
        for (u64 o : L.orders) {
            if (e_[j] >= o) {
                std::ostringstream os;
                os << "exponent " << e_[j] << " out of range for generator of order " << o << " mod " << L.pb;
                throw std::invalid_argument(os.str());
            }
            ++j;
        }
    finish();
}

void DirichletCharacter::finish() {
    const u64 q = modulus();
    const u64 lam = G_->exponent();
    table_.assign(q, 0);
    std::vector<u64> acc(q, 0);
    std::vector<char> unit(q, 1);
    conductor_ = 1;
    order_ = 1;
    std::size_t j0 = 0;
    for (auto& L : G_->locals()) {
        std::size_t ng = L.gens.size();
        std::vector<u64> lv(L.pb, 0);
        for (u64 r = 0; r < L.pb; ++r) {
            if (r % L.p == 0) continue;
            u64 v = 0;
            for (std::size_t j = 0; j < ng; ++j)
                v = (v + static_cast<u64>(L.dlog[r * ng + j]) * e_[j0 + j] % L.orders[j] * (lam / L.orders[j])) % lam;
            lv[r] = v;
        }
        for (u64 n = 0; n < q; ++n) {
            u64 r = n % L.pb;
            if (r % L.p == 0)
                unit[n] = 0;
            else
                acc[n] = (acc[n] + lv[r]) % lam;
        }
        // local order and conductor
        u64 lo = 1;
        std::vector<u64> comp(ng);
        for (std::size_t j = 0; j < ng; ++j) {
            comp[j] = L.orders[j] / gcd_u(L.orders[j], e_[j0 + j]);
            lo = lcm_u(lo, comp[j]);
        }
        order_ = lcm_u(order_, lo);
        u64 f = 1;
        if (L.p != 2) {
            if (lo > 1) f = ipow(L.p, static_cast<unsigned>(1 + valuation(lo, L.p)));
        } else if (L.beta == 2) {
            if (lo > 1) f = 4;
        } else if (L.beta >= 3) {
            if (comp[1] > 1)
                f = ipow(2, static_cast<unsigned>(2 + valuation(comp[1], 2)));
            else if (comp[0] > 1)
                f = 4;
        }
        conductor_ *= f;
        j0 += ng;
    }
    for (u64 n = 0; n < q; ++n) table_[n] = unit[n] ? static_cast<long>(acc[n]) : -1;
    if (q == 1) table_[0] = 0;
    parity_ = (q <= 2 || table_[q - 1] == 0) ? 1 : -1;
}

DirichletCharacter DirichletCharacter::principal(u64 q) {
    return DirichletCharacter(q, std::vector<u64>(CharacterGroup::get(q)->generator_count(), 0));
}

DirichletCharacter DirichletCharacter::parse(const std::string& label) {
    auto colon = label.find(':');
    std::string qs = label.substr(0, colon);
    std::size_t pos = 0;
    unsigned long long q = 0;
    try {
        q = std::stoull(qs, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad character label '" + label + "'");
    }
    if (pos != qs.size() || q == 0) throw std::invalid_argument("bad character label '" + label + "'");
    std::vector<u64> e;
    if (colon != std::string::npos) {
        std::string rest = label.substr(colon + 1);
        std::stringstream ss(rest);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            try {
                std::size_t p2 = 0;
                long long v = std::stoll(tok, &p2);
                if (p2 != tok.size() || v < 0) throw std::invalid_argument("");
                e.push_back(static_cast<u64>(v));
            } catch (const std::exception&) {
                throw std::invalid_argument("bad exponent '" + tok + "' in character label '" + label + "'");
            }
        }
    } else {
        e.assign(CharacterGroup::get(q)->generator_count(), 0);
    }
    return DirichletCharacter(q, std::move(e));
}

DirichletCharacter DirichletCharacter::from_generator_values(u64 q, const std::vector<u64>& values, u64 level) {
    auto G = CharacterGroup::get(q);
    if (values.size() != G->generator_count()) throw std::invalid_argument("from_generator_values: count");
    std::vector<u64> e;
    std::size_t j = 0;
    for (auto& L : G->locals())
        for (u64 o : L.orders) {
            u64 v = values[j++] % level;
            if ((static_cast<unsigned __int128>(v) * o) % level != 0)
                throw std::domain_error("generator value is not a root of unity of the generator order");
            e.push_back(static_cast<u64>((static_cast<unsigned __int128>(v) * o / level) % o));
        }
    return DirichletCharacter(q, std::move(e));
}

std::vector<DirichletCharacter> DirichletCharacter::enumerate(u64 q) {
    auto G = CharacterGroup::get(q);
    std::vector<u64> orders;
    for (auto& L : G->locals())
        for (u64 o : L.orders) orders.push_back(o);
    std::vector<DirichletCharacter> out;
    std::vector<u64> e(orders.size(), 0);
    while (true) {
        out.emplace_back(q, e);
        std::size_t i = e.size();
        while (i-- > 0) {
            if (++e[i] < orders[i]) break;
            e[i] = 0;
        }
        if (i == static_cast<std::size_t>(-1)) break;
    }
    return out;
}

std::vector<DirichletCharacter> DirichletCharacter::enumerate_primitive(u64 q) {
    std::vector<DirichletCharacter> out;
    for (auto& c : enumerate(q))
        if (c.is_primitive()) out.push_back(c);
    return out;
}

CyclotomicNumber DirichletCharacter::evaluate(i64 n) const {
    long k = exponent_at(n);
    if (k < 0) return CyclotomicNumber::zero(order_);
    return CyclotomicNumber::root_of_unity(order_, static_cast<i64>(static_cast<u64>(k) * order_ / value_level()));
}

std::complex<double> DirichletCharacter::value(i64 n) const {
    long k = exponent_at(n);
    if (k < 0) return 0.0;
    if (k == 0) return 1.0;
    double a = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(value_level());
    return {std::cos(a), std::sin(a)};
}

DirichletCharacter DirichletCharacter::conj() const {
    std::vector<u64> e = e_;
    std::size_t j = 0;
    for (auto& L : G_->locals())
        for (u64 o : L.orders) {
            e[j] = (o - e[j]) % o;
            ++j;
        }
    return DirichletCharacter(modulus(), std::move(e));
}

DirichletCharacter DirichletCharacter::primitive_part() const {
    u64 d = conductor_;
    auto Gd = CharacterGroup::get(d);
    std::vector<u64> vals;
    const u64 q = modulus();
    for (auto& Ld : Gd->locals()) {
        u64 pb = G_->factored().prime_power(Ld.p);
        for (u64 g : Ld.gens) {
            std::vector<u64> res, mods;
            for (auto& L : G_->locals()) {
                mods.push_back(L.pb);
                res.push_back(L.p == Ld.p ? g % pb : 1);
            }
            u64 lift = crt(res, mods);
            vals.push_back(static_cast<u64>(table_[lift % q]));
        }
    }
    return from_generator_values(d, vals, value_level());
}

DirichletCharacter DirichletCharacter::induce(u64 Q) const {
    const u64 q = modulus();
    if (Q == 0 || Q % q != 0) throw std::domain_error("induce: target modulus must be a multiple of the modulus");
    auto GQ = CharacterGroup::get(Q);
    std::vector<u64> vals;
    for (std::size_t i = 0; i < GQ->locals().size(); ++i)
        for (std::size_t j = 0; j < GQ->locals()[i].gens.size(); ++j) {
            u64 lift = GQ->generator_lift(i, j);
            long k = table_[lift % q];
            if (k < 0) throw std::logic_error("induce: generator lift is not a unit");
            vals.push_back(static_cast<u64>(k));
        }
    return from_generator_values(Q, vals, value_level());
}

DirichletCharacter DirichletCharacter::local_component(u64 p) const {
    std::size_t j0 = 0;
    for (auto& L : G_->locals()) {
        if (L.p == p)
            return DirichletCharacter(L.pb, std::vector<u64>(e_.begin() + j0, e_.begin() + j0 + L.gens.size()));
        j0 += L.gens.size();
    }
    return principal(1);
}

std::vector<DirichletCharacter> DirichletCharacter::local_components() const {
    std::vector<DirichletCharacter> out;
    for (auto& L : G_->locals()) out.push_back(local_component(L.p));
    return out;
}

DirichletCharacter DirichletCharacter::complement_component(u64 p) const {
    u64 pb = G_->factored().prime_power(p);
    std::vector<u64> e;
    std::size_t j0 = 0;
    for (auto& L : G_->locals()) {
        if (L.p != p)
            for (std::size_t j = 0; j < L.gens.size(); ++j) e.push_back(e_[j0 + j]);
        j0 += L.gens.size();
    }
    return DirichletCharacter(modulus() / pb, std::move(e));
}

std::string DirichletCharacter::label() const {
    std::ostringstream os;
    os << modulus() << ":";
    for (std::size_t j = 0; j < e_.size(); ++j) os << (j ? "," : "") << e_[j];
    return os.str();
}

DirichletCharacter multiply(const DirichletCharacter& a, const DirichletCharacter& b) {
    u64 L = lcm_u(a.modulus(), b.modulus());
    DirichletCharacter x = a.induce(L), y = b.induce(L);
    std::vector<u64> e = x.exponents();
    std::size_t j = 0;
    for (auto& loc : x.group().locals())
        for (u64 o : loc.orders) {
            e[j] = (e[j] + y.exponents()[j]) % o;
            ++j;
        }
    return DirichletCharacter(L, std::move(e));
}

DirichletCharacter combine_components(const std::vector<DirichletCharacter>& parts) {
    u64 Q = 1;
    for (auto& c : parts) {
        if (gcd_u(Q, c.modulus()) != 1) throw std::domain_error("combine_components: moduli not coprime");
        Q *= c.modulus();
    }
    auto G = CharacterGroup::get(Q);
    std::vector<u64> e;
    for (auto& L : G->locals())
        for (auto& c : parts)
            if (c.modulus() % L.p == 0) {
                auto loc = c.local_component(L.p);
                e.insert(e.end(), loc.exponents().begin(), loc.exponents().end());
            }
    return DirichletCharacter(Q, std::move(e));
}

}  // namespace recip
