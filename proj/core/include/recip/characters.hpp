#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "recip/arith.hpp"
#include "recip/cyclotomic.hpp"

namespace recip {

// Structure of (Z/qZ)^x as a product of cyclic groups on canonical generators:
// the least primitive root for odd p^b, -1 for 4, the pair (-1, 5) for 2^b with
// b >= 3, and the single generator 1 of order 1 for the factor 2.
class CharacterGroup {
public:
    struct Local {
        u64 p;
        int beta;
        u64 pb;
        std::vector<u64> gens;    // residues mod p^beta
        std::vector<u64> orders;  // cyclic orders of the generators
        // dlog[n * gens.size() + j]: exponent of generator j in n mod p^beta; unused for non-units
        std::vector<std::uint32_t> dlog;
    };

    static std::shared_ptr<const CharacterGroup> get(u64 q);

    u64 modulus() const { return fm_.value; }
    const FactoredModulus& factored() const { return fm_; }
    const std::vector<Local>& locals() const { return locals_; }
    std::size_t generator_count() const { return ngens_; }
    // Exponent of the values: lcm of the generator orders (Carmichael lambda).
    u64 exponent() const { return lambda_; }
    u64 order() const { return phi_; }
    // Lift of local generator j of local factor i to a residue mod q that is 1 at the other primes.
    u64 generator_lift(std::size_t local, std::size_t j) const;
    // Discrete logarithms of n (coprime to q) on all generators, in generator order.
    std::vector<u64> dlog(u64 n) const;

private:
    explicit CharacterGroup(u64 q);
    FactoredModulus fm_;
    std::vector<Local> locals_;
    std::size_t ngens_ = 0;
    u64 lambda_ = 1, phi_ = 1;
};

class DirichletCharacter {
public:
    DirichletCharacter();  // the character mod 1
    // Exponent tuple on the canonical generators, in prime order.
    DirichletCharacter(u64 q, std::vector<u64> exponents);

    static DirichletCharacter principal(u64 q);
    // Parse "q:e1,e2,...".
    static DirichletCharacter parse(const std::string& label);
    // Character mod q determined by its values on the canonical generators, each
    // given as an exponent a with value e(a / level).
    static DirichletCharacter from_generator_values(u64 q, const std::vector<u64>& values, u64 level);
    static std::vector<DirichletCharacter> enumerate(u64 q);
    static std::vector<DirichletCharacter> enumerate_primitive(u64 q);

    u64 modulus() const { return G_->modulus(); }
    const FactoredModulus& factored_modulus() const { return G_->factored(); }
    const CharacterGroup& group() const { return *G_; }
    const std::vector<u64>& exponents() const { return e_; }
    u64 conductor() const { return conductor_; }
    u64 order() const { return order_; }
    int parity() const { return parity_; }
    bool is_principal() const { return order_ == 1; }
    bool is_primitive() const { return conductor_ == modulus(); }
    bool is_real() const { return order_ <= 2; }

    // Value exponent at level lambda(q): chi(n) = e(k / lambda), or -1 when gcd(n, q) > 1.
    long exponent_at(i64 n) const {
        return table_[static_cast<std::size_t>(mod_floor(n, static_cast<i64>(modulus())))];
    }
    // Level at which exponent_at is expressed.
    u64 value_level() const { return G_->exponent(); }
    const std::vector<long>& value_table() const { return table_; }

    CyclotomicNumber evaluate(i64 n) const;  // exact, at level order()
    std::complex<double> value(i64 n) const;

    DirichletCharacter conj() const;
    // Primitive character inducing this one, modulus conductor().
    DirichletCharacter primitive_part() const;
    // Character mod q induced from this one; requires modulus() | q.
    DirichletCharacter induce(u64 q) const;
    // Restriction to the prime power p^beta || q.
    DirichletCharacter local_component(u64 p) const;
    std::vector<DirichletCharacter> local_components() const;
    // Component on the part of q coprime to p (the character mod q / p^beta).
    DirichletCharacter complement_component(u64 p) const;

    std::string label() const;
    friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
        return a.modulus() == b.modulus() && a.e_ == b.e_;
    }
    friend bool operator!=(const DirichletCharacter& a, const DirichletCharacter& b) { return !(a == b); }

private:
    void finish();
    std::shared_ptr<const CharacterGroup> G_;
    std::vector<u64> e_;
    std::vector<long> table_;
    u64 conductor_ = 1, order_ = 1;
    int parity_ = 1;
};

// Pointwise product on units, as a character mod lcm of the moduli.
DirichletCharacter multiply(const DirichletCharacter& a, const DirichletCharacter& b);
// Product of characters to pairwise coprime moduli (CRT assembly).
DirichletCharacter combine_components(const std::vector<DirichletCharacter>& parts);

}  // namespace recip
