#ifndef MOMENT8_CHARACTERS_HPP
#define MOMENT8_CHARACTERS_HPP

// Dirichlet character groups mod q, built from the CRT decomposition of
// (Z/qZ)*: cyclic for odd prime powers, {+-1} x <5> for 2^k with k >= 3.
// Characters carry materialized value tables (the moment loops want O(1)
// lookups), parity, conductor and primitivity flags. Gauss sums and the
// root number eps_chi = tau(chi)/sqrt(q), and both orthogonality relations
//
//   sum*_chi chi(m) conj chi(n)  =  sum_{q=dr, r|(m-n)} mu(d) phi(r)
//   sumF_chi chi(m) conj chi(n)  =  (1/2) sum_{q=dr, r|(m-n) or r|(m+n)} mu(d) phi(r)
//
// evaluated from both sides.

#include <complex>
#include <cstdint>
#include <vector>

namespace moment8::chars {

using cdouble = std::complex<double>;

struct DirichletCharacter {
    std::int64_t modulus = 1;
    int index = 0;  // position in the group's enumeration
    std::vector<cdouble> values;  // values[n], n = 0..q-1; zero off units
    bool even = true;
    std::int64_t conductor = 1;
    bool is_primitive = false;

    cdouble operator()(std::int64_t n) const {
        std::int64_t r = n % modulus;
        if (r < 0) r += modulus;
        return values[static_cast<size_t>(r)];
    }
    bool is_principal() const { return conductor == 1; }
    bool is_real() const;
};

struct CrtFactor {
    std::int64_t prime = 0;
    std::int64_t prime_power = 0;   // p^k
    std::int64_t generator = 0;     // for the cyclic part
    std::int64_t order = 0;         // order of the cyclic part
    bool two_part = false;          // 2^k, k >= 3: extra {+-1} component
    std::vector<std::int64_t> dlog; // discrete log base generator, -1 off units
    std::vector<int> sign_exp;      // exponent of the -1 component (two_part only)
};

struct CharacterGroup {
    std::int64_t modulus = 1;
    std::int64_t phi = 1;
    std::int64_t phi_flat = 0;  // # primitive even characters
    std::vector<CrtFactor> factors;
    std::vector<DirichletCharacter> characters;  // size phi(q)

    std::vector<int> primitive_even_indices() const;
    const DirichletCharacter& principal() const;
};

CharacterGroup build_group(std::int64_t q);

// Smallest f | q such that chi is induced by a character mod f.
std::int64_t conductor_of(const DirichletCharacter& chi);

// tau(chi) = sum_a chi(a) e(a/q). Requires chi primitive.
cdouble gauss_sum(const DirichletCharacter& chi);

// eps_chi = tau(chi)/sqrt(q) for primitive even chi.
cdouble root_number(const DirichletCharacter& chi);

struct OrthPair {
    cdouble lhs;  // direct character sum
    double rhs;   // divisor-sum side
};

OrthPair orth_star(std::int64_t q, std::int64_t m, std::int64_t n);
OrthPair orth_flat(std::int64_t q, std::int64_t m, std::int64_t n);

// Same with a prebuilt group (the acceptance grid calls these in bulk).
OrthPair orth_star(const CharacterGroup& G, std::int64_t m, std::int64_t n);
OrthPair orth_flat(const CharacterGroup& G, std::int64_t m, std::int64_t n);

// phi_flat via the orthogonality formula at m = n = 1 (independent of the
// conductor filter): (1/2)[sum_{q=dr} mu(d)phi(r) + sum_{q=dr, r|2} mu(d)phi(r)].
std::int64_t phi_flat_formula(std::int64_t q);

}  // namespace moment8::chars

#endif
