#include "moment8/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "moment8/arith.hpp"

namespace moment8::chars {

using arith::gcd64;

bool DirichletCharacter::is_real() const {
    for (const auto& v : values)
        if (std::abs(v.imag()) > 1e-12) return false;
    return true;
}

namespace {

std::int64_t pow_mod(std::int64_t b, std::int64_t e, std::int64_t m) {
    std::int64_t r = 1 % m;
    b %= m;
    while (e > 0) {
        if (e & 1) r = (__int128)r * b % m;
        b = (__int128)b * b % m;
        e >>= 1;
    }
    return r;
}

// Primitive root mod p^k, p odd prime.
std::int64_t primitive_root(std::int64_t p, std::int64_t pk) {
    std::vector<std::int64_t> qs = arith::distinct_prime_factors(p - 1);
    std::int64_t g = 2;
    for (;; ++g) {
        bool ok = true;
        for (std::int64_t qf : qs)
            if (pow_mod(g, (p - 1) / qf, p) == 1) { ok = false; break; }
        if (ok) break;
    }
    if (pk > p && pow_mod(g, p - 1, p * p) == 1) g += p;
    return g % pk;
}

struct FactorData {
    CrtFactor f;
};

}  // namespace

std::vector<int> CharacterGroup::primitive_even_indices() const {
    std::vector<int> out;
    for (const auto& c : characters)
        if (c.is_primitive && c.even) out.push_back(c.index);
    return out;
}

const DirichletCharacter& CharacterGroup::principal() const {
    for (const auto& c : characters)
        if (c.conductor == 1) return c;
    throw std::logic_error("group without principal character");
}

std::int64_t conductor_of(const DirichletCharacter& chi) {
    std::int64_t q = chi.modulus;
    if (q == 1) return 1;
    std::vector<std::int64_t> divisors;
    for (std::int64_t f = 1; f * f <= q; ++f) {
        if (q % f == 0) {
            divisors.push_back(f);
            if (f != q / f) divisors.push_back(q / f);
        }
    }
    std::sort(divisors.begin(), divisors.end());
    for (std::int64_t f : divisors) {
        // chi is induced mod f iff chi(a) = 1 for all a = 1 (mod f), (a,q)=1
        bool ok = true;
        for (std::int64_t a = 1 + f; a < q + 1; a += f) {
            std::int64_t am = a % q;
            if (gcd64(am, q) != 1) continue;
            if (std::abs(chi.values[am] - cdouble(1.0, 0.0)) > 1e-9) { ok = false; break; }
        }
        if (ok) return f;
    }
    return q;
}

CharacterGroup build_group(std::int64_t q) {
    if (q < 1) throw std::invalid_argument("build_group: q must be >= 1");
    if (q > 1000000) throw std::invalid_argument("build_group: q beyond desk-scale guard 10^6");

    CharacterGroup G;
    G.modulus = q;

    if (q == 1) {
        DirichletCharacter chi;
        chi.modulus = 1;
        chi.index = 0;
        chi.values = {cdouble(1.0, 0.0)};
        chi.even = true;
        chi.conductor = 1;
        chi.is_primitive = true;  // convention: the trivial character counts
        G.phi = 1;
        G.phi_flat = 1;
        G.characters.push_back(std::move(chi));
        return G;
    }

    // CRT factors
    std::vector<std::pair<std::int64_t, std::int64_t>> pps;  // (p, p^k)
    {
        std::int64_t rest = q;
        for (std::int64_t p = 2; p * p <= rest; ++p) {
            if (rest % p != 0) continue;
            std::int64_t pk = 1;
            while (rest % p == 0) { rest /= p; pk *= p; }
            pps.emplace_back(p, pk);
        }
        if (rest > 1) pps.emplace_back(rest, rest);
    }
    std::vector<CrtFactor> factors;
    for (auto [p, pk] : pps) {
        CrtFactor f;
        f.prime = p;
        f.prime_power = pk;
        f.dlog.assign(pk, -1);
        if (p == 2) {
            if (pk == 2) {
                f.generator = 1;
                f.order = 1;
                f.dlog[1] = 0;
            } else if (pk == 4) {
                f.generator = 3;
                f.order = 2;
                f.dlog[1] = 0;
                f.dlog[3] = 1;
            } else {
                f.two_part = true;
                f.generator = 5;
                f.order = pk / 4;  // order of 5 mod 2^k
                f.sign_exp.assign(pk, 0);
                std::int64_t v = 1;
                for (std::int64_t j = 0; j < f.order; ++j) {
                    f.dlog[v] = j;
                    f.sign_exp[v] = 0;
                    std::int64_t w = pk - v;  // -(5^j)
                    f.dlog[w] = j;
                    f.sign_exp[w] = 1;
                    v = v * 5 % pk;
                }
            }
        } else {
            f.generator = primitive_root(p, pk);
            f.order = pk / p * (p - 1);
            std::int64_t v = 1;
            for (std::int64_t j = 0; j < f.order; ++j) {
                f.dlog[v] = j;
                v = (__int128)v * f.generator % pk;
            }
        }
        factors.push_back(std::move(f));
    }

    std::int64_t phi = 1;
    for (const auto& f : factors) phi *= f.order * (f.two_part ? 2 : 1);
    G.phi = phi;
    G.factors = factors;

    if (phi * q > 100000000)
        throw std::length_error("build_group: value tables would exceed the memory guard");

    // Component list: one cyclic component per factor plus a sign component
    // for 2^k, k >= 3.
    struct Component {
        const CrtFactor* f;
        bool sign;          // the {+-1} component
        std::int64_t order; // component order
    };
    std::vector<Component> comps;
    for (const auto& f : factors) {
        if (f.two_part) comps.push_back({&f, true, 2});
        if (f.order > 1 || !f.two_part) comps.push_back({&f, false, f.order});
    }

    // Enumerate exponent tuples lexicographically.
    std::vector<std::int64_t> expo(comps.size(), 0);
    int index = 0;
    for (;;) {
        DirichletCharacter chi;
        chi.modulus = q;
        chi.index = index;
        chi.values.assign(q, cdouble(0.0, 0.0));
        for (std::int64_t n = 0; n < q; ++n) {
            if (gcd64(n, q) != 1) continue;
            double arg = 0.0;
            int sign = 0;
            for (size_t ci = 0; ci < comps.size(); ++ci) {
                const auto& c = comps[ci];
                std::int64_t npk = n % c.f->prime_power;
                if (c.sign) {
                    sign += static_cast<int>(expo[ci]) * c.f->sign_exp[npk];
                } else {
                    std::int64_t dl = c.f->dlog[npk];
                    arg += 2.0 * M_PI * static_cast<double>(expo[ci]) *
                           static_cast<double>(dl) / static_cast<double>(c.order);
                }
            }
            cdouble v = std::polar(1.0, arg);
            if (sign % 2 != 0) v = -v;
            chi.values[n] = v;
        }
        chi.even = std::abs(chi.values[(q - 1) % q] - cdouble(1.0, 0.0)) < 1e-9;
        chi.conductor = conductor_of(chi);
        chi.is_primitive = (chi.conductor == q);
        G.characters.push_back(std::move(chi));
        ++index;

        size_t pos = 0;
        while (pos < comps.size()) {
            if (++expo[pos] < comps[pos].order) break;
            expo[pos] = 0;
            ++pos;
        }
        if (pos == comps.size()) break;
    }

    G.phi_flat = 0;
    for (const auto& c : G.characters)
        if (c.is_primitive && c.even) ++G.phi_flat;
    return G;
}

cdouble gauss_sum(const DirichletCharacter& chi) {
    if (!chi.is_primitive) throw std::invalid_argument("gauss_sum: character must be primitive");
    std::int64_t q = chi.modulus;
    cdouble tau = 0.0;
    for (std::int64_t a = 0; a < q; ++a) {
        if (chi.values[a] == cdouble(0.0, 0.0)) continue;
        tau += chi.values[a] * std::polar(1.0, 2.0 * M_PI * static_cast<double>(a) / static_cast<double>(q));
    }
    return tau;
}

cdouble root_number(const DirichletCharacter& chi) {
    return gauss_sum(chi) / std::sqrt(static_cast<double>(chi.modulus));
}

namespace {

double orth_rhs(std::int64_t q, std::int64_t diff) {
    // sum over q = d r with r | diff of mu(d) phi(r); r | 0 for every r
    double out = 0.0;
    for (std::int64_t r = 1; r <= q; ++r) {
        if (q % r != 0) continue;
        if (diff % r != 0) continue;
        out += static_cast<double>(arith::mobius_of(q / r)) * static_cast<double>(arith::phi_of(r));
    }
    return out;
}

}  // namespace

OrthPair orth_star(const CharacterGroup& G, std::int64_t m, std::int64_t n) {
    std::int64_t q = G.modulus;
    if (gcd64(m * n, q) != 1) throw std::invalid_argument("orth_star: gcd(mn, q) must be 1");
    cdouble lhs = 0.0;
    for (const auto& chi : G.characters)
        if (chi.is_primitive) lhs += chi(m) * std::conj(chi(n));
    return {lhs, orth_rhs(q, m - n)};
}

OrthPair orth_flat(const CharacterGroup& G, std::int64_t m, std::int64_t n) {
    std::int64_t q = G.modulus;
    if (gcd64(m * n, q) != 1) throw std::invalid_argument("orth_flat: gcd(mn, q) must be 1");
    cdouble lhs = 0.0;
    for (const auto& chi : G.characters)
        if (chi.is_primitive && chi.even) lhs += chi(m) * std::conj(chi(n));
    return {lhs, 0.5 * (orth_rhs(q, m - n) + orth_rhs(q, m + n))};
}

OrthPair orth_star(std::int64_t q, std::int64_t m, std::int64_t n) {
    return orth_star(build_group(q), m, n);
}

OrthPair orth_flat(std::int64_t q, std::int64_t m, std::int64_t n) {
    return orth_flat(build_group(q), m, n);
}

std::int64_t phi_flat_formula(std::int64_t q) {
    double v = 0.5 * (orth_rhs(q, 0) + orth_rhs(q, 2));
    return static_cast<std::int64_t>(std::llround(v));
}

}  // namespace moment8::chars
