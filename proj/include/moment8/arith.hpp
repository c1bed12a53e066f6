#ifndef MOMENT8_ARITH_HPP
#define MOMENT8_ARITH_HPP

// Exact multiplicative-function tables (tau4, mu, phi) and high-precision
// Euler products:
//
//   a4   = prod_p (1 - 1/p)^9 (1 + 9/p + 9/p^2 + 1/p^3)
//   a3   = prod_p (1 - 1/p)^4 (1 + 4/p + 1/p^2)
//   B_p  = sum_{r>=0} tau4(p^r)^2 / p^r  =  (1 + 9/p + 9/p^2 + 1/p^3) / (1 - 1/p)^7
//   calA = prod_p B_p (1 - 1/p)^16       ( = a4 identically )
//
// plus the two Euler-product identities used by the main-term evaluation:
// the h-sum identity for sum_{(h,MN)=1} 1/(phi(abh) h^s) and the d,r
// double-sum identity against F(-z, g, MN) / (zeta(1+z) phi(gMN, 1+z)).
// Products are evaluated in log space with compensated summation, in
// 113-bit floats, with explicit tail bounds.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace moment8::arith {

using real128 = __float128;
using cdouble = std::complex<double>;

double to_double(real128 x);
std::string to_string(real128 x, int digits = 25);

struct MultiplicativeTable {
    std::int64_t limit = 0;
    std::vector<std::int64_t> tau4;  // tau4[n], n = 1..limit; tau4[0] unused
    std::vector<int> mobius;
    std::vector<std::int64_t> phi;
};

// Linear sieve; tau4(p^r) = C(r+3,3), extended multiplicatively.
MultiplicativeTable sieve_tables(std::int64_t limit);

struct SeriesValue {
    real128 value = 0;
    double tail_bound = 0;
};

// Partial sum of B_p with a geometric estimate for the dropped tail.
SeriesValue bp_local(std::int64_t p, int terms);

enum class EulerKind { a4, a3, calA };

struct EulerProductValue {
    real128 value = 0;
    std::int64_t prime_cutoff = 0;
    double tail_bound = 0;  // bound on |log of omitted tail|
};

EulerProductValue euler_constant(EulerKind kind, std::int64_t prime_cutoff);

// Local factor of the given constant at one prime (used by tests and by
// the tail-bound scan).
real128 euler_local_factor(EulerKind kind, std::int64_t p);

// prod_{p|q} (1-1/p)^7 / (1 + 9/p + 9/p^2 + 1/p^3), the q-dependent factor
// of the main term.
double local_factor_q(std::int64_t q);

// phi(r, s) = prod_{p|r} (1 - p^{-s})
cdouble phi_rs(std::int64_t r, cdouble s);

// |truncated sum_{h<=H,(h,MN)=1} 1/(phi(abh) h^s)
//   - (1/phi(ab)) zeta(s+1) prod_{p|MN}(1-p^{-s-1}) prod_{p!|abMN}(1+p^{-s}/(p(p-1)))|
// Preconditions: gcd(ab, MN) = 1, Re s >= 1, H >= 1000.
double h_sum_identity_check(std::int64_t a, std::int64_t b, std::int64_t M,
                            std::int64_t N, cdouble s, std::int64_t H,
                            std::int64_t prime_cutoff = 100000);

// |truncated sum_{(d,gMN)=1} sum_{(r,MN)=1} mu(d) mu(r) (r,g) / (r phi(r) d^{1+z})
//    * prod_{p|MN}(1-p^{z-1}) prod_{p!|rMN}(1+p^{z-1}/(p-1))
//   - F(-z, g, MN) / (zeta(1+z) phi(gMN, 1+z))|
// Preconditions: gcd(M, N) = 1, Re z in (0,1).
double f_func_identity_check(cdouble z, std::int64_t g, std::int64_t M,
                             std::int64_t N, std::int64_t dr_limit = 10000,
                             std::int64_t prime_cutoff = 1000000);

// F(s, g, MN) = phi(MN, s+1) prod_{p!|gMN}(1 - 1/(p(p-1)) + 1/(p^{1+s}(p-1)))
//             * prod_{p|g, p!|MN}(1 - 1/p^{1+s} - (1/(p-1))(1 - 1/p^s))
cdouble f_func(cdouble s, std::int64_t g, std::int64_t M, std::int64_t N,
               std::int64_t prime_cutoff = 1000000);

// Euler-Maclaurin zeta, independent of the lfunc module.
cdouble zeta_em(cdouble s);

// Prime zeta P(s) = sum_p p^{-s} (Re s > 1), via sum_k mu(k)/k log zeta(ks).
cdouble prime_zeta(cdouble s);

std::vector<std::int64_t> primes_up_to(std::int64_t n);
std::vector<std::int64_t> distinct_prime_factors(std::int64_t n);
std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t phi_of(std::int64_t n);
int mobius_of(std::int64_t n);

}  // namespace moment8::arith

#endif
