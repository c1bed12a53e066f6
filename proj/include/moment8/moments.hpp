#ifndef MOMENT8_MOMENTS_HPP
#define MOMENT8_MOMENTS_HPP

// Both sides of the eighth-moment formula at desk scale: the t-integrals
// of |Lambda|^8 summed over primitive even characters against Psi(q/Q),
// the main term 24024 a4 ... int |Gamma(1/4+it/2)|^8 dt, the exact AFE
// identity per character, the diagonal-term constant, and the empirical
// large-sieve ratio checker.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "moment8/arith.hpp"
#include "moment8/characters.hpp"
#include "moment8/quadrature.hpp"
#include "moment8/weights.hpp"

namespace moment8::moments {

using cdouble = std::complex<double>;
using chars::DirichletCharacter;

struct PerQEntry {
    std::int64_t q = 0;
    std::int64_t phi_flat = 0;
    double psi_weight = 0;     // Psi(q/Q)
    double lambda8_sum = 0;    // sum over primitive even chi of int |Lambda|^8
};

struct MomentReport {
    double Q = 0;
    std::vector<PerQEntry> per_q;
    double lhs_total = 0;
    double main_term = 0;
    double ratio = 0;
    double t_radius = 0;       // |t| truncation used for the integrals
    double tail_estimate = 0;  // quadrature + truncation metadata
};

double lambda8_integral(const DirichletCharacter& chi, const QuadratureSpec& spec);

struct AfeCheck {
    std::int64_t q = 0;
    int char_index = 0;
    double lhs = 0;            // int |Lambda|^8 dt
    double rhs = 0;            // 2 sum tau4 tau4 / sqrt(mn) chi(m) conj chi(n) V(m,n;q)
    std::int64_t limit = 0;
    double tail_estimate = 0;  // from the V decay bound
};

// The truncated AFE double sum. Uses (and requires) a WeightTable covering
// x = m n pi^4 / q^4 up to the truncation corner.
AfeCheck afe_rhs(const DirichletCharacter& chi, std::int64_t limit,
                 const QuadratureSpec& spec, const weights::WeightTable& table,
                 const arith::MultiplicativeTable& tbl);

// Truncation limit from inverting the decay bound
// exp(-(limit^2/q^4)^{1/4}) < target / (C (log limit)^4 limit).
std::int64_t afe_limit(std::int64_t q, double target);

// LHS of the theorem: sum_q Psi(q/Q) sum^flat_chi int |Lambda|^8.
MomentReport lhs_moment(double Q, const QuadratureSpec& spec);

// 24024 a4 sum_q Psi(q/Q) prod_{p|q}(...) phiflat(q) (log q)^16/16! int G(1/2,t) dt
double main_term(double Q, const QuadratureSpec& spec);

// Complete report with both sides and their ratio.
MomentReport moment_report(double Q, const QuadratureSpec& spec);

// Diagonal-term constant:
// 2^16 Q^2 (log Q)^16/16! Psi~(2) (A/2) prod_p (1-1/p)(1 + (1/B_p)(1/p - 1/p^2 - 1/p^3))
//   * int G(1/2,t) dt
double diagonal_constant(double Q, const QuadratureSpec& spec,
                         std::int64_t prime_cutoff = 100000);

// LHS / sum (Q^2 T + n)|a_n|^2 for the hybrid large sieve; LHS by direct
// t-quadrature of the trigonometric polynomial.
double large_sieve_ratio(std::int64_t Q, double T, const std::vector<cdouble>& coeffs,
                         const QuadratureSpec& spec);

}  // namespace moment8::moments

#endif
