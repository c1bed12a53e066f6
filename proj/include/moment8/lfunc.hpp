#ifndef MOMENT8_LFUNC_HPP
#define MOMENT8_LFUNC_HPP

// Dirichlet L-functions on the critical strip via the Hurwitz-zeta
// decomposition L(s, chi) = q^{-s} sum_a chi(a) zeta(s, a/q), the completed
// Lambda(1/2+s, chi) = (q/pi)^{s/2} Gamma(1/4+s/2) L(1/2+s, chi), the
// functional-equation residual, and Ramachandra's five-term decomposition
// of L(1/2+c+it, chi)^4.

#include <complex>

#include "moment8/arith.hpp"
#include "moment8/characters.hpp"
#include "moment8/quadrature.hpp"

namespace moment8::lfunc {

using cdouble = std::complex<double>;
using chars::DirichletCharacter;

// Euler-Maclaurin Hurwitz zeta, a in (0, 1], shift N ~ |Im s|.
cdouble hurwitz_zeta(cdouble s, double a, int em_terms = 8);

cdouble L_eval(const DirichletCharacter& chi, cdouble s, int em_terms = 8);

// Lambda(1/2 + s, chi); chi primitive and even.
cdouble lambda_eval(const DirichletCharacter& chi, cdouble s);

// |Lambda(1/2+s,chi) - eps_chi Lambda(1/2-s, conj chi)| / max(|Lambda(1/2+s,chi)|, floor)
double fe_residual(const DirichletCharacter& chi, cdouble s, double floor = 1e-300);

// F(1/2 + s) = eps_chi^4 (pi/q)^{4s} Gamma(1/4-s/2)^4 / Gamma(1/4+s/2)^4
cdouble F_factor(const DirichletCharacter& chi, cdouble s);

struct RamachandraTerms {
    cdouble J1, J2, J3, J4, J5;
    cdouble combination() const { return J1 + J2 - J3 - J4 - J5; }
};

// L(1/2+c+it, chi)^4 = J1 + J2 - J3 - J4 (J5 = 0 for q >= 2).
// J1: smoothed sum with e^{-n/X}; J2: F * partial sum up to X;
// J3/J4: vertical-line integrals on Re w = -3/4 and 1/4.
// tau4 values come from the supplied table (must cover the J1 truncation
// point, about 41.5 X).
RamachandraTerms ramachandra_terms(const DirichletCharacter& chi, double c, double t,
                                   double X, const QuadratureSpec& spec,
                                   const arith::MultiplicativeTable& tbl);

// Truncation point of the smoothed sum: smallest n with e^{-n/X} < 1e-18.
std::int64_t ramachandra_j1_cutoff(double X);

// J4-type line integral on an explicit line Re w = re_w in (0, 1/2); by
// Cauchy's theorem the value is line-independent there.
cdouble ramachandra_j4_line(const DirichletCharacter& chi, double c, double t, double X,
                            double re_w, const QuadratureSpec& spec,
                            const arith::MultiplicativeTable& tbl);

}  // namespace moment8::lfunc

#endif
