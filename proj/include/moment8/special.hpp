#ifndef MOMENT8_SPECIAL_HPP
#define MOMENT8_SPECIAL_HPP

// Complex log-gamma (Lanczos + reflection), the kernel
//   G(s, t) = Gamma^4((s+it)/2) Gamma^4((s-it)/2),
// the integral of |Gamma(1/4 + it/2)|^8, the H(u,v) Gamma-ratio identity
// in both of its forms, and the Gamma-ratio decay check on the strip
// Re s in [-1, 1/3].

#include <complex>
#include <utility>

#include "moment8/quadrature.hpp"

namespace moment8::special {

using cdouble = std::complex<double>;

// Lanczos(g=7, 9 terms) with reflection for Re z < 1/2. Principal branch
// for Re z >= 1/2; in the reflected half-plane the imaginary part may be
// off by a multiple of 2 pi (exp(log_gamma) is exact everywhere).
// Rejects z at a non-positive integer.
cdouble log_gamma(cdouble z);
cdouble gamma_c(cdouble z);

// G(s, t); t may be complex (the contour machinery needs it).
cdouble G_kernel(cdouble s, cdouble t);
cdouble log_G_kernel(cdouble s, cdouble t);

struct Gamma8Result {
    double value = 0;
    double error = 0;      // quadrature refinement delta + tail estimate
    double tail_bound = 0; // analytic bound on the |t| > radius tail
};

// int_{-inf}^{inf} |Gamma(1/4 + it/2)|^8 dt, truncated at
// spec.truncation_radius; integrand decays like e^{-2 pi |t|}.
Gamma8Result gamma8_integral(const QuadratureSpec& spec);

// H(u, v) both ways: the three-term sum of Gamma ratios and the single
// sqrt(pi) Gamma-ratio form. Rejects points within 1e-6 of any Gamma pole
// appearing in either form.
std::pair<cdouble, cdouble> H_dual(cdouble u, cdouble v);

// Production path: the single-ratio form only (same pole guard).
cdouble H_func(cdouble u, cdouble v);

// |Gamma(1/4 - s/2) / Gamma(1/4 + s/2)| * (|s|+1)^{Re s} for Re s in [-1, 1/3].
double gamma_ratio_bound_check(cdouble s);

// Empirical supremum of gamma_ratio_bound_check over the strip, frozen
// from a scan (tests re-verify it).
inline constexpr double kGammaRatioStripBound = 6.2;

// sqrt(2 pi / z) (z/e)^z
cdouble stirling_main(cdouble z);

}  // namespace moment8::special

#endif
