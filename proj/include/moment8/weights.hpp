#ifndef MOMENT8_WEIGHTS_HPP
#define MOMENT8_WEIGHTS_HPP

// The smooth bump Psi and its Mellin transform, the AFE weights
//
//   W(x, t) = (1/2 pi i) int_{(c)} G(1/2+s, t) x^{-s} ds/s
//   V(xi, eta; mu) = int (eta/xi)^{it} W(xi eta pi^4 / mu^4, t) dt
//   Wpm(x, y; u) = u|x +- y| Psi(u|x +- y|) V(x, y; u|x +- y|)
//
// and the three Mellin transforms of Wpm: in u (W1), in x,y (W2), and in
// all three variables (W3, with its closed form through H(u,v)).
//
// W is tabulated on a log-x grid against the fixed t-quadrature nodes used
// by V; the eighth-moment sums fetch millions of V values through that
// table.

#include <complex>
#include <vector>

#include "moment8/quadrature.hpp"

namespace moment8::weights {

using cdouble = std::complex<double>;

// Psi(u) = exp(-1/(u-1) - 1/(2-u)) on (1,2), else 0.
double psi(double u);

// Mellin transform of Psi; entire in s.
cdouble psi_mellin(cdouble s, const QuadratureSpec& spec);

// Contour line Re s = c(x) used by W_eval: the saddle choice
// c = max(2, 2 x^{1/4}), which keeps the integrand the size of the answer.
double w_contour_c(double x);

double W_eval(double x, double t, const QuadratureSpec& spec);

// Same on an explicit contour line Re s = c (the contour-independence tests
// want this; any c > 0 gives the same value by Cauchy's theorem).
double W_eval_at(double x, double t, double c, const QuadratureSpec& spec);

// Fixed t-grid W samples, cubic in log x per t-slice. Samples are stored
// scaled by exp(8 x^{1/4}) to keep the interpolated quantity slowly varying.
// Below x_min a coarse-grid extension takes over (W crawls toward its
// x -> 0 limit over many decades), and below that the limit G(1/2, t)
// itself; the table therefore covers every x <= x_max.
class WeightTable {
public:
    WeightTable() = default;
    WeightTable(double x_min, double x_max, double t_max, const QuadratureSpec& spec,
                double dv = 0.02, double t_step = 0.25, unsigned threads = 1);

    bool covers(double x) const { return built_ && x > 0.0 && x <= x_max_; }
    double t_step() const { return t_step_; }
    double t_max() const { return t_step_ * static_cast<double>(nt_ - 1); }
    int t_count() const { return nt_; }

    // W(x, t_j) for the j-th nonnegative grid node t_j = j * t_step.
    double W_at(double x, int j) const;

    // All slices at once: out[j] = W(x, t_j). The bracket search and cubic
    // weights are shared across slices.
    void W_row(double x, std::vector<double>& out) const;

    double interp_rel_error_probe(double x, int j, const QuadratureSpec& spec) const;

private:
    bool built_ = false;
    double x_min_ = 0, x_max_ = 0;
    double v_min_ = 0, dv_ = 0;
    int nx_ = 0, nt_ = 0;
    double t_step_ = 0;
    std::vector<std::vector<double>> scaled_;  // [j][i], W * exp(8 x^{1/4})
    // coarse low-x extension on [v_low_min, v_min + 2 dv_low], unscaled
    double v_low_min_ = 0, dv_low_ = 0;
    int nx_low_ = 0;
    std::vector<std::vector<double>> low_;     // [j][i], plain W
    std::vector<double> limit_;                // [j], G(1/2, t_j) = lim_{x->0} W
};

// V by quadrature over the table's t-grid (or direct W_eval when no table
// is given or x falls outside it). Asserts the imaginary residue of the
// Hermitian t-integral is small and returns the real part.
double V_eval(double xi, double eta, double mu, const QuadratureSpec& spec,
              const WeightTable* table = nullptr);

// Empirical constant for |V(xi,eta;mu)| <= C exp(-(max(xi,eta)^2/mu^4)^{1/4}),
// frozen from the probe-grid scan; tests re-verify.
inline constexpr double kVDecayConstant = 52.0;

// Beyond x = xi eta pi^4 / mu^4 = 2000 the saddle envelope e^{-8 x^{1/4}}
// puts |V| under 1e-21; sums may drop such terms outright.
inline constexpr double kVNegligibleX = 2000.0;

double w_pm(double x, double y, double u, int sign, const QuadratureSpec& spec,
            const WeightTable* table = nullptr);

// W1^{+-}(x, y; z) = |x +- y|^{-z} int_1^2 Psi(w) V(x, y; w) w^z dw
cdouble mellin_w1_pm(double x, double y, cdouble z, int sign, const QuadratureSpec& spec,
                     const WeightTable* table = nullptr);
cdouble mellin_w1(double x, double y, cdouble z, const QuadratureSpec& spec,
                  const WeightTable* table = nullptr);

// W2^{+-}(s1, s2; u), 2D over the support strip u|x +- y| in [1,2].
cdouble mellin_w2_pm(cdouble s1, cdouble s2, double u, int sign, const QuadratureSpec& spec,
                     const WeightTable* table = nullptr);
cdouble mellin_w2(cdouble s1, cdouble s2, double u, const QuadratureSpec& spec,
                  const WeightTable* table = nullptr);

// Closed form of W3 = W3^+ + W3^-:
//   Psi~(1 + 4 omega + z) / (2 omega pi^{4 omega})
//     * int H(xi - it, z) G(1/2 + omega, t) dt,
// omega = (s1+s2-z)/2, xi = (s1-s2+z)/2. Valid for Re s1, Re s2 > 0 and
// |Re(s1-s2)| < Re z < 1, omega != 0.
cdouble mellin_w3_closed(cdouble s1, cdouble s2, cdouble z, const QuadratureSpec& spec);

}  // namespace moment8::weights

#endif
