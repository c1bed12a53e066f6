#include "moment8/weights.hpp"

#include <cmath>
#include <stdexcept>

#include "moment8/parallel.hpp"
#include "moment8/special.hpp"

namespace moment8::weights {

namespace {

constexpr double kPi4 = 97.409091034002437236440332688705;  // pi^4

// W is stored scaled by exp(8 x^{1/4}), the leading decay rate.
double w_scale_log(double x) { return 8.0 * std::pow(x, 0.25); }

// Integrand of W on the line Re s = c: G(1/2+c+iu, t) x^{-c-iu} / (c+iu).
struct WLine {
    double c, t, lx;
    cdouble at(double u) const {
        cdouble s(c, u);
        return std::exp(special::log_G_kernel(cdouble(0.5, 0.0) + s, cdouble(t, 0.0)) - s * lx) / s;
    }
};

// The integrand peaks near u = 0 and u = +-t; if even the peaks underflow
// double range the integral is an honest zero.
bool w_line_underflows(const WLine& f) {
    double lmax = -1e300;
    for (double u : {0.0, f.t}) {
        cdouble s(f.c, u);
        double l = (special::log_G_kernel(cdouble(0.5, 0.0) + s, cdouble(f.t, 0.0)) - s * f.lx).real() -
                   std::log(std::abs(s));
        lmax = std::max(lmax, l);
    }
    // leave headroom above the denormal range so peak * 1e-18 stays
    // representable in the decay test
    return lmax < -700.0;
}

// March outward to find the half-range where the integrand has dropped
// `drop` below its peak.
double w_half_range(const WLine& f, double h, double drop = 1e-18) {
    double peak = std::abs(f.at(0.0));
    double u = 0.0;
    int low = 0;
    for (;;) {
        u += 8.0 * h;
        double a = std::abs(f.at(u));
        peak = std::max(peak, a);
        if ((a == 0.0 || a < peak * drop) && u > f.t + 6.0)
            ++low;
        else
            low = 0;
        if (low >= 2) return u;
        if (u > f.t + 2000.0)
            throw std::runtime_error("W_eval: integrand failed to decay on the contour (c=" +
                                     std::to_string(f.c) + ", t=" + std::to_string(f.t) +
                                     ", log x=" + std::to_string(f.lx) + ")");
    }
}

// Folded trapezoid: f(-u) = conj f(u) for real x, t.
double W_folded(double x, double t, double h) {
    WLine f{w_contour_c(x), std::abs(t), std::log(x)};
    if (w_line_underflows(f)) return 0.0;
    double U = w_half_range(f, h);
    double sum = 0.5 * f.at(0.0).real();
    for (double u = h; u <= U; u += h) sum += f.at(u).real();
    return sum * h / M_PI;
}

struct WComplexResult {
    cdouble value;
    double abs_mass;  // h * sum |f|, the roundoff scale of the sum
};

WComplexResult W_complex(double x, double t, double c, double h) {
    WLine f{c, std::abs(t), std::log(x)};
    if (w_line_underflows(f)) return {cdouble(0.0, 0.0), 0.0};
    double U = w_half_range(f, h);
    cdouble sum = f.at(0.0);
    double mass = std::abs(sum);
    for (double u = h; u <= U; u += h) {
        cdouble a = f.at(u), b = f.at(-u);
        sum += a + b;
        mass += std::abs(a) + std::abs(b);
    }
    return {sum * h / (2.0 * M_PI), mass * h};
}

// Small-x route: pick up the residue at s = 0 and integrate on Re s = -1/4,
// where x^{-s} = O(x^{1/4}) and there is no cancellation against the limit.
double w_limit_value(double t) {
    return std::exp(special::log_G_kernel(cdouble(0.5, 0.0), cdouble(t, 0.0)).real());
}

double W_shifted_folded(double x, double t, double h, double drop = 1e-18) {
    WLine f{-0.25, std::abs(t), std::log(x)};
    double U = w_half_range(f, h, drop);
    double sum = 0.5 * f.at(0.0).real();
    for (double u = h; u <= U; u += h) sum += f.at(u).real();
    return w_limit_value(t) + sum * h / M_PI;
}

}  // namespace

double psi(double u) {
    if (u <= 1.0 || u >= 2.0) return 0.0;
    return std::exp(-1.0 / (u - 1.0) - 1.0 / (2.0 - u));
}

cdouble psi_mellin(cdouble s, const QuadratureSpec& spec) {
    auto f = [&](double u) -> cdouble {
        double p = psi(u);
        if (p == 0.0) return 0.0;
        return p * std::exp((s - 1.0) * std::log(u));
    };
    return integrate_refined(f, 1.0, 2.0, spec).value;
}

double w_contour_c(double x) {
    // x >= 1: the saddle line c ~ 2 x^{1/4} keeps the integrand the size of
    // the answer. x < 1: x^{-c} inflates the integrand by e^{c |log x|}
    // (cancellation) while the trapezoid aliasing strip narrows as c -> 0,
    // so cap the inflation at e^14 and keep c as large as that allows.
    if (x >= 1.0) return std::max(2.0, 2.0 * std::pow(x, 0.25));
    return std::clamp(14.0 / std::abs(std::log(x)), 0.2, 2.0);
}

double W_eval_at(double x, double t, double c, const QuadratureSpec& spec) {
    if (!(x > 0.0)) throw std::invalid_argument("W_eval: x must be positive");
    spec.validate();
    double h = std::min(spec.initial_step, 0.25);
    auto value = W_complex(x, t, c, h);
    for (int level = 1; level <= spec.max_refinements; ++level) {
        h *= 0.5;
        auto next = W_complex(x, t, c, h);
        double delta = std::abs(next.value - value.value);
        value = next;
        // the 4e-15 * mass term is the roundoff floor of the trapezoid sum
        double target = std::max({spec.abs_tol, spec.rel_tol * std::abs(value.value),
                                  4e-15 * value.abs_mass});
        if (delta <= target) {
            if (std::abs(value.value.imag()) >
                1e-10 * std::max(1.0, std::abs(value.value.real())))
                throw std::runtime_error("W_eval: imaginary residue above 1e-10");
            return value.value.real();
        }
    }
    throw std::runtime_error("W_eval: no convergence within max_refinements");
}

double W_eval(double x, double t, const QuadratureSpec& spec) {
    if (x < 0.02) {
        // residue + shifted line, with step-halving refinement
        spec.validate();
        double h = std::min(spec.initial_step, 0.125);
        double value = W_shifted_folded(x, t, h);
        for (int level = 1; level <= spec.max_refinements; ++level) {
            h *= 0.5;
            double next = W_shifted_folded(x, t, h);
            double delta = std::abs(next - value);
            value = next;
            if (delta <= std::max(spec.abs_tol, spec.rel_tol * std::abs(value))) return value;
        }
        throw std::runtime_error("W_eval: no convergence within max_refinements");
    }
    return W_eval_at(x, t, w_contour_c(x), spec);
}

WeightTable::WeightTable(double x_min, double x_max, double t_max, const QuadratureSpec& spec,
                         double dv, double t_step, unsigned threads) {
    if (!(x_min > 0.0) || !(x_max > x_min) || !(t_max > 0.0) || !(dv > 0.0) || !(t_step > 0.0))
        throw std::invalid_argument("WeightTable: bad grid parameters");
    spec.validate();
    x_min_ = x_min;
    x_max_ = x_max;
    v_min_ = std::log(x_min);
    double v_max = std::log(x_max);
    nx_ = static_cast<int>(std::ceil((v_max - v_min_) / dv)) + 1;
    dv_ = (v_max - v_min_) / (nx_ - 1);
    t_step_ = t_step;
    nt_ = static_cast<int>(std::floor(t_max / t_step)) + 1;
    scaled_.assign(nt_, std::vector<double>(nx_));

    // low-x extension: W approaches G(1/2, t) like x^{1/4} with a large
    // constant, so it crawls over ~55 decades; a coarse log grid suffices
    // (the slice values vary slowly there).
    dv_low_ = 0.25;
    v_low_min_ = -240.0;
    nx_low_ = static_cast<int>(std::ceil((v_min_ + 2.0 * dv_low_ - v_low_min_) / dv_low_)) + 1;
    low_.assign(nt_, std::vector<double>(nx_low_));
    limit_.assign(nt_, 0.0);

    const double h = 0.125;  // fixed contour step; validated against W_eval in tests
    parallel_chunks(static_cast<std::size_t>(nt_), threads, [&](std::size_t j) {
        double t = t_step_ * static_cast<double>(j);
        auto& row = scaled_[j];
        for (int i = 0; i < nx_; ++i) {
            double x = std::exp(v_min_ + dv_ * i);
            row[i] = W_folded(x, t, h) * std::exp(w_scale_log(x));
            if (!std::isfinite(row[i]))
                throw std::runtime_error("WeightTable: non-finite sample");
        }
        auto& lrow = low_[j];
        limit_[j] = w_limit_value(t);
        for (int i = 0; i < nx_low_; ++i) {
            double x = std::exp(v_low_min_ + dv_low_ * i);
            // slices with G(1/2,t) below e^{-200} of the envelope carry
            // nothing a V row-sum can see; store the limit value
            lrow[i] = (t >= 32.0) ? limit_[j] : W_shifted_folded(x, t, 0.0625, 1e-12);
            if (!std::isfinite(lrow[i]))
                throw std::runtime_error("WeightTable: non-finite sample");
        }
    });

    // Hermitian-symmetry spot check: the stored (folded) samples must agree
    // with the honest complex contour sum, imaginary residue below 1e-10.
    for (int probe = 0; probe < 16; ++probe) {
        int j = (probe * 7919) % nt_;
        int i = (probe * 104729) % nx_;
        double x = std::exp(v_min_ + dv_ * i);
        cdouble w = W_complex(x, t_step_ * j, w_contour_c(x), h).value;
        if (std::abs(w.imag()) > 1e-10 * std::max(1.0, std::abs(w.real())))
            throw std::runtime_error("WeightTable: imaginary residue above 1e-10");
        double stored = scaled_[j][i] * std::exp(-w_scale_log(x));
        if (std::abs(stored - w.real()) > 1e-10 * std::max(std::abs(w.real()), 1e-280))
            throw std::runtime_error("WeightTable: folded/complex mismatch");
    }
    built_ = true;
}

namespace {

struct CubicWeights {
    int i0;  // leftmost stencil index
    double w[4];
};

CubicWeights cubic_weights(double v, double v_min, double dv, int nx) {
    double s = (v - v_min) / dv;
    int cell = static_cast<int>(std::floor(s));
    cell = std::max(0, std::min(cell, nx - 2));
    int i0 = std::max(0, std::min(cell - 1, nx - 4));
    double th = s - i0;  // in [0,3] across the 4-point stencil
    CubicWeights cw;
    cw.i0 = i0;
    // Lagrange basis on nodes 0,1,2,3
    cw.w[0] = (th - 1.0) * (th - 2.0) * (th - 3.0) / -6.0;
    cw.w[1] = th * (th - 2.0) * (th - 3.0) / 2.0;
    cw.w[2] = th * (th - 1.0) * (th - 3.0) / -2.0;
    cw.w[3] = th * (th - 1.0) * (th - 2.0) / 6.0;
    return cw;
}

}  // namespace

double WeightTable::W_at(double x, int j) const {
    if (!built_ || j < 0 || j >= nt_) throw std::out_of_range("WeightTable::W_at");
    if (!covers(x)) throw std::out_of_range("WeightTable::W_at: x outside table");
    double v = std::log(x);
    if (v >= v_min_) {
        auto cw = cubic_weights(v, v_min_, dv_, nx_);
        const auto& row = scaled_[j];
        double s = cw.w[0] * row[cw.i0] + cw.w[1] * row[cw.i0 + 1] + cw.w[2] * row[cw.i0 + 2] +
                   cw.w[3] * row[cw.i0 + 3];
        return s * std::exp(-w_scale_log(x));
    }
    if (v >= v_low_min_) {
        auto cw = cubic_weights(v, v_low_min_, dv_low_, nx_low_);
        const auto& row = low_[j];
        return cw.w[0] * row[cw.i0] + cw.w[1] * row[cw.i0 + 1] + cw.w[2] * row[cw.i0 + 2] +
               cw.w[3] * row[cw.i0 + 3];
    }
    return limit_[j];
}

void WeightTable::W_row(double x, std::vector<double>& out) const {
    if (!built_) throw std::logic_error("WeightTable::W_row on empty table");
    if (!covers(x)) throw std::out_of_range("WeightTable::W_row: x outside table");
    out.resize(nt_);
    double v = std::log(x);
    if (v >= v_min_) {
        auto cw = cubic_weights(v, v_min_, dv_, nx_);
        double unscale = std::exp(-w_scale_log(x));
        for (int j = 0; j < nt_; ++j) {
            const auto& row = scaled_[j];
            out[j] = (cw.w[0] * row[cw.i0] + cw.w[1] * row[cw.i0 + 1] + cw.w[2] * row[cw.i0 + 2] +
                      cw.w[3] * row[cw.i0 + 3]) *
                     unscale;
        }
        return;
    }
    if (v >= v_low_min_) {
        auto cw = cubic_weights(v, v_low_min_, dv_low_, nx_low_);
        for (int j = 0; j < nt_; ++j) {
            const auto& row = low_[j];
            out[j] = cw.w[0] * row[cw.i0] + cw.w[1] * row[cw.i0 + 1] + cw.w[2] * row[cw.i0 + 2] +
                     cw.w[3] * row[cw.i0 + 3];
        }
        return;
    }
    out.assign(limit_.begin(), limit_.end());
}

double WeightTable::interp_rel_error_probe(double x, int j, const QuadratureSpec& spec) const {
    double direct = W_eval(x, t_step_ * j, spec);
    double interp = W_at(x, j);
    // Relative to the slice envelope |W(x, 0)|: near the sign-crossing zeros
    // of a deeply subdominant t-slice a pure relative error is ill-posed,
    // and the envelope is the scale the V quadrature actually sees.
    double scale = std::max({std::abs(direct), std::abs(W_at(x, 0)), 1e-280});
    return std::abs(interp - direct) / scale;
}

// t-truncation for the direct path: 40 + 4 log(1 + x/pi^4).
static double v_t_cap(double x) { return 40.0 + 4.0 * std::log1p(x / kPi4); }

// The fixed t-grid resolves the (eta/xi)^{it} phase only up to
// |log(eta/xi)| ~ 2 pi / (2 h) minus margin; beyond that an aliased ghost
// of the t = 0 mass leaks in while the true value is below 1e-15 of scale.
static constexpr double kVTableLambdaMax = 12.0;

double V_eval(double xi, double eta, double mu, const QuadratureSpec& spec,
              const WeightTable* table) {
    if (!(xi > 0.0 && eta > 0.0 && mu > 0.0))
        throw std::invalid_argument("V_eval: xi, eta, mu must be positive");
    spec.validate();
    double x = xi * eta * kPi4 / (mu * mu * mu * mu);
    double lam = std::log(eta / xi);
    if (table != nullptr && table->covers(x) && std::abs(lam) <= kVTableLambdaMax) {
        const int nt = table->t_count();
        const double h = table->t_step();
        thread_local std::vector<double> row;
        table->W_row(x, row);
        double v = row[0];
        for (int j = 1; j < nt; ++j) v += 2.0 * std::cos(lam * h * j) * row[j];
        return v * h;
    }
    // direct route: complex phase sum over W values (each W_eval asserts its
    // own imaginary contour residue below 1e-10); the step must resolve the
    // phase
    double h = std::min({spec.initial_step, 0.25, M_PI / (std::abs(lam) + 10.0)});
    double cap = v_t_cap(x);
    long K = std::lround(std::ceil(cap / h));
    cdouble sum = 0.0;
    double abssum = 0.0;
    for (long k = -K; k <= K; ++k) {
        double t = h * static_cast<double>(k);
        cdouble term = std::exp(cdouble(0.0, lam * t)) * W_eval(x, t, spec);
        sum += term;
        abssum += std::abs(term);
    }
    cdouble v = sum * h;
    if (std::abs(v.imag()) > 1e-10 * std::max(1.0, abssum * h))
        throw std::runtime_error("V_eval: imaginary residue above 1e-10");
    return v.real();
}

namespace {

// V with two short circuits for the bulk transforms: the saddle envelope
// e^{-8 x^{1/4}} kills x beyond the table, and for |log(eta/xi)| past the
// grid's phase resolution the true value is below 1e-15 of scale.
double V_lookup(double xi, double eta, double mu, const QuadratureSpec& spec,
                const WeightTable* table) {
    double x = xi * eta * kPi4 / (mu * mu * mu * mu);
    if (std::abs(std::log(eta / xi)) > kVTableLambdaMax) return 0.0;
    if (table != nullptr && table->covers(x)) return V_eval(xi, eta, mu, spec, table);
    if (x > kVNegligibleX) return 0.0;
    return V_eval(xi, eta, mu, spec, nullptr);
}

}  // namespace

double w_pm(double x, double y, double u, int sign, const QuadratureSpec& spec,
            const WeightTable* table) {
    if (!(x > 0.0 && y > 0.0 && u > 0.0))
        throw std::invalid_argument("w_pm: x, y, u must be positive");
    double pm = sign >= 0 ? x + y : std::abs(x - y);
    double w = u * pm;
    if (w <= 1.0 || w >= 2.0) return 0.0;
    return w * psi(w) * V_lookup(x, y, w, spec, table);
}

cdouble mellin_w1_pm(double x, double y, cdouble z, int sign, const QuadratureSpec& spec,
                     const WeightTable* table) {
    if (!(x > 0.0 && y > 0.0)) throw std::invalid_argument("mellin_w1: x, y must be positive");
    double pm = sign >= 0 ? x + y : std::abs(x - y);
    if (pm == 0.0) return 0.0;  // Wminus vanishes identically at x = y
    // int Wpm u^{z-1} du = |x+-y|^{-z} int_1^2 Psi(w) V(x,y;w) w^z dw
    // (w = u|x+-y| absorbs the leading u|x+-y| of Wpm against du/u).
    // Fixed grid: Psi kills the endpoints so the trapezoid is spectrally
    // accurate, and the V values carry the table's interpolation floor that
    // adaptive refinement could not push below anyway.
    const int nw = 128;
    const double hw = 1.0 / nw;
    cdouble body = 0.0;
    for (int i = 1; i < nw; ++i) {
        double w = 1.0 + hw * i;
        body += psi(w) * V_lookup(x, y, w, spec, table) * std::exp(z * std::log(w));
    }
    body *= hw;
    return std::exp(-z * std::log(pm)) * body;
}

cdouble mellin_w1(double x, double y, cdouble z, const QuadratureSpec& spec,
                  const WeightTable* table) {
    return mellin_w1_pm(x, y, z, +1, spec, table) + mellin_w1_pm(x, y, z, -1, spec, table);
}

namespace {

// Step for the inner x-integrals of W2 in log coordinates; tracks the
// oscillation frequency of x^{i Im s}.
double w2_step(cdouble s1, cdouble s2) {
    double f = 1.0 + std::abs(s1.imag()) + std::abs(s2.imag());
    return std::min(0.04, 1.2 / f);
}

}  // namespace

cdouble mellin_w2_pm(cdouble s1, cdouble s2, double u, int sign, const QuadratureSpec& spec,
                     const WeightTable* table) {
    if (!(s1.real() > 0.0 && s2.real() > 0.0 && s1.real() <= 100.0 && s2.real() <= 100.0))
        throw std::invalid_argument("mellin_w2: need 0 < Re s1, Re s2 <= 100");
    if (!(u > 0.0)) throw std::invalid_argument("mellin_w2: u must be positive");
    double hx = w2_step(s1, s2);
    double smin = std::min(s1.real(), s2.real());

    auto inner = [&](double w) -> cdouble {
        double p = psi(w);
        if (p == 0.0) return 0.0;
        double B = w / u;
        cdouble acc = 0.0;
        if (sign >= 0) {
            // x = B sigma, y = B(1 - sigma); the sigma in (0,1/2] half twice,
            // once as written and once with s1 <-> s2 (V is symmetric).
            double om_min = -14.0 * M_LN10 / smin - 1.0;
            for (double om = std::log(0.5); om > om_min; om -= hx) {
                double sg = std::exp(om);
                double a = V_lookup(B * sg, B * (1.0 - sg), w, spec, table);
                if (a == 0.0) continue;
                cdouble t1 = std::exp(s1 * om + (s2 - 1.0) * std::log1p(-sg));
                cdouble t2 = std::exp(s2 * om + (s1 - 1.0) * std::log1p(-sg));
                acc += (t1 + t2) * a;
            }
            acc *= hx * std::exp((s1 + s2 - 1.0) * std::log(B));
        } else {
            // y = x + C plus the mirrored branch (s1 <-> s2), C = w/u.
            double C = B;
            double rt = 14.0 * M_LN10 * w + std::sqrt(C);
            double xcut = rt * rt - C;
            double om_min = -14.0 * M_LN10 / smin - 1.0;
            for (double om = std::log(xcut); om > om_min; om -= hx) {
                double xx = std::exp(om);
                double a = V_lookup(xx, xx + C, w, spec, table);
                if (a == 0.0) continue;
                cdouble t1 = std::exp(s1 * om + (s2 - 1.0) * std::log(xx + C));
                cdouble t2 = std::exp(s2 * om + (s1 - 1.0) * std::log(xx + C));
                acc += (t1 + t2) * a;
            }
            acc *= hx;
        }
        return acc * (p * w / u);
    };

    // w in [1,2] on a fixed grid: Psi kills the endpoints so the trapezoid
    // is spectrally accurate, and the inner integrals have their own fixed
    // resolution that adaptive refinement here could not improve on.
    const int nw = 64;
    const double hw = 1.0 / nw;
    cdouble acc = 0.0;
    for (int i = 1; i < nw; ++i) acc += inner(1.0 + hw * i);
    return acc * hw;
}

cdouble mellin_w2(cdouble s1, cdouble s2, double u, const QuadratureSpec& spec,
                  const WeightTable* table) {
    return mellin_w2_pm(s1, s2, u, +1, spec, table) + mellin_w2_pm(s1, s2, u, -1, spec, table);
}

cdouble mellin_w3_closed(cdouble s1, cdouble s2, cdouble z, const QuadratureSpec& spec) {
    if (!(s1.real() > 0.0 && s2.real() > 0.0))
        throw std::invalid_argument("mellin_w3: need Re s1, Re s2 > 0");
    if (!(std::abs(s1.real() - s2.real()) < z.real() && z.real() < 1.0))
        throw std::invalid_argument("mellin_w3: need |Re(s1-s2)| < Re z < 1");
    cdouble omega = 0.5 * (s1 + s2 - z);
    cdouble xi = 0.5 * (s1 - s2 + z);
    if (std::abs(omega) < 1e-8)
        throw std::invalid_argument("mellin_w3: omega at the 1/(2 omega) pole");
    auto f = [&](double t) -> cdouble {
        return special::H_func(xi - cdouble(0.0, t), z) *
               special::G_kernel(cdouble(0.5, 0.0) + omega, cdouble(t, 0.0));
    };
    auto q = integrate_refined(f, -spec.truncation_radius, spec.truncation_radius, spec);
    cdouble pref = psi_mellin(1.0 + 4.0 * omega + z, spec) /
                   (2.0 * omega * std::exp(4.0 * omega * std::log(M_PI)));
    return pref * q.value;
}

}  // namespace moment8::weights
