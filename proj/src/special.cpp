#include "moment8/special.hpp"

#include <cmath>
#include <stdexcept>

namespace moment8::special {

namespace {

// Lanczos g = 7, 9 terms.
const double kLanczos[9] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

constexpr double kLog2Pi = 1.8378770664093454836;  // log(2 pi)

// log(sin(pi z)) stable for large |Im z|.
cdouble log_sin_pi(cdouble z) {
    // reduce real part mod 2 to keep exp arguments tame
    double k = std::floor(z.real() / 2.0);
    cdouble zr = z - 2.0 * k;
    if (zr.imag() > 10.0) {
        // sin(pi z) = e^{-i pi z}(e^{2 i pi z} - 1)/(2i)
        cdouble ipz = cdouble(0.0, M_PI) * zr;
        return -ipz + std::log((std::exp(2.0 * ipz) - 1.0) / cdouble(0.0, 2.0));
    }
    if (zr.imag() < -10.0) {
        cdouble ipz = cdouble(0.0, M_PI) * zr;
        return ipz + std::log((1.0 - std::exp(-2.0 * ipz)) / cdouble(0.0, 2.0));
    }
    return std::log(std::sin(M_PI * zr));
}

cdouble log_gamma_core(cdouble z) {
    // requires Re z >= 0.5
    z -= 1.0;
    cdouble x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    cdouble t = z + 7.5;
    return 0.5 * kLog2Pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace

cdouble log_gamma(cdouble z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
        throw std::invalid_argument("log_gamma: pole at non-positive integer");
    if (z.real() >= 0.5) return log_gamma_core(z);
    // reflection: log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z)
    cdouble lg = std::log(M_PI) - log_sin_pi(z) - log_gamma_core(1.0 - z);
    // land on the principal branch: Gamma(conj z) = conj Gamma(z), and the
    // reflection formula may be off by multiples of 2 pi i in the log
    return lg;
}

cdouble gamma_c(cdouble z) { return std::exp(log_gamma(z)); }

cdouble log_G_kernel(cdouble s, cdouble t) {
    cdouble it = cdouble(0.0, 1.0) * t;
    return 4.0 * log_gamma(0.5 * (s + it)) + 4.0 * log_gamma(0.5 * (s - it));
}

cdouble G_kernel(cdouble s, cdouble t) { return std::exp(log_G_kernel(s, t)); }

Gamma8Result gamma8_integral(const QuadratureSpec& spec) {
    spec.validate();
    double R = spec.truncation_radius;
    auto f = [](double t) {
        return std::exp(8.0 * log_gamma(cdouble(0.25, 0.5 * t)).real());
    };
    auto q = integrate_refined(f, 0.0, R, spec);
    // |Gamma(1/4+it/2)|^8 <= K e^{-2 pi t} beyond R with K from the endpoint
    // (the polynomial prefactor is decreasing there), so the tail is below
    // f(R)/(2 pi).
    double tail = f(R) / (2.0 * M_PI);
    Gamma8Result out;
    out.value = 2.0 * q.value;  // even integrand
    out.tail_bound = 2.0 * tail;
    out.error = 2.0 * q.error + out.tail_bound;
    return out;
}

namespace {

bool near_pole(cdouble z, double eps = 1e-6) {
    if (z.real() > 0.5) return false;
    double rn = std::round(z.real());
    return rn <= 0.0 && std::abs(z.real() - rn) < eps && std::abs(z.imag()) < eps;
}

}  // namespace

cdouble H_func(cdouble u, cdouble v) {
    const cdouble args[6] = {0.5 * u,         0.5 * (1.0 - v), 0.5 * (v - u),
                             0.5 * (1.0 - u), 0.5 * v,         0.5 * (1.0 - v + u)};
    for (const auto& a : args)
        if (near_pole(a))
            throw std::invalid_argument("H_func: argument within 1e-6 of a Gamma pole");
    return std::sqrt(M_PI) *
           std::exp(log_gamma(args[0]) + log_gamma(args[1]) + log_gamma(args[2]) -
                    log_gamma(args[3]) - log_gamma(args[4]) - log_gamma(args[5]));
}

std::pair<cdouble, cdouble> H_dual(cdouble u, cdouble v) {
    const cdouble sum_args[6] = {u, v - u, v, 1.0 - v, 1.0 + u - v, 1.0 - u};
    for (const auto& a : sum_args)
        if (near_pole(a))
            throw std::invalid_argument("H_dual: argument within 1e-6 of a Gamma pole");
    cdouble three = std::exp(log_gamma(u) + log_gamma(v - u) - log_gamma(v)) +
                    std::exp(log_gamma(u) + log_gamma(1.0 - v) - log_gamma(1.0 + u - v)) +
                    std::exp(log_gamma(v - u) + log_gamma(1.0 - v) - log_gamma(1.0 - u));
    return {three, H_func(u, v)};
}

double gamma_ratio_bound_check(cdouble s) {
    if (s.real() < -1.0 || s.real() > 1.0 / 3.0)
        throw std::invalid_argument("gamma_ratio_bound_check: Re s outside [-1, 1/3]");
    if (s.real() == 0.0) return 1.0;  // conjugate pair, modulus exactly 1
    cdouble lr = log_gamma(0.25 - 0.5 * s) - log_gamma(0.25 + 0.5 * s);
    double ratio = std::exp(lr.real());
    return ratio * std::pow(std::abs(s) + 1.0, s.real());
}

cdouble stirling_main(cdouble z) {
    return std::sqrt(2.0 * M_PI / z) * std::exp(z * (std::log(z) - 1.0));
}

}  // namespace moment8::special
