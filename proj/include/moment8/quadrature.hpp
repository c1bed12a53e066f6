#ifndef MOMENT8_QUADRATURE_HPP
#define MOMENT8_QUADRATURE_HPP

// Shared quadrature engine: trapezoid with step-halving refinement.
// The integrands here are analytic and exponentially decaying on the
// integration lines, where the trapezoid rule converges geometrically.

#include <cmath>
#include <complex>
#include <stdexcept>

namespace moment8 {

struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    double initial_step = 0.25;
    double truncation_radius = 40.0;
    int max_refinements = 12;

    void validate() const {
        if (abs_tol <= 0 || rel_tol <= 0 || initial_step <= 0 || truncation_radius <= 0 ||
            max_refinements < 0)
            throw std::invalid_argument("QuadratureSpec: tolerances, step and radius must be positive");
    }
};

template <typename T>
struct QuadResult {
    T value{};
    double error = 0.0;   // |last refinement delta|
    int refinements = 0;
};

// Trapezoid on [a, b] with step halving until the refinement delta is
// below max(abs_tol, rel_tol * |value|). Throws if max_refinements is
// exhausted without convergence.
template <typename F>
auto integrate_refined(F&& f, double a, double b, const QuadratureSpec& spec)
    -> QuadResult<decltype(f(0.0))> {
    using T = decltype(f(0.0));
    spec.validate();
    double len = b - a;
    long n = std::max(2L, std::lround(std::ceil(len / spec.initial_step)));
    double h = len / static_cast<double>(n);
    T sum = 0.5 * (f(a) + f(b));
    for (long i = 1; i < n; ++i) sum += f(a + h * static_cast<double>(i));
    T value = sum * h;

    QuadResult<T> out;
    for (int level = 1; level <= spec.max_refinements; ++level) {
        T mid = T{};
        for (long i = 0; i < n; ++i) mid += f(a + h * (static_cast<double>(i) + 0.5));
        sum += mid;
        n *= 2;
        h *= 0.5;
        T next = sum * h;
        double delta = std::abs(next - value);
        value = next;
        out.value = value;
        out.error = delta;
        out.refinements = level;
        if (delta <= std::max(spec.abs_tol, spec.rel_tol * std::abs(value))) return out;
    }
    throw std::runtime_error("integrate_refined: no convergence within max_refinements");
}

}  // namespace moment8

#endif
