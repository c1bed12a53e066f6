#include "moment8/lfunc.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "moment8/special.hpp"

namespace moment8::lfunc {

namespace {

const double kBern2k[12] = {1.0 / 6,       -1.0 / 30,       1.0 / 42,       -1.0 / 30,
                            5.0 / 66,      -691.0 / 2730,   7.0 / 6,        -3617.0 / 510,
                            43867.0 / 798, -174611.0 / 330, 854513.0 / 138, -236364091.0 / 2730};

}  // namespace

cdouble hurwitz_zeta(cdouble s, double a, int em_terms) {
    if (!(a > 0.0 && a <= 1.0)) throw std::invalid_argument("hurwitz_zeta: need a in (0,1]");
    if (s == cdouble(1.0, 0.0)) throw std::invalid_argument("hurwitz_zeta: pole at s = 1");
    if (em_terms < 1 || em_terms > 12)
        throw std::invalid_argument("hurwitz_zeta: em_terms in [1,12]");
    int N = std::max(12, static_cast<int>(std::ceil(1.3 * std::abs(s.imag()))));
    cdouble sum = 0.0;
    for (int n = 0; n < N; ++n) sum += std::exp(-s * std::log(n + a));
    double Na = N + a;
    cdouble lNa = std::log(Na);
    sum += std::exp((1.0 - s) * lNa) / (s - 1.0);
    sum += 0.5 * std::exp(-s * lNa);
    cdouble poch = s;
    double fact = 2.0;
    for (int k = 1; k <= em_terms; ++k) {
        sum += kBern2k[k - 1] / fact * poch * std::exp((-s - (2.0 * k - 1.0)) * lNa);
        poch *= (s + cdouble(2.0 * k - 1.0, 0.0)) * (s + cdouble(2.0 * k, 0.0));
        fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
    }
    return sum;
}

cdouble L_eval(const DirichletCharacter& chi, cdouble s, int em_terms) {
    std::int64_t q = chi.modulus;
    if (chi.is_principal() && s == cdouble(1.0, 0.0))
        throw std::invalid_argument("L_eval: pole of the principal L at s = 1");
    if (q == 1) return hurwitz_zeta(s, 1.0, em_terms);
    cdouble sum = 0.0;
    for (std::int64_t a = 1; a <= q; ++a) {
        if (chi.values[a % q] == cdouble(0.0, 0.0)) continue;
        sum += chi.values[a % q] * hurwitz_zeta(s, static_cast<double>(a) / q, em_terms);
    }
    return std::exp(-s * std::log(static_cast<double>(q))) * sum;
}

cdouble lambda_eval(const DirichletCharacter& chi, cdouble s) {
    if (!chi.is_primitive || !chi.even)
        throw std::invalid_argument("lambda_eval: character must be primitive and even");
    double q = static_cast<double>(chi.modulus);
    cdouble pref = std::exp(0.5 * s * std::log(q / M_PI) + special::log_gamma(0.25 + 0.5 * s));
    return pref * L_eval(chi, 0.5 + s);
}

namespace {

DirichletCharacter conjugate_character(const DirichletCharacter& chi) {
    DirichletCharacter bar = chi;
    for (auto& v : bar.values) v = std::conj(v);
    return bar;
}

}  // namespace

double fe_residual(const DirichletCharacter& chi, cdouble s, double floor) {
    cdouble lhs = lambda_eval(chi, s);
    DirichletCharacter bar = conjugate_character(chi);
    cdouble rhs = chars::root_number(chi) * lambda_eval(bar, -s);
    return std::abs(lhs - rhs) / std::max(std::abs(lhs), floor);
}

cdouble F_factor(const DirichletCharacter& chi, cdouble s) {
    if (!chi.is_primitive || !chi.even)
        throw std::invalid_argument("F_factor: character must be primitive and even");
    cdouble eps = chars::root_number(chi);
    cdouble eps4 = eps * eps * eps * eps;
    double q = static_cast<double>(chi.modulus);
    cdouble lg = 4.0 * special::log_gamma(0.25 - 0.5 * s) - 4.0 * special::log_gamma(0.25 + 0.5 * s);
    return eps4 * std::exp(4.0 * s * std::log(M_PI / q) + lg);
}

std::int64_t ramachandra_j1_cutoff(double X) {
    return static_cast<std::int64_t>(std::ceil(-std::log(1e-18) * X));
}

RamachandraTerms ramachandra_terms(const DirichletCharacter& chi, double c, double t, double X,
                                   const QuadratureSpec& spec,
                                   const arith::MultiplicativeTable& tbl) {
    if (chi.modulus < 2)
        throw std::invalid_argument(
            "ramachandra_terms: q >= 2 required (the q = 1 residue term is out of scope)");
    if (!chi.is_primitive || !chi.even)
        throw std::invalid_argument("ramachandra_terms: character must be primitive and even");
    if (!(c >= 0.0 && c <= 0.01)) throw std::invalid_argument("ramachandra_terms: c in [0, 1/100]");
    if (!(X > 0.0)) throw std::invalid_argument("ramachandra_terms: X must be positive");
    spec.validate();

    std::int64_t n1 = ramachandra_j1_cutoff(X);
    std::int64_t nX = static_cast<std::int64_t>(std::floor(X));
    if (tbl.limit < n1)
        throw std::invalid_argument("ramachandra_terms: tau4 table too small for the smoothed sum");

    DirichletCharacter bar = conjugate_character(chi);
    cdouble s0(0.5 + c, t);  // 1/2 + c + it

    RamachandraTerms out;

    // J1 = sum tau4(n) chi(n) e^{-n/X} n^{-s0}
    out.J1 = 0.0;
    for (std::int64_t n = 1; n <= n1; ++n) {
        if (chi(n) == cdouble(0.0, 0.0)) continue;
        out.J1 += static_cast<double>(tbl.tau4[n]) * chi(n) *
                  std::exp(-static_cast<double>(n) / X - s0 * std::log(static_cast<double>(n)));
    }

    // Partial sums sum_{n<=X} tau4(n) conj-chi(n) n^{-(1/2-c-it)+w}: w = 0 in
    // J2 and a line variable inside J3/J4.
    cdouble sref = cdouble(0.5 - c, -t);  // 1/2 - c - it
    auto partial_sum = [&](cdouble w) {
        cdouble acc = 0.0;
        for (std::int64_t n = 1; n <= nX; ++n) {
            if (bar(n) == cdouble(0.0, 0.0)) continue;
            acc += static_cast<double>(tbl.tau4[n]) * bar(n) *
                   std::exp((w - sref) * std::log(static_cast<double>(n)));
        }
        return acc;
    };

    out.J2 = F_factor(chi, cdouble(c, t)) * partial_sum(0.0);

    // J3 on Re w = -3/4: the n > X tail converges absolutely there and
    // equals L(1/2-c-it-w, bar chi)^4 minus the partial sum.
    // J4 on Re w = 1/4: the partial sum itself.
    double Tw = std::min(spec.truncation_radius, 40.0);
    double hw = 0.02;
    auto line_integral = [&](double re_w, bool tail_side) {
        cdouble acc = 0.0;
        long K = std::lround(Tw / hw);
        for (long k = -K; k <= K; ++k) {
            cdouble w(re_w, hw * static_cast<double>(k));
            cdouble F = F_factor(chi, cdouble(c, t) + w);
            cdouble inner;
            if (tail_side) {
                cdouble L = L_eval(bar, sref - w);
                inner = L * L * L * L - partial_sum(w);
            } else {
                inner = partial_sum(w);
            }
            acc += F * inner * std::exp(special::log_gamma(w) + w * std::log(X));
        }
        return acc * hw / (2.0 * M_PI);  // (1/2 pi i) int ... i du
    };
    out.J3 = line_integral(-0.75, true);
    out.J4 = line_integral(0.25, false);
    out.J5 = 0.0;  // q >= 2
    return out;
}

cdouble ramachandra_j4_line(const DirichletCharacter& chi, double c, double t, double X,
                            double re_w, const QuadratureSpec& spec,
                            const arith::MultiplicativeTable& tbl) {
    if (!(re_w > 0.0 && re_w < 0.5))
        throw std::invalid_argument("ramachandra_j4_line: need Re w in (0, 1/2)");
    spec.validate();
    std::int64_t nX = static_cast<std::int64_t>(std::floor(X));
    if (tbl.limit < nX) throw std::invalid_argument("ramachandra_j4_line: tau4 table too small");
    DirichletCharacter bar = chi;
    for (auto& v : bar.values) v = std::conj(v);
    cdouble sref = cdouble(0.5 - c, -t);
    double Tw = std::min(spec.truncation_radius, 40.0);
    double hw = 0.02;
    cdouble acc = 0.0;
    long K = std::lround(Tw / hw);
    for (long k = -K; k <= K; ++k) {
        cdouble w(re_w, hw * static_cast<double>(k));
        cdouble inner = 0.0;
        for (std::int64_t n = 1; n <= nX; ++n) {
            if (bar(n) == cdouble(0.0, 0.0)) continue;
            inner += static_cast<double>(tbl.tau4[n]) * bar(n) *
                     std::exp((w - sref) * std::log(static_cast<double>(n)));
        }
        acc += F_factor(chi, cdouble(c, t) + w) * inner *
               std::exp(special::log_gamma(w) + w * std::log(X));
    }
    return acc * hw / (2.0 * M_PI);
}

}  // namespace moment8::lfunc
