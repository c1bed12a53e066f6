#include "moment8/moments.hpp"

#include <cmath>
#include <stdexcept>

#include "moment8/lfunc.hpp"
#include "moment8/special.hpp"

namespace moment8::moments {

namespace {

constexpr double kPi4 = 97.409091034002437236440332688705;
constexpr double k16Fact = 20922789888000.0;

double lambda8_integrand(const DirichletCharacter& chi, double t) {
    double g = std::exp(8.0 * special::log_gamma(cdouble(0.25, 0.5 * t)).real());
    if (g < 1e-290) return 0.0;
    cdouble L = lfunc::L_eval(chi, cdouble(0.5, t));
    double aL = std::abs(L);
    return g * aL * aL * aL * aL * aL * aL * aL * aL;
}

}  // namespace

double lambda8_integral(const DirichletCharacter& chi, const QuadratureSpec& spec) {
    if (!chi.is_primitive || !chi.even)
        throw std::invalid_argument("lambda8_integral: character must be primitive and even");
    spec.validate();
    double R = std::min(spec.truncation_radius, 40.0);
    QuadratureSpec inner = spec;
    inner.rel_tol = std::max(spec.rel_tol, 1e-9);
    inner.abs_tol = std::max(spec.abs_tol, 1e-13);
    auto f = [&](double t) { return lambda8_integrand(chi, t); };
    auto q = integrate_refined(f, -R, R, inner);
    return q.value;
}

std::int64_t afe_limit(std::int64_t q, double target) {
    // smallest limit with exp(-(limit^2/q^4)^{1/4}) < target / (C (log limit)^4 limit)
    double C = weights::kVDecayConstant;
    double q4 = std::pow(static_cast<double>(q), 4);
    for (std::int64_t limit = 16;; limit *= 2) {
        double lg = std::log(static_cast<double>(limit));
        double lhs = std::exp(-std::pow(limit * static_cast<double>(limit) / q4, 0.25));
        if (lhs < target / (C * lg * lg * lg * lg * static_cast<double>(limit))) {
            // binary refine within [limit/2, limit]
            std::int64_t lo = limit / 2, hi = limit;
            while (lo + 1 < hi) {
                std::int64_t mid = (lo + hi) / 2;
                double lgm = std::log(static_cast<double>(mid));
                double l = std::exp(-std::pow(mid * static_cast<double>(mid) / q4, 0.25));
                if (l < target / (C * lgm * lgm * lgm * lgm * static_cast<double>(mid)))
                    hi = mid;
                else
                    lo = mid;
            }
            return hi;
        }
        if (limit > (1LL << 40)) throw std::runtime_error("afe_limit: no limit satisfies the target");
    }
}

AfeCheck afe_rhs(const DirichletCharacter& chi, std::int64_t limit, const QuadratureSpec& spec,
                 const weights::WeightTable& table, const arith::MultiplicativeTable& tbl) {
    if (!chi.is_primitive || !chi.even)
        throw std::invalid_argument("afe_rhs: character must be primitive and even");
    if (tbl.limit < limit) throw std::invalid_argument("afe_rhs: tau4 table too small");
    spec.validate();
    std::int64_t q = chi.modulus;
    double qd = static_cast<double>(q);
    double q4 = qd * qd * qd * qd;

    // terms with x = m n pi^4 / q^4 beyond the saddle-envelope cutoff are
    // below 1e-21 and skipped; the table must cover everything kept
    double x_cut = weights::kVNegligibleX;
    double x_corner =
        std::min(x_cut, static_cast<double>(limit) * static_cast<double>(limit) * kPi4 / q4);
    if (!table.covers(x_corner))
        throw std::invalid_argument("afe_rhs: weight table does not cover the (m,n) range");

    const int nt = table.t_count();
    const double ht = table.t_step();
    std::vector<double> row;
    std::vector<double> lognv(limit + 1);
    for (std::int64_t n = 1; n <= limit; ++n) lognv[n] = std::log(static_cast<double>(n));

    cdouble total = 0.0;
    double absmass = 0.0;
    for (std::int64_t m = 1; m <= limit; ++m) {
        if (chi(m) == cdouble(0.0, 0.0)) continue;
        double tm = static_cast<double>(tbl.tau4[m]);
        std::int64_t n_cut = static_cast<std::int64_t>(x_cut * q4 / (kPi4 * static_cast<double>(m)));
        for (std::int64_t n = 1; n <= std::min(limit, n_cut); ++n) {
            cdouble cn = chi(n);
            if (cn == cdouble(0.0, 0.0)) continue;
            double x = static_cast<double>(m) * static_cast<double>(n) * kPi4 / q4;
            double lam = lognv[n] - lognv[m];
            if (std::abs(lam) > 12.0) continue;  // phase beyond the grid; |V| < 1e-15 scale
            table.W_row(x, row);
            double V = row[0];
            for (int j = 1; j < nt; ++j) V += 2.0 * std::cos(lam * ht * j) * row[j];
            V *= ht;
            double coef = tm * static_cast<double>(tbl.tau4[n]) /
                          std::sqrt(static_cast<double>(m) * static_cast<double>(n));
            cdouble term = coef * chi(m) * std::conj(cn) * V;
            total += term;
            absmass += std::abs(term);
        }
    }
    if (std::abs(total.imag()) > 1e-9 * std::max(1.0, absmass))
        throw std::runtime_error("afe_rhs: imaginary part above 1e-9 (sum must be Hermitian)");

    AfeCheck out;
    out.q = q;
    out.char_index = chi.index;
    out.rhs = 2.0 * total.real();
    out.limit = limit;
    // decay-bound envelope at the truncation corner, with the frozen constant
    out.tail_estimate =
        weights::kVDecayConstant *
        std::exp(-std::pow(static_cast<double>(limit) * static_cast<double>(limit) / q4, 0.25));
    return out;
}

namespace {

std::int64_t q_low(double Q) { return static_cast<std::int64_t>(std::floor(Q)) + 1; }
std::int64_t q_high(double Q) {
    double top = 2.0 * Q;
    std::int64_t h = static_cast<std::int64_t>(std::ceil(top)) - 1;
    return h;
}

}  // namespace

MomentReport lhs_moment(double Q, const QuadratureSpec& spec) {
    if (!(Q >= 4.0 && Q <= 64.0)) throw std::invalid_argument("lhs_moment: Q in [4, 64] (desk scale)");
    spec.validate();
    MomentReport rep;
    rep.Q = Q;
    rep.t_radius = std::min(spec.truncation_radius, 40.0);
    for (std::int64_t q = q_low(Q); q <= q_high(Q); ++q) {
        double w = weights::psi(static_cast<double>(q) / Q);
        auto G = chars::build_group(q);
        if (G.phi_flat == 0) continue;
        PerQEntry e;
        e.q = q;
        e.phi_flat = G.phi_flat;
        e.psi_weight = w;
        // conjugate characters have equal integrals (t -> -t), so compute
        // once per conjugate pair
        std::vector<int> done(G.characters.size(), 0);
        for (const auto& chi : G.characters) {
            if (!chi.is_primitive || !chi.even || done[chi.index]) continue;
            int conj_index = -1;
            if (!chi.is_real()) {
                for (const auto& other : G.characters) {
                    if (other.index == chi.index || !other.is_primitive || !other.even) continue;
                    bool isconj = true;
                    for (std::int64_t n = 0; n < G.modulus && isconj; ++n)
                        if (std::abs(other.values[n] - std::conj(chi.values[n])) > 1e-9) isconj = false;
                    if (isconj) { conj_index = other.index; break; }
                }
            }
            double v = lambda8_integral(chi, spec);
            done[chi.index] = 1;
            e.lambda8_sum += v;
            if (conj_index >= 0 && !done[conj_index]) {
                done[conj_index] = 1;
                e.lambda8_sum += v;
            }
        }
        rep.per_q.push_back(e);
        if (w > 0.0) rep.lhs_total += w * e.lambda8_sum;
    }
    return rep;
}

double main_term(double Q, const QuadratureSpec& spec) {
    if (!(Q >= 4.0 && Q <= 64.0)) throw std::invalid_argument("main_term: Q in [4, 64] (desk scale)");
    spec.validate();
    double a4 = arith::to_double(arith::euler_constant(arith::EulerKind::a4, 100000).value);
    double g8 = special::gamma8_integral(spec).value;
    double sum = 0.0;
    for (std::int64_t q = q_low(Q); q <= q_high(Q); ++q) {
        double w = weights::psi(static_cast<double>(q) / Q);
        if (w == 0.0) continue;
        std::int64_t pf = chars::phi_flat_formula(q);
        if (pf == 0) continue;
        double lq = std::log(static_cast<double>(q));
        double l16 = std::pow(lq, 16);
        sum += w * arith::local_factor_q(q) * static_cast<double>(pf) * l16 / k16Fact;
    }
    return 24024.0 * a4 * sum * g8;
}

MomentReport moment_report(double Q, const QuadratureSpec& spec) {
    MomentReport rep = lhs_moment(Q, spec);
    rep.main_term = main_term(Q, spec);
    rep.ratio = rep.main_term > 0.0 ? rep.lhs_total / rep.main_term : 0.0;
    rep.tail_estimate = std::exp(-2.0 * M_PI * rep.t_radius);  // Gamma-decay envelope
    return rep;
}

double diagonal_constant(double Q, const QuadratureSpec& spec, std::int64_t prime_cutoff) {
    if (!(Q > 1.0)) throw std::invalid_argument("diagonal_constant: Q > 1 required");
    spec.validate();
    double lead = 65536.0 * Q * Q * std::pow(std::log(Q), 16) / k16Fact;
    double psi2 = weights::psi_mellin(cdouble(2.0, 0.0), spec).real();
    double calA = arith::to_double(arith::euler_constant(arith::EulerKind::calA, prime_cutoff).value);
    double prod = 1.0;
    for (std::int64_t p : arith::primes_up_to(prime_cutoff)) {
        double dp = static_cast<double>(p);
        double bp = arith::to_double(arith::bp_local(p, 200).value);
        prod *= (1.0 - 1.0 / dp) *
                (1.0 + (1.0 / bp) * (1.0 / dp - 1.0 / (dp * dp) - 1.0 / (dp * dp * dp)));
    }
    double g8 = special::gamma8_integral(spec).value;
    return lead * psi2 * 0.5 * calA * prod * g8;
}

double large_sieve_ratio(std::int64_t Q, double T, const std::vector<cdouble>& coeffs,
                         const QuadratureSpec& spec) {
    if (coeffs.empty()) throw std::invalid_argument("large_sieve_ratio: empty coefficient vector");
    bool nonzero = false;
    for (const auto& a : coeffs)
        if (a != cdouble(0.0, 0.0)) nonzero = true;
    if (!nonzero) throw std::invalid_argument("large_sieve_ratio: all-zero coefficient vector");
    if (!(Q >= 1) || !(T > 0.0)) throw std::invalid_argument("large_sieve_ratio: need Q >= 1, T > 0");
    spec.validate();

    size_t N = coeffs.size();  // coeffs[0] is a_1
    std::vector<double> logn(N + 1);
    for (size_t n = 1; n <= N; ++n) logn[n] = std::log(static_cast<double>(n));

    long K = std::lround(std::ceil(T / std::min(spec.initial_step, 0.05)));
    double h = T / static_cast<double>(K);
    double lhs = 0.0;
    std::vector<cdouble> b(N + 1);
    for (std::int64_t q = 1; q <= Q; ++q) {
        auto G = chars::build_group(q);
        double qphi = static_cast<double>(q) / static_cast<double>(G.phi);
        for (const auto& chi : G.characters) {
            if (!chi.is_primitive) continue;
            for (size_t n = 1; n <= N; ++n) b[n] = coeffs[n - 1] * chi(static_cast<std::int64_t>(n));
            // trapezoid over [-T, T] of |sum b_n n^{it}|^2
            double acc = 0.0;
            for (long k = -K; k <= K; ++k) {
                double t = h * static_cast<double>(k);
                cdouble P = 0.0;
                for (size_t n = 1; n <= N; ++n) {
                    if (b[n] == cdouble(0.0, 0.0)) continue;
                    P += b[n] * std::exp(cdouble(0.0, t * logn[n]));
                }
                double v = std::norm(P);
                acc += (k == -K || k == K) ? 0.5 * v : v;
            }
            lhs += qphi * acc * h;
        }
    }

    double rhs = 0.0;
    for (size_t n = 1; n <= N; ++n)
        rhs += (static_cast<double>(Q) * static_cast<double>(Q) * T + static_cast<double>(n)) *
               std::norm(coeffs[n - 1]);
    return lhs / rhs;
}

}  // namespace moment8::moments
