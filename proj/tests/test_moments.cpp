#include "doctest.h"

#include <cmath>
#include <numeric>

#include "moment8/lfunc.hpp"
#include "moment8/moments.hpp"
#include "moment8/special.hpp"
#include "table_fixture.hpp"

using namespace moment8;
using cdouble = std::complex<double>;

namespace {

const chars::DirichletCharacter& quad_char_mod5() {
    static chars::CharacterGroup g5 = chars::build_group(5);
    for (const auto& chi : g5.characters)
        if (chi.is_primitive && chi.even) return chi;
    throw std::logic_error("no primitive even character mod 5");
}

}  // namespace

TEST_CASE("lambda8_integral") {
    const auto& spec = fixture_spec();
    const auto& chi = quad_char_mod5();
    double v = moments::lambda8_integral(chi, spec);
    CHECK(v > 0.0);

    QuadratureSpec finer = spec;
    finer.initial_step = spec.initial_step / 2.0;
    double v2 = moments::lambda8_integral(chi, finer);
    CHECK(std::abs(v - v2) < 1e-8 * v);

    auto g4 = chars::build_group(4);
    CHECK_THROWS_AS(moments::lambda8_integral(g4.principal(), spec), std::invalid_argument);
}

TEST_CASE("AFE identity at q = 5 (reduced limit; acceptance runs 1500)") {
    const auto& spec = fixture_spec();
    const auto& tab = fixture_table();
    const auto& chi = quad_char_mod5();
    auto tbl = arith::sieve_tables(800);

    auto check = moments::afe_rhs(chi, 800, spec, tab, tbl);
    check.lhs = moments::lambda8_integral(chi, spec);
    double rel = std::abs(check.lhs - check.rhs) / check.lhs;
    CHECK(rel < std::max(1e-2, 3.0 * check.tail_estimate / check.lhs));
    CHECK(rel < 1e-3);
    CHECK(check.lhs > 0.0);
    CHECK(check.tail_estimate > 0.0);

    // conjugating a real character leaves the sum bit-identical
    chars::DirichletCharacter bar = chi;
    for (auto& v : bar.values) v = std::conj(v);
    auto check2 = moments::afe_rhs(bar, 800, spec, tab, tbl);
    CHECK(check2.rhs == check.rhs);

    // diagonal-only partial sum is positive
    double diag = 0.0;
    std::vector<double> row;
    double q4 = 625.0, pi4 = std::pow(M_PI, 4);
    for (std::int64_t n = 1; n <= 800; ++n) {
        if (chi(n) == cdouble(0.0, 0.0)) continue;
        double x = static_cast<double>(n) * static_cast<double>(n) * pi4 / q4;
        if (x > weights::kVNegligibleX) break;
        double V = weights::V_eval(n, n, 5.0, spec, &tab);
        diag += static_cast<double>(tbl.tau4[n] * tbl.tau4[n]) / static_cast<double>(n) * V;
    }
    CHECK(diag > 0.0);
}

TEST_CASE("afe_limit truncation rule") {
    std::int64_t l1 = moments::afe_limit(5, 1e-2);
    std::int64_t l2 = moments::afe_limit(5, 1e-4);
    CHECK(l1 >= 1500);
    CHECK(l2 > l1);  // tighter target, larger limit
    CHECK(moments::afe_limit(8, 1e-2) > l1);  // larger modulus, larger limit
}

TEST_CASE("lhs_moment structure at Q = 10") {
    QuadratureSpec spec;
    auto rep = moments::lhs_moment(10.0, spec);
    CHECK(rep.Q == 10.0);
    CHECK(!rep.per_q.empty());
    double total = 0.0;
    for (const auto& e : rep.per_q) {
        CHECK(e.q > 10);
        CHECK(e.q < 20);
        CHECK(e.phi_flat > 0);
        CHECK(e.lambda8_sum > 0.0);
        CHECK(e.psi_weight == weights::psi(static_cast<double>(e.q) / 10.0));
        total += e.psi_weight * e.lambda8_sum;
    }
    CHECK(rep.lhs_total == total);  // additivity, exact
    CHECK_THROWS_AS(moments::lhs_moment(2.0, spec), std::invalid_argument);
}

TEST_CASE("main_term assembly and monotonicity") {
    QuadratureSpec spec;
    double m10 = moments::main_term(10.0, spec);
    CHECK(m10 > 0.0);
    CHECK(moments::main_term(12.0, spec) > m10);
    CHECK(moments::main_term(16.0, spec) > moments::main_term(12.0, spec));

    // cross-assembly: main_term / (sum over q of the q-dependent factors)
    // equals 24024 a4 int|Gamma|^8, each piece computed independently here
    double qsum = 0.0;
    for (std::int64_t q = 11; q <= 19; ++q) {
        double w = weights::psi(static_cast<double>(q) / 10.0);
        if (w == 0.0) continue;
        std::int64_t pf = chars::phi_flat_formula(q);
        if (pf == 0) continue;
        qsum += w * arith::local_factor_q(q) * static_cast<double>(pf) *
                std::pow(std::log(static_cast<double>(q)), 16) / 20922789888000.0;
    }
    double a4 = arith::to_double(arith::euler_constant(arith::EulerKind::a4, 100000).value);
    double g8 = special::gamma8_integral(spec).value;
    CHECK(m10 == doctest::Approx(24024.0 * a4 * qsum * g8).epsilon(1e-12));
}

TEST_CASE("diagonal constant") {
    QuadratureSpec spec;
    double d10 = moments::diagonal_constant(10.0, spec, 20000);
    CHECK(d10 > 0.0);
    // explicit Q-dependence: 2^16 Q^2 (log Q)^16 / 16!
    double d20 = moments::diagonal_constant(20.0, spec, 20000);
    double expect = 4.0 * std::pow(std::log(20.0) / std::log(10.0), 16);
    CHECK(d20 / d10 == doctest::Approx(expect).epsilon(1e-12));
    CHECK_THROWS_AS(moments::diagonal_constant(0.5, spec), std::invalid_argument);
}

TEST_CASE("large sieve ratio") {
    QuadratureSpec spec;
    CHECK_THROWS_AS(moments::large_sieve_ratio(10, 5.0, {}, spec), std::invalid_argument);
    std::vector<cdouble> zeros(10, 0.0);
    CHECK_THROWS_AS(moments::large_sieve_ratio(10, 5.0, zeros, spec), std::invalid_argument);

    // single coefficient a_1 = 1: LHS = 2T sum_{q<=Q} (q/phi(q)) #primitive(q)
    std::int64_t Q = 10;
    double T = 5.0;
    double expect = 0.0;
    for (std::int64_t q = 1; q <= Q; ++q) {
        auto G = chars::build_group(q);
        std::int64_t nprim = 0;
        for (const auto& chi : G.characters) nprim += chi.is_primitive ? 1 : 0;
        expect += static_cast<double>(q) / static_cast<double>(G.phi) *
                  static_cast<double>(nprim);
    }
    expect = 2.0 * T * expect / (static_cast<double>(Q * Q) * T + 1.0);
    double got = moments::large_sieve_ratio(Q, T, {cdouble(1.0, 0.0)}, spec);
    CHECK(got == doctest::Approx(expect).epsilon(1e-9));
    CHECK(got < 3.0);

    // coefficients supported on multiples of 12 kill every character mod
    // 2..4; only the (primitive, trivial) character mod 1 survives
    std::vector<cdouble> a(48, 0.0);
    a[11] = cdouble(1.0, 0.0);   // a_12
    a[23] = cdouble(0.5, -0.25); // a_24
    a[35] = cdouble(-1.0, 2.0);  // a_36
    double r = moments::large_sieve_ratio(4, 3.0, a, spec);
    // the q = 1 term computed independently: trapezoid of |sum a_n n^{it}|^2
    double h = 0.01, acc = 0.0;
    long K = std::lround(3.0 / h);
    for (long k = -K; k <= K; ++k) {
        double t = h * static_cast<double>(k);
        cdouble P = 0.0;
        for (size_t n = 1; n <= a.size(); ++n)
            if (a[n - 1] != cdouble(0.0, 0.0))
                P += a[n - 1] * std::exp(cdouble(0.0, t * std::log(static_cast<double>(n))));
        acc += ((k == -K || k == K) ? 0.5 : 1.0) * std::norm(P);
    }
    acc *= h;
    double denom = 0.0;
    for (size_t n = 1; n <= a.size(); ++n)
        denom += (16.0 * 3.0 + static_cast<double>(n)) * std::norm(a[n - 1]);
    CHECK(r == doctest::Approx(acc / denom).epsilon(1e-6));
}
