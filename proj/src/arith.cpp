#include "moment8/arith.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace moment8::arith {

double to_double(real128 x) { return static_cast<double>(x); }

std::string to_string(real128 x, int digits) {
    char buf[128];
    quadmath_snprintf(buf, sizeof buf, "%.*Qg", digits, x);
    return std::string(buf);
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::vector<std::int64_t> primes_up_to(std::int64_t n) {
    std::vector<std::int64_t> primes;
    if (n < 2) return primes;
    std::vector<bool> composite(static_cast<size_t>(n) + 1, false);
    for (std::int64_t i = 2; i <= n; ++i) {
        if (!composite[i]) {
            primes.push_back(i);
            for (std::int64_t j = i * i; j <= n; j += i) composite[j] = true;
        }
    }
    return primes;
}

std::vector<std::int64_t> distinct_prime_factors(std::int64_t n) {
    std::vector<std::int64_t> ps;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

std::int64_t phi_of(std::int64_t n) {
    std::int64_t r = n;
    for (std::int64_t p : distinct_prime_factors(n)) r -= r / p;
    return r;
}

int mobius_of(std::int64_t n) {
    int m = 1;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            m = -m;
        }
    }
    if (n > 1) m = -m;
    return m;
}

static bool is_prime64(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

MultiplicativeTable sieve_tables(std::int64_t limit) {
    if (limit < 1) throw std::invalid_argument("sieve_tables: limit must be >= 1");
    MultiplicativeTable t;
    t.limit = limit;
    t.tau4.assign(limit + 1, 0);
    t.mobius.assign(limit + 1, 0);
    t.phi.assign(limit + 1, 0);
    t.tau4[1] = 1;
    t.mobius[1] = 1;
    t.phi[1] = 1;
    if (limit == 1) return t;

    // Linear sieve. ppow[n] = p^e where p = smallest prime of n, p^e || n;
    // pexp[n] = e. tau4(p^e) = C(e+3,3).
    std::vector<std::int64_t> ppow(limit + 1, 0);
    std::vector<int> pexp(limit + 1, 0);
    std::vector<std::int64_t> primes;
    std::vector<bool> comp(limit + 1, false);
    auto c3 = [](std::int64_t e) { return (e + 1) * (e + 2) * (e + 3) / 6; };
    for (std::int64_t i = 2; i <= limit; ++i) {
        if (!comp[i]) {
            primes.push_back(i);
            ppow[i] = i;
            pexp[i] = 1;
            t.tau4[i] = 4;
            t.mobius[i] = -1;
            t.phi[i] = i - 1;
        }
        for (std::int64_t p : primes) {
            if (p > limit / i) break;
            std::int64_t ip = i * p;
            comp[ip] = true;
            if (i % p == 0) {
                ppow[ip] = ppow[i] * p;
                pexp[ip] = pexp[i] + 1;
                t.mobius[ip] = 0;
                t.phi[ip] = t.phi[i] * p;
                std::int64_t rest = ip / ppow[ip];
                t.tau4[ip] = t.tau4[rest] * c3(pexp[ip]);
                break;
            }
            ppow[ip] = p;
            pexp[ip] = 1;
            t.mobius[ip] = -t.mobius[i];
            t.phi[ip] = t.phi[i] * (p - 1);
            t.tau4[ip] = t.tau4[i] * 4;
        }
    }
    return t;
}

SeriesValue bp_local(std::int64_t p, int terms) {
    if (!is_prime64(p)) throw std::invalid_argument("bp_local: p must be prime");
    if (terms < 1) throw std::invalid_argument("bp_local: terms must be >= 1");
    real128 sum = 0, comp = 0;
    real128 x = real128(1) / real128(p);
    real128 xr = 1;
    real128 last = 0;
    for (int r = 0; r < terms; ++r) {
        real128 tau = real128(r + 1) * real128(r + 2) * real128(r + 3) / 6;
        real128 term = tau * tau * xr;
        // Kahan
        real128 y = term - comp;
        real128 s2 = sum + y;
        comp = (s2 - sum) - y;
        sum = s2;
        last = term;
        xr *= x;
    }
    // Tail: terms decrease at least geometrically once C(r+4,3)^2 / (p C(r+3,3)^2) < 1.
    // Ratio of consecutive terms at r = terms-1:
    double r0 = terms - 1;
    double ratio = std::pow((r0 + 4) / (r0 + 1), 6) / static_cast<double>(p);
    double tail;
    if (ratio < 1.0)
        tail = to_double(last) * ratio / (1.0 - ratio);
    else
        tail = to_double(last) * 1e6;  // not yet in the geometric regime
    return {sum, tail};
}

real128 euler_local_factor(EulerKind kind, std::int64_t p) {
    real128 x = real128(1) / real128(p);
    switch (kind) {
        case EulerKind::a4: {
            real128 om = 1 - x;
            real128 om9 = om;
            for (int i = 0; i < 8; ++i) om9 *= om;
            return om9 * (1 + 9 * x + 9 * x * x + x * x * x);
        }
        case EulerKind::a3: {
            real128 om = 1 - x;
            real128 om4 = om * om * om * om;
            return om4 * (1 + 4 * x + x * x);
        }
        case EulerKind::calA: {
            SeriesValue bp = bp_local(p, 400);
            real128 om = 1 - x;
            real128 om16 = 1;
            for (int i = 0; i < 16; ++i) om16 *= om;
            return bp.value * om16;
        }
    }
    return 1;
}

EulerProductValue euler_constant(EulerKind kind, std::int64_t prime_cutoff) {
    if (prime_cutoff < 2) throw std::invalid_argument("euler_constant: prime_cutoff must be >= 2");
    // |log local(p)| <= c/p^2 for p beyond the small primes; c fixed per
    // constant from the x^2 coefficient of the local factor plus slack.
    double c = 60.0;
    switch (kind) {
        case EulerKind::a4: c = 60.0; break;
        case EulerKind::a3: c = 15.0; break;
        case EulerKind::calA: c = 60.0; break;
    }
    real128 logsum = 0, comp = 0;
    for (std::int64_t p : primes_up_to(prime_cutoff)) {
        real128 term = logq(euler_local_factor(kind, p));
        real128 y = term - comp;
        real128 s2 = logsum + y;
        comp = (s2 - logsum) - y;
        logsum = s2;
    }
    EulerProductValue out;
    out.prime_cutoff = prime_cutoff;
    // sum_{p > P} c/p^2 < c/P
    out.tail_bound = c / static_cast<double>(prime_cutoff);
    out.value = expq(logsum);
    return out;
}

double local_factor_q(std::int64_t q) {
    if (q < 1) throw std::invalid_argument("local_factor_q: q must be >= 1");
    double out = 1.0;
    for (std::int64_t p : distinct_prime_factors(q)) {
        double x = 1.0 / static_cast<double>(p);
        double om7 = std::pow(1.0 - x, 7);
        out *= om7 / (1 + 9 * x + 9 * x * x + x * x * x);
    }
    return out;
}

cdouble phi_rs(std::int64_t r, cdouble s) {
    if (r < 1) throw std::invalid_argument("phi_rs: r must be >= 1");
    cdouble out = 1.0;
    for (std::int64_t p : distinct_prime_factors(r))
        out *= 1.0 - std::exp(-s * std::log(static_cast<double>(p)));
    return out;
}

// ---------------------------------------------------------------------------
// Euler-Maclaurin zeta, shift N ~ |Im s|, 8 Bernoulli corrections.
// ---------------------------------------------------------------------------

static const double kBern2k[8] = {1.0 / 6,   -1.0 / 30,    1.0 / 42, -1.0 / 30,
                                  5.0 / 66, -691.0 / 2730, 7.0 / 6,  -3617.0 / 510};

cdouble zeta_em(cdouble s) {
    if (s == cdouble(1.0, 0.0)) throw std::invalid_argument("zeta_em: pole at s = 1");
    int N = std::max(12, static_cast<int>(std::ceil(1.3 * std::abs(s.imag()))));
    cdouble sum = 0.0;
    for (int n = 1; n < N; ++n) sum += std::exp(-s * std::log(static_cast<double>(n)));
    double dN = N;
    cdouble lN = std::log(dN);
    sum += std::exp((1.0 - s) * lN) / (s - 1.0);
    sum += 0.5 * std::exp(-s * lN);
    // B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    cdouble poch = s;
    double fact = 2.0;
    for (int k = 1; k <= 8; ++k) {
        cdouble term = kBern2k[k - 1] / fact * poch * std::exp((-s - (2.0 * k - 1.0)) * lN);
        sum += term;
        poch *= (s + cdouble(2.0 * k - 1.0)) * (s + cdouble(2.0 * k, 0.0));
        fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
    }
    return sum;
}

cdouble prime_zeta(cdouble s) {
    if (s.real() <= 1.0) throw std::invalid_argument("prime_zeta: need Re s > 1");
    cdouble out = 0.0;
    for (int k = 1; k <= 64; ++k) {
        cdouble ks = static_cast<double>(k) * s;
        if (ks.real() > 120.0) break;
        cdouble z = zeta_em(ks);
        out += static_cast<double>(mobius_of(k)) / static_cast<double>(k) * std::log(z);
    }
    return out;
}

// sum_{p > P} p^{-w} via prime zeta
static cdouble prime_zeta_tail(cdouble w, const std::vector<std::int64_t>& primes) {
    cdouble full = prime_zeta(w);
    cdouble partial = 0.0;
    for (std::int64_t p : primes) partial += std::exp(-w * std::log(static_cast<double>(p)));
    return full - partial;
}

// ---------------------------------------------------------------------------
// h-sum identity (eq. for sum over h coprime to MN of 1/(phi(abh) h^s))
// ---------------------------------------------------------------------------

double h_sum_identity_check(std::int64_t a, std::int64_t b, std::int64_t M,
                            std::int64_t N, cdouble s, std::int64_t H,
                            std::int64_t prime_cutoff) {
    std::int64_t ab = a * b, MN = M * N;
    if (a < 1 || b < 1 || M < 1 || N < 1) throw std::invalid_argument("h_sum: positive inputs required");
    if (gcd64(ab, MN) != 1) throw std::invalid_argument("h_sum: gcd(ab, MN) must be 1");
    if (s.real() < 1.0) throw std::invalid_argument("h_sum: need Re s >= 1");
    if (H < 1000) throw std::invalid_argument("h_sum: need H >= 1000");

    MultiplicativeTable tbl = sieve_tables(H);
    std::int64_t phi_ab = phi_of(ab);

    cdouble lhs = 0.0;
    for (std::int64_t h = 1; h <= H; ++h) {
        if (gcd64(h, MN) != 1) continue;
        std::int64_t d = gcd64(ab, h);
        // phi(ab h) = phi(ab) phi(h) d / phi(d)
        double ph = static_cast<double>(phi_ab) * static_cast<double>(tbl.phi[h]) *
                    static_cast<double>(d) / static_cast<double>(phi_of(d));
        lhs += std::exp(-s * std::log(static_cast<double>(h))) / ph;
    }

    cdouble rhs = zeta_em(s + 1.0) / static_cast<double>(phi_ab);
    for (std::int64_t p : distinct_prime_factors(MN))
        rhs *= 1.0 - std::exp(-(s + 1.0) * std::log(static_cast<double>(p)));
    for (std::int64_t p : primes_up_to(prime_cutoff)) {
        if (ab % p == 0 || MN % p == 0) continue;
        double dp = static_cast<double>(p);
        rhs *= 1.0 + std::exp(-s * std::log(dp)) / (dp * (dp - 1.0));
    }
    return std::abs(lhs - rhs);
}

// ---------------------------------------------------------------------------
// d,r double-sum identity against F(-z, g, MN)/(zeta(1+z) phi(gMN, 1+z))
// ---------------------------------------------------------------------------

cdouble f_func(cdouble s, std::int64_t g, std::int64_t M, std::int64_t N,
               std::int64_t prime_cutoff) {
    std::int64_t MN = M * N;
    cdouble out = phi_rs(MN, s + 1.0);
    for (std::int64_t p : distinct_prime_factors(g)) {
        if (MN % p == 0) continue;
        double dp = static_cast<double>(p);
        cdouble ps = std::exp(-s * std::log(dp));  // p^{-s}
        out *= 1.0 - ps / dp - (1.0 - ps) / (dp - 1.0);
    }
    auto primes = primes_up_to(prime_cutoff);
    cdouble logprod = 0.0;
    std::int64_t gMN = g * MN;
    std::vector<std::int64_t> skipped;
    for (std::int64_t p : primes) {
        if (gMN % p == 0) {
            skipped.push_back(p);
            continue;
        }
        double dp = static_cast<double>(p);
        cdouble p1s = std::exp(-(1.0 + s) * std::log(dp));  // p^{-1-s}
        logprod += std::log(1.0 - 1.0 / (dp * (dp - 1.0)) + p1s / (dp - 1.0));
    }
    // Tail of log prod_{p>P}(1 - 1/(p(p-1)) + p^{-1-s}/(p-1)) to first order:
    //   1/(p(p-1)) = sum_{j>=2} p^{-j},  p^{-1-s}/(p-1) = sum_{j>=2} p^{-s-j}.
    for (int j = 2; j <= 9; ++j) {
        logprod += prime_zeta_tail(s + static_cast<double>(j), primes);
        logprod -= prime_zeta_tail(cdouble(static_cast<double>(j), 0.0), primes);
    }
    return out * std::exp(logprod);
}

double f_func_identity_check(cdouble z, std::int64_t g, std::int64_t M,
                             std::int64_t N, std::int64_t dr_limit,
                             std::int64_t prime_cutoff) {
    if (g < 1 || M < 1 || N < 1) throw std::invalid_argument("f_func_check: positive inputs required");
    if (gcd64(M, N) != 1) throw std::invalid_argument("f_func_check: gcd(M, N) must be 1");
    if (!(z.real() > 0.0 && z.real() < 1.0)) throw std::invalid_argument("f_func_check: need Re z in (0,1)");

    std::int64_t MN = M * N, gMN = g * MN;
    MultiplicativeTable tbl = sieve_tables(dr_limit);
    auto primes = primes_up_to(prime_cutoff);

    // The double sum factors: the d-sum and the r-sum are independent.
    cdouble dsum = 0.0;
    for (std::int64_t d = 1; d <= dr_limit; ++d) {
        if (tbl.mobius[d] == 0 || gcd64(d, gMN) != 1) continue;
        dsum += static_cast<double>(tbl.mobius[d]) *
                std::exp(-(1.0 + z) * std::log(static_cast<double>(d)));
    }

    // prod_{p !| rMN}(1 + p^{z-1}/(p-1)) = P0 / prod_{p|r}(1 + p^{z-1}/(p-1)),
    // with P0 the full product over p !| MN (prime-zeta tail-corrected).
    cdouble logP0 = 0.0;
    for (std::int64_t p : primes) {
        if (MN % p == 0) continue;
        double dp = static_cast<double>(p);
        logP0 += std::log(1.0 + std::exp((z - 1.0) * std::log(dp)) / (dp - 1.0));
    }
    for (int j = 1; j <= 9; ++j)  // p^{z-1}/(p-1) = sum_{j>=1} p^{z-1-j}
        logP0 += prime_zeta_tail(1.0 + static_cast<double>(j) - z, primes);
    cdouble P0 = std::exp(logP0);

    cdouble rsum = 0.0;
    for (std::int64_t r = 1; r <= dr_limit; ++r) {
        if (tbl.mobius[r] == 0 || gcd64(r, MN) != 1) continue;
        cdouble local = 1.0;
        for (std::int64_t p : distinct_prime_factors(r)) {
            double dp = static_cast<double>(p);
            local *= 1.0 + std::exp((z - 1.0) * std::log(dp)) / (dp - 1.0);
        }
        rsum += static_cast<double>(tbl.mobius[r] * gcd64(r, g)) /
                (static_cast<double>(r) * static_cast<double>(tbl.phi[r])) / local;
    }

    cdouble lhs = dsum * P0 * rsum * phi_rs(MN, 1.0 - z);
    cdouble rhs = f_func(-z, g, M, N, prime_cutoff) /
                  (zeta_em(1.0 + z) * phi_rs(gMN, 1.0 + z));
    return std::abs(lhs - rhs);
}

}  // namespace moment8::arith
