// moment8: desk-scale verification of the exact identities behind the
// eighth moment of Dirichlet L-functions. Subcommands cover the
// multiplicative tables and Euler constants, character groups and
// orthogonality, the Gamma kernel integral, the AFE weights, Ramachandra's
// decomposition, the per-character AFE identity, the assembled moment
// report, and the hybrid large-sieve ratio checker.

#include <chrono>
#include <complex>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "moment8/arith.hpp"
#include "moment8/characters.hpp"
#include "moment8/lfunc.hpp"
#include "moment8/moments.hpp"
#include "moment8/parallel.hpp"
#include "moment8/report.hpp"
#include "moment8/special.hpp"
#include "moment8/weights.hpp"

namespace m8 = moment8;
using m8::report::CheckResult;
using m8::report::Format;
using m8::report::JsonWriter;
using m8::report::RunManifest;
using cdouble = std::complex<double>;

namespace {

constexpr const char* kVersion = "0.1.0";

struct CommonOpts {
    std::string format = "json";
    std::string out_path;
    std::string manifest_path;
    std::uint64_t seed = 20240817;
    unsigned threads = 0;  // 0 = hardware default
    m8::QuadratureSpec quad;

    Format fmt() const { return format == "csv" ? Format::csv : Format::json; }
    unsigned effective_threads() const { return threads == 0 ? m8::default_threads() : threads; }
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", o.out_path, "Write the report here instead of stdout");
    cmd->add_option("--manifest", o.manifest_path, "Write the run manifest here instead of stderr");
    cmd->add_option("--seed", o.seed, "Seed for the randomized suites");
    cmd->add_option("--threads", o.threads, "Worker thread cap (0 = hardware)");
    cmd->add_option("--abs-tol", o.quad.abs_tol, "Quadrature absolute tolerance");
    cmd->add_option("--rel-tol", o.quad.rel_tol, "Quadrature relative tolerance");
    cmd->add_option("--step", o.quad.initial_step, "Quadrature initial step");
    cmd->add_option("--radius", o.quad.truncation_radius, "Truncation radius for line integrals");
    cmd->add_option("--max-refine", o.quad.max_refinements, "Max refinement levels");
}

int finish(const CommonOpts& o, RunManifest& man, const std::string& body,
           std::chrono::steady_clock::time_point t0) {
    man.version = kVersion;
    man.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    m8::report::write_output(body, o.out_path);
    if (o.manifest_path.empty())
        std::cerr << man.to_json();
    else
        m8::report::write_output(man.to_json(), o.manifest_path);
    return man.overall() ? 0 : 1;
}

std::string format_complex_json(const char* key, cdouble v) {
    return std::string("\"") + key + "\":[" + m8::report::format_double(v.real()) + "," +
           m8::report::format_double(v.imag()) + "]";
}

// ---------------------------------------------------------------------------
// subcommand bodies
// ---------------------------------------------------------------------------

int run_tau(const CommonOpts& o, std::int64_t limit) {
    auto t0 = std::chrono::steady_clock::now();
    auto tbl = m8::arith::sieve_tables(limit);
    std::string body;
    if (o.fmt() == Format::csv) {
        body = "n,tau4,mobius,phi\n";
        for (std::int64_t n = 1; n <= limit; ++n)
            body += std::to_string(n) + ',' + std::to_string(tbl.tau4[n]) + ',' +
                    std::to_string(tbl.mobius[n]) + ',' + std::to_string(tbl.phi[n]) + "\n";
    } else {
        JsonWriter w;
        w.begin_object();
        w.field("limit", limit);
        w.begin_array("rows");
        for (std::int64_t n = 1; n <= limit; ++n) {
            w.begin_object_element();
            w.field("n", n);
            w.field("tau4", tbl.tau4[n]);
            w.field("mobius", static_cast<std::int64_t>(tbl.mobius[n]));
            w.field("phi", tbl.phi[n]);
            w.end_object();
        }
        w.end_array();
        w.end_object();
        body = w.str() + "\n";
    }
    RunManifest man;
    man.subcommand = "tau";
    man.config_echo = "limit=" + std::to_string(limit);
    return finish(o, man, body, t0);
}

int run_chars(const CommonOpts& o, std::int64_t q, bool primitive_even) {
    auto t0 = std::chrono::steady_clock::now();
    auto G = m8::chars::build_group(q);
    JsonWriter w;
    w.begin_object();
    w.field("modulus", q);
    w.field("phi", G.phi);
    w.field("phi_flat", G.phi_flat);
    w.begin_array("characters");
    for (const auto& chi : G.characters) {
        if (primitive_even && !(chi.is_primitive && chi.even)) continue;
        w.begin_object_element();
        w.field("index", chi.index);
        w.field("conductor", chi.conductor);
        w.field("parity", std::string(chi.even ? "even" : "odd"));
        w.field("is_primitive", chi.is_primitive);
        w.begin_array("values");
        for (const auto& v : chi.values) {
            w.begin_array();
            w.element(v.real());
            w.element(v.imag());
            w.end_array();
        }
        w.end_array();
        w.end_object();
    }
    w.end_array();
    w.end_object();
    RunManifest man;
    man.subcommand = "chars";
    man.config_echo = "q=" + std::to_string(q);
    return finish(o, man, w.str() + "\n", t0);
}

int run_lfun(const CommonOpts& o, std::int64_t q, int index, cdouble s) {
    auto t0 = std::chrono::steady_clock::now();
    auto G = m8::chars::build_group(q);
    if (index < 0 || index >= static_cast<int>(G.characters.size()))
        throw CLI::ValidationError("--char", "character index out of range");
    const auto& chi = G.characters[index];
    cdouble L = m8::lfunc::L_eval(chi, s);
    std::string body = "{\"q\":" + std::to_string(q) + ",\"char_index\":" + std::to_string(index) +
                       ",\"s\":[" + m8::report::format_double(s.real()) + "," +
                       m8::report::format_double(s.imag()) + "]," + format_complex_json("L", L);
    if (chi.is_primitive && chi.even) {
        cdouble lam = m8::lfunc::lambda_eval(chi, s - 0.5);  // Lambda at the same point s
        body += "," + format_complex_json("Lambda", lam);
    }
    body += "}\n";
    RunManifest man;
    man.subcommand = "lfun";
    man.config_echo = "q=" + std::to_string(q) + " char=" + std::to_string(index);
    return finish(o, man, body, t0);
}

int run_gamma8(const CommonOpts& o) {
    auto t0 = std::chrono::steady_clock::now();
    auto r = m8::special::gamma8_integral(o.quad);
    JsonWriter w;
    w.begin_object();
    w.field("value", r.value);
    w.field("error_estimate", r.error);
    w.field("tail_bound", r.tail_bound);
    w.field("radius", o.quad.truncation_radius);
    w.end_object();
    RunManifest man;
    man.subcommand = "gamma8";
    man.config_echo = "radius=" + m8::report::format_double(o.quad.truncation_radius);
    return finish(o, man, w.str() + "\n", t0);
}

int run_weights_probe(const CommonOpts& o, const std::vector<double>& probe) {
    auto t0 = std::chrono::steady_clock::now();
    double xi = probe[0], eta = probe[1], mu = probe[2];
    double V = m8::weights::V_eval(xi, eta, mu, o.quad);
    double x = xi * eta * std::pow(M_PI, 4) / std::pow(mu, 4);
    JsonWriter w;
    w.begin_object();
    w.field("xi", xi);
    w.field("eta", eta);
    w.field("mu", mu);
    w.field("x", x);
    w.field("V", V);
    w.begin_array("W_samples");
    for (double t : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0}) {
        w.begin_object_element();
        w.field("t", t);
        w.field("W", m8::weights::W_eval(x, t, o.quad));
        w.end_object();
    }
    w.end_array();
    w.end_object();
    RunManifest man;
    man.subcommand = "weights";
    man.config_echo = "probe";
    return finish(o, man, w.str() + "\n", t0);
}

int run_weights_decay(const CommonOpts& o) {
    auto t0 = std::chrono::steady_clock::now();
    std::string body = "xi,eta,mu,V,bound,ratio\n";
    double worst = 0.0;
    for (double mu : {1.0, 2.0, 5.0, 8.0}) {
        for (double xi = 0.5; xi <= 2048.0; xi *= 2.0) {
            for (double eta = xi; eta <= 2048.0; eta *= 2.0) {
                double V = m8::weights::V_eval(xi, eta, mu, o.quad);
                double bound = std::exp(-std::pow(eta * eta / std::pow(mu, 4), 0.25));
                double ratio = std::abs(V) / bound;
                worst = std::max(worst, ratio);
                body += m8::report::format_double(xi) + ',' + m8::report::format_double(eta) +
                        ',' + m8::report::format_double(mu) + ',' + m8::report::format_double(V) +
                        ',' + m8::report::format_double(bound) + ',' +
                        m8::report::format_double(ratio) + "\n";
            }
        }
    }
    RunManifest man;
    man.subcommand = "weights";
    man.config_echo = "check-decay";
    man.checks.push_back({"V decay bound with frozen constant", worst,
                          m8::weights::kVDecayConstant, worst <= m8::weights::kVDecayConstant});
    return finish(o, man, body, t0);
}

int run_ram_check(const CommonOpts& o) {
    auto t0 = std::chrono::steady_clock::now();
    auto tbl = m8::arith::sieve_tables(m8::lfunc::ramachandra_j1_cutoff(200.0));
    JsonWriter w;
    w.begin_object();
    w.begin_array("grid");
    RunManifest man;
    man.subcommand = "ram-check";
    man.config_echo = "q in {5,8}, c in {0,0.01}, t in {0,0.7,2}, X in {50,200}";
    for (std::int64_t q : {5, 8}) {
        auto G = m8::chars::build_group(q);
        for (const auto& chi : G.characters) {
            if (!chi.is_primitive || !chi.even) continue;
            for (double c : {0.0, 0.01}) {
                for (double t : {0.0, 0.7, 2.0}) {
                    for (double X : {50.0, 200.0}) {
                        auto terms = m8::lfunc::ramachandra_terms(chi, c, t, X, o.quad, tbl);
                        cdouble L = m8::lfunc::L_eval(chi, cdouble(0.5 + c, t));
                        cdouble L4 = L * L * L * L;
                        double resid = std::abs(L4 - terms.combination()) / std::abs(L4);
                        w.begin_object_element();
                        w.field("q", q);
                        w.field("char_index", chi.index);
                        w.field("c", c);
                        w.field("t", t);
                        w.field("x_param", X);
                        w.field("residual", resid);
                        w.end_object();
                        man.checks.push_back({"ram q=" + std::to_string(q) +
                                                  " c=" + m8::report::format_double(c) +
                                                  " t=" + m8::report::format_double(t) +
                                                  " X=" + m8::report::format_double(X),
                                              resid, 1e-5, resid < 1e-5});
                    }
                }
            }
        }
    }
    w.end_array();
    w.end_object();
    return finish(o, man, w.str() + "\n", t0);
}

int run_afe_check(const CommonOpts& o, std::int64_t q, int index, std::int64_t limit) {
    auto t0 = std::chrono::steady_clock::now();
    auto G = m8::chars::build_group(q);
    const m8::chars::DirichletCharacter* chi = nullptr;
    if (index >= 0) {
        if (index >= static_cast<int>(G.characters.size()))
            throw CLI::ValidationError("--char", "character index out of range");
        chi = &G.characters[index];
    } else {
        for (const auto& c : G.characters)
            if (c.is_primitive && c.even) { chi = &c; break; }
        if (chi == nullptr) throw CLI::ValidationError("--q", "no primitive even character mod q");
    }
    double q4 = std::pow(static_cast<double>(q), 4);
    double pi4 = std::pow(M_PI, 4);
    double xmax = static_cast<double>(limit) * static_cast<double>(limit) * pi4 / q4 * 1.05;
    xmax = std::min(xmax, 1.05 * m8::weights::kVNegligibleX);
    m8::weights::WeightTable table(0.02, std::max(xmax, 1.0), 44.0, o.quad, 0.02, 0.25,
                                   o.effective_threads());
    auto tbl = m8::arith::sieve_tables(limit);
    auto check = m8::moments::afe_rhs(*chi, limit, o.quad, table, tbl);
    check.lhs = m8::moments::lambda8_integral(*chi, o.quad);
    double rel = std::abs(check.lhs - check.rhs) / std::abs(check.lhs);
    RunManifest man;
    man.subcommand = "afe-check";
    man.config_echo = "q=" + std::to_string(q) + " limit=" + std::to_string(limit);
    man.checks.push_back({"AFE identity relative residual", rel, 1e-2, rel < 1e-2});
    return finish(o, man, m8::report::emit_afe_check(check, o.fmt()), t0);
}

int run_moment(const CommonOpts& o, double Q) {
    auto t0 = std::chrono::steady_clock::now();
    auto rep = m8::moments::moment_report(Q, o.quad);
    RunManifest man;
    man.subcommand = "moment";
    man.config_echo = "Q=" + m8::report::format_double(Q);
    man.checks.push_back({"ratio in sanity band (0.1, 10)", rep.ratio, 10.0,
                          rep.ratio > 0.1 && rep.ratio < 10.0});
    return finish(o, man, m8::report::emit_moment_report(rep, o.fmt()), t0);
}

int run_sieve_check(const CommonOpts& o, int trials, std::int64_t Qmax, double Tmax,
                    std::int64_t Nmax) {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<std::int64_t> qd(2, Qmax), nd(8, Nmax);
    std::uniform_real_distribution<double> td(0.5, Tmax), cd(-1.0, 1.0);
    std::string body = "trial,Q,T,N,lhs_ratio\n";
    RunManifest man;
    man.subcommand = "sieve-check";
    man.config_echo = "trials=" + std::to_string(trials);
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
        std::int64_t Q = qd(rng), N = nd(rng);
        double T = td(rng);
        std::vector<cdouble> a(N);
        for (auto& v : a) v = cdouble(cd(rng), cd(rng));
        double ratio = m8::moments::large_sieve_ratio(Q, T, a, o.quad);
        worst = std::max(worst, ratio);
        body += std::to_string(i) + ',' + std::to_string(Q) + ',' +
                m8::report::format_double(T) + ',' + std::to_string(N) + ',' +
                m8::report::format_double(ratio) + "\n";
    }
    man.checks.push_back({"large-sieve ratio <= 3 on the random suite", worst, 3.0, worst <= 3.0});
    return finish(o, man, body, t0);
}

int run_euler_const(const CommonOpts& o, const std::string& kind, std::int64_t cutoff) {
    auto t0 = std::chrono::steady_clock::now();
    m8::arith::EulerKind k = m8::arith::EulerKind::a4;
    if (kind == "a3") k = m8::arith::EulerKind::a3;
    else if (kind == "calA") k = m8::arith::EulerKind::calA;
    auto v = m8::arith::euler_constant(k, cutoff);
    JsonWriter w;
    w.begin_object();
    w.field("kind", kind);
    w.field("prime_cutoff", v.prime_cutoff);
    w.field("value", m8::arith::to_double(v.value));
    w.field("value_hp", m8::arith::to_string(v.value, 30));
    w.field("tail_bound", v.tail_bound);
    w.end_object();
    RunManifest man;
    man.subcommand = "euler-const";
    man.config_echo = "kind=" + kind + " cutoff=" + std::to_string(cutoff);
    return finish(o, man, w.str() + "\n", t0);
}

int run_identities(const CommonOpts& o, const std::string& suite) {
    auto t0 = std::chrono::steady_clock::now();
    RunManifest man;
    man.subcommand = "identities";
    man.config_echo = "suite=" + suite;
    JsonWriter w;
    w.begin_object();
    w.field("suite", suite);
    w.begin_array("checks");
    auto add = [&](const std::string& name, double resid, double tol) {
        w.begin_object_element();
        w.field("name", name);
        w.field("residual", resid);
        w.field("tolerance", tol);
        w.field("pass", resid < tol);
        w.end_object();
        man.checks.push_back({name, resid, tol, resid < tol});
    };

    if (suite == "orthogonality") {
        for (std::int64_t q = 1; q <= 48; ++q) {
            double worst = 0.0;
            auto G = m8::chars::build_group(q);
            for (std::int64_t m = 1; m <= 100; ++m)
                for (std::int64_t n = 1; n <= 100; ++n) {
                    if (std::gcd(m * n, q) != 1) continue;
                    auto st = m8::chars::orth_star(G, m, n);
                    auto fl = m8::chars::orth_flat(G, m, n);
                    worst = std::max(worst, std::abs(st.lhs - cdouble(st.rhs, 0.0)));
                    worst = std::max(worst, std::abs(fl.lhs - cdouble(fl.rhs, 0.0)));
                }
            add("orthogonality q=" + std::to_string(q) + " (m,n <= 100)", worst, 1e-9);
        }
    } else if (suite == "euler") {
        double worst = 0.0;
        for (std::int64_t p : m8::arith::primes_up_to(100)) {
            auto bp = m8::arith::bp_local(p, 300);
            m8::arith::real128 x = m8::arith::real128(1) / p;
            m8::arith::real128 om = 1 - x;
            m8::arith::real128 om7 = om * om * om * om * om * om * om;
            m8::arith::real128 closed = (1 + 9 * x + 9 * x * x + x * x * x) / om7;
            worst = std::max(worst, std::abs(m8::arith::to_double(bp.value - closed)));
        }
        add("B_p series vs closed form, p <= 100", worst, 1e-12);
        auto a4 = m8::arith::euler_constant(m8::arith::EulerKind::a4, 100000);
        auto cA = m8::arith::euler_constant(m8::arith::EulerKind::calA, 100000);
        add("|calA - a4| within combined tail bounds",
            std::abs(m8::arith::to_double(cA.value - a4.value)), a4.tail_bound + cA.tail_bound);
        add("h-sum identity, s=2, H=1e5", m8::arith::h_sum_identity_check(1, 1, 1, 1, 2.0, 100000),
            1e-6);
        add("F double-sum identity, z=1/2", m8::arith::f_func_identity_check(0.5, 1, 1, 1), 1e-4);
    } else if (suite == "hdual") {
        std::mt19937_64 rng(o.seed);
        std::uniform_real_distribution<double> ru(0.1, 0.4), rv(0.5, 0.9), im(-20.0, 20.0);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            cdouble u(ru(rng), im(rng)), v(rv(rng), im(rng));
            auto [three, ratio] = m8::special::H_dual(u, v);
            worst = std::max(worst, std::abs(three - ratio) / std::abs(ratio));
        }
        add("H dual forms on 1000 seeded points", worst, 1e-9);
    } else if (suite == "stirling") {
        std::mt19937_64 rng(o.seed);
        std::uniform_real_distribution<double> rad(10.0, 1000.0), arg(-2.356, 2.356);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            cdouble z = std::polar(rad(rng), arg(rng));
            cdouble lst = 0.5 * std::log(2.0 * M_PI / z) + z * (std::log(z) - 1.0);
            double rel = std::abs(std::exp(m8::special::log_gamma(z) - lst) - 1.0);
            worst = std::max(worst, rel * std::abs(z) / 2.0);  // normalized to the 2/|z| budget
        }
        add("Stirling regime |Gamma/main - 1| <= 2/|z|", worst, 1.0);
        double sup = 0.0;
        for (double sig = -1.0; sig <= 1.0 / 3.0 + 1e-9; sig += 1.0 / 60.0)
            for (double tau = 0.0; tau <= 120.0; tau += 0.125)
                sup = std::max(sup, m8::special::gamma_ratio_bound_check(
                                        cdouble(std::min(sig, 1.0 / 3.0), tau)));
        add("Gamma-ratio strip scan vs recorded bound", sup, m8::special::kGammaRatioStripBound);
    } else {
        throw CLI::ValidationError("--suite", "unknown suite " + suite);
    }
    w.end_array();
    w.field("overall", man.overall());
    w.end_object();
    return finish(o, man, w.str() + "\n", t0);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"moment8: eighth-moment identities for Dirichlet L-functions at desk scale"};
    app.require_subcommand(1);
    app.set_config("--config")->envname("MOMENT8_CONFIG");

    CommonOpts o;

    std::int64_t tau_limit = 100;
    auto* c_tau = app.add_subcommand("tau", "Multiplicative tables (tau4, mu, phi)");
    c_tau->add_option("--limit", tau_limit, "Table limit")->required();
    add_common(c_tau, o);

    std::int64_t chars_q = 5;
    bool chars_pe = false;
    auto* c_chars = app.add_subcommand("chars", "Character table mod q");
    c_chars->add_option("--q", chars_q, "Modulus")->required();
    c_chars->add_flag("--primitive-even", chars_pe, "Only primitive even characters");
    add_common(c_chars, o);

    std::int64_t lfun_q = 5;
    int lfun_char = 0;
    std::vector<double> lfun_s{2.0, 0.0};
    auto* c_lfun = app.add_subcommand("lfun", "Evaluate L and Lambda");
    c_lfun->add_option("--q", lfun_q, "Modulus")->required();
    c_lfun->add_option("--char", lfun_char, "Character index");
    c_lfun->add_option("--s", lfun_s, "Point re,im")->expected(2)->delimiter(',');
    add_common(c_lfun, o);

    auto* c_gamma8 = app.add_subcommand("gamma8", "Integral of |Gamma(1/4+it/2)|^8");
    double g8_tol = 1e-12;
    c_gamma8->add_option("--tol", g8_tol, "Absolute tolerance");
    add_common(c_gamma8, o);

    auto* c_weights = app.add_subcommand("weights", "AFE weight probes");
    std::vector<double> probe;
    bool check_decay = false;
    c_weights->add_option("--probe", probe, "xi,eta,mu")->expected(3)->delimiter(',');
    c_weights->add_flag("--check-decay", check_decay, "Emit the decay-bound scan as CSV");
    add_common(c_weights, o);

    auto* c_ram = app.add_subcommand("ram-check", "Ramachandra identity grid");
    add_common(c_ram, o);

    std::int64_t afe_q = 5, afe_limit = 1500;
    int afe_char = -1;
    auto* c_afe = app.add_subcommand("afe-check", "Eighth-moment AFE identity for one character");
    c_afe->add_option("--q", afe_q, "Modulus")->required();
    c_afe->add_option("--char", afe_char, "Character index (default: first primitive even)");
    c_afe->add_option("--limit", afe_limit, "Truncation limit of the double sum");
    add_common(c_afe, o);

    double moment_Q = 10.0;
    auto* c_moment = app.add_subcommand("moment", "Assemble both sides of the moment formula");
    c_moment->add_option("--Q", moment_Q, "Modulus scale Q (q runs over (Q, 2Q))")->required();
    add_common(c_moment, o);

    int sieve_trials = 50;
    std::int64_t sieve_Q = 20, sieve_N = 500;
    double sieve_T = 10.0;
    auto* c_sieve = app.add_subcommand("sieve-check", "Hybrid large-sieve ratio suite");
    c_sieve->add_option("--trials", sieve_trials, "Number of random instances");
    c_sieve->add_option("--Q", sieve_Q, "Max modulus bound");
    c_sieve->add_option("--T", sieve_T, "Max t-range");
    c_sieve->add_option("--N", sieve_N, "Max coefficient length");
    add_common(c_sieve, o);

    std::string euler_kind = "a4";
    std::int64_t euler_cutoff = 100000;
    auto* c_euler = app.add_subcommand("euler-const", "High-precision Euler product constants");
    c_euler->add_option("--kind", euler_kind, "a4 | a3 | calA")
        ->check(CLI::IsMember({"a4", "a3", "calA"}));
    c_euler->add_option("--cutoff", euler_cutoff, "Prime cutoff");
    add_common(c_euler, o);

    std::string suite = "orthogonality";
    auto* c_ident = app.add_subcommand("identities", "Exact-identity suites");
    c_ident->add_option("--suite", suite, "orthogonality | euler | hdual | stirling");
    add_common(c_ident, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c_tau->parsed()) return run_tau(o, tau_limit);
        if (c_chars->parsed()) return run_chars(o, chars_q, chars_pe);
        if (c_lfun->parsed()) return run_lfun(o, lfun_q, lfun_char, cdouble(lfun_s[0], lfun_s[1]));
        if (c_gamma8->parsed()) {
            o.quad.abs_tol = g8_tol;
            return run_gamma8(o);
        }
        if (c_weights->parsed()) {
            if (check_decay) return run_weights_decay(o);
            if (probe.size() == 3) return run_weights_probe(o, probe);
            throw CLI::ValidationError("weights", "need --probe x,y,mu or --check-decay");
        }
        if (c_ram->parsed()) return run_ram_check(o);
        if (c_afe->parsed()) return run_afe_check(o, afe_q, afe_char, afe_limit);
        if (c_moment->parsed()) return run_moment(o, moment_Q);
        if (c_sieve->parsed()) return run_sieve_check(o, sieve_trials, sieve_Q, sieve_T, sieve_N);
        if (c_euler->parsed()) return run_euler_const(o, euler_kind, euler_cutoff);
        if (c_ident->parsed()) return run_identities(o, suite);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
