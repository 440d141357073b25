// Acceptance runner: `acceptance N` checks criterion N and prints one line.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "zetabound/zetabound.hpp"

using namespace zetabound;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

Outcome calibration()
{
    const EvalPoint s2{0.0, 2.0};
    const auto z = zeta_em(s2, {50, 5, 1e-12});
    const auto d = zeta_prime_em(s2, {50, 5, 1e-12});
    const auto ref = oracle::zeta_prime_2();
    const double ez = std::abs(z.value - pi * pi / 6);
    const double ed = std::abs(d.value.real() - ref.mid) + ref.radius;
    return {ez <= 1e-10 && ed <= 1e-8 && std::abs(d.value.imag()) == 0,
            "|zeta-pi^2/6|=" + fmt(ez) + " |zeta'-oracle|=" + fmt(ed) + " oracle=" + fmt(ref.mid)};
}

Outcome cross_oracle()
{
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> U(1, 1e4);
    int bad = 0, above_tol = 0;
    double worst = 0, widest = 0;
    for (int i = 0; i < 100; ++i) {
        const EvalPoint p{U(rng)};
        const auto z = zeta_em(p, default_em_config(p));
        const auto o = eta_oracle(p);
        const double gap = std::abs(z.value - o.value);
        const double budget = z.error_bound + o.error_bound;
        bad += gap > budget;
        above_tol += !z.converged;
        worst = std::max(worst, gap / budget);
        widest = std::max(widest, budget);
    }
    // Points with a certified bound above the 1e-9 default tolerance are
    // reported, not failed: the bound is still rigorous, only wider.
    return {bad == 0, "disagreements=" + std::to_string(bad) + " max gap/budget=" + fmt(worst) + " max budget="
                          + fmt(widest) + " bound above 1e-9 at " + std::to_string(above_tol) + " points"};
}

Outcome envelope(int which, double lo, double hi, std::size_t n)
{
    const auto r = verify_theorem_envelope(which, lo, hi, n);
    return {r.violations == 0 && r.excluded == 0 && r.samples == n && r.min_slack > 0,
            "samples=" + std::to_string(r.samples) + " excluded=" + std::to_string(r.excluded)
                + " violations=" + std::to_string(r.violations) + " min_slack=" + fmt(r.min_slack) + " at "
                + r.min_slack_inputs};
}

Outcome closed_form()
{
    const double v = theorem1_bound(e2).total;
    return {std::abs(v - 22.493) <= 1e-3, "theorem1(e^2)=" + fmt(v)};
}

Outcome tail_consistency()
{
    int bad = 0;
    std::size_t n = 0;
    double min_gap = INFINITY;
    for (double t : geometric_grid(e2, 1e6, 2000)) {
        const double L = std::log(t);
        const double v = tail_error_bound(t);
        ++n;
        bad += v > 4.455 + 6.047 * L;
        min_gap = std::min(min_gap, 4.455 + 6.047 * L - v);
        if (t >= e6) {
            bad += v > 4.008 + 6.001 * L;
            min_gap = std::min(min_gap, 4.008 + 6.001 * L - v);
        }
    }
    return {bad == 0, "points=" + std::to_string(n) + " failures=" + std::to_string(bad) + " min gap=" + fmt(min_gap)};
}

Outcome lemma(const std::string& id, std::size_t samples, std::int64_t max_m = 10000)
{
    SampleSpec s;
    s.samples = samples;
    s.max_m = max_m;
    if (id == "2.4") {
        s.t_min = e2;
        s.t_max = 300;
    }
    const auto r = verify_lemma(id, s);
    const std::size_t want = id == "4.6" ? static_cast<std::size_t>(max_m) : samples;
    return {r.violations == 0 && r.excluded == 0 && r.samples == want,
            "lemma " + id + " samples=" + std::to_string(r.samples) + " violations=" + std::to_string(r.violations)
                + " min_slack=" + fmt(r.min_slack)};
}

Outcome lemma_4_3_and_4_6()
{
    const Outcome a = lemma("4.3", 100);
    SampleSpec s;
    s.max_m = 10000;
    const auto r = verify_lemma("4.6", s);
    const bool noted = r.notes.find("strict inequality:") != std::string::npos
                       && r.notes.find("(M^2-1)/6") != std::string::npos
                       && r.notes.find("(M-1)/2") != std::string::npos;
    return {a.ok && r.violations == 0 && r.samples == 10000 && noted,
            a.detail + "; lemma 4.6 M<=10000 violations=" + std::to_string(r.violations)
                + (noted ? " (strictness noted)" : " (strictness note missing)")};
}

Outcome assembly()
{
    const BoundParams p0{};
    const auto coeffs = theorem2_coeffs(p0);
    bool q_ok = true;
    for (double q : coeffs.Q)
        q_ok = q_ok && std::isfinite(q) && q > 0;
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> U(6, std::log(1e5));
    int dominance_fail = 0;
    for (int i = 0; i < 50; ++i) {
        const double t = std::exp(U(rng));
        dominance_fail += q_polynomial(coeffs.Q, t) < theorem2_parts(t, p0).total;
    }
    const Outcome env = envelope(2, e6, 1e5, 200);
    return {q_ok && dominance_fail == 0 && env.ok,
            std::string("Q positive=") + (q_ok ? "yes" : "no") + " dominance failures=" + std::to_string(dominance_fail)
                + "; envelope " + env.detail};
}

Outcome closed_forms()
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(0, 1);
    int bad = 0;
    double min_ratio = INFINITY;
    for (int i = 0; i < 100; ++i) {
        const double t = std::exp(6 + U(rng) * (std::log(1e12) - 6));
        const double r = 1.05 + 7 * U(rng);
        // (t^{2/3}, t]: M_1 and M_2(1), M_2(3), M_2(5)
        for (double gamma : {0.5, -0.5, -1.5, -2.5}) {
            const double closed = geometric_log_sum_bound(2.0 / 3.0, 1.0, r, gamma)(t);
            const double exact = oracle::geometric_block_sum(t, 2.0 / 3.0, 1.0, r, gamma);
            bad += exact > closed;
            min_ratio = std::min(min_ratio, closed / exact);
        }
        // (t^{1/3}, t^{2/3}]
        for (double gamma : {0.5, 0.0, -0.5, -1.0}) {
            const double closed = geometric_log_sum_bound(1.0 / 3.0, 2.0 / 3.0, r, gamma)(t);
            const double exact = oracle::geometric_block_sum(t, 1.0 / 3.0, 2.0 / 3.0, r, gamma);
            bad += exact > closed;
            min_ratio = std::min(min_ratio, closed / exact);
        }
    }
    return {bad == 0, "failures=" + std::to_string(bad) + " min closed/exact=" + fmt(min_ratio)};
}

Outcome optimizer()
{
    const BoundParams p0{};
    const auto obj = Objective::bound_at(1e4);
    const auto r = optimize_params(obj, {}, 4000);
    const double at_p0 = obj(p0);
    const auto c = crossover_scan_log(p0, 300 * std::log(10.0));
    bool certified = false;
    std::string cx = "no crossover";
    if (c) {
        const auto coeffs = theorem2_coeffs(p0);
        const double d = std::log(1.01);
        certified = log_theorem2_bound(c->log_t + d, coeffs) < log_theorem1_bound(c->log_t + d)
                    && log_theorem2_bound(c->log_t - d, coeffs) >= log_theorem1_bound(c->log_t - d);
        cx = "crossover log t*=" + fmt(c->log_t) + (certified ? " certified" : " NOT certified");
    }
    return {r.objective_value <= at_p0 && c && certified,
            "optimized=" + fmt(r.objective_value) + " p0=" + fmt(at_p0) + "; " + cx};
}

} // namespace

int main(int argc, char** argv)
{
    if (argc != 2) {
        std::fprintf(stderr, "usage: acceptance N\n");
        return 2;
    }
    const int n = std::atoi(argv[1]);
    struct Entry {
        double limit_s;
        std::function<Outcome()> run;
    };
    const std::array<Entry, 12> criteria = {{
        {1, calibration},
        {60, cross_oracle},
        {600, [] { return envelope(1, e2, 1e5, 500); }},
        {1, closed_form},
        {1, tail_consistency},
        {60, [] { return lemma("2.4", 50); }},
        {60, [] { return lemma("4.1", 200); }},
        {60, lemma_4_3_and_4_6},
        {60, [] { return lemma("2.5", 10000); }},
        {600, assembly},
        {10, closed_forms},
        {300, optimizer},
    }};
    if (n < 1 || n > 12) {
        std::fprintf(stderr, "criterion must be 1..12\n");
        return 2;
    }
    const auto& c = criteria[static_cast<std::size_t>(n - 1)];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = c.run();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.limit_s;
    const bool pass = o.ok && in_time;
    std::printf("criterion %d: %s  %s  [%.2fs, limit %gs%s]\n", n, pass ? "PASS" : "FAIL", o.detail.c_str(), secs,
                c.limit_s, in_time ? "" : ", exceeded");
    return pass ? 0 : 1;
}
