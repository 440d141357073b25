#pragma once
// Numerical sweeps that check each estimate against an independent oracle.
// A sample is a violation only when oracle > bound + error budget; the
// reported slack is bound - oracle - budget.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "exp_sums.hpp"
#include "numerics.hpp"
#include "zeta.hpp"

namespace zetabound {

struct VerificationReport {
    std::string lemma_id;
    std::size_t samples = 0;    // samples actually checked
    std::size_t violations = 0; // oracle > bound + budget
    std::size_t excluded = 0;   // oracle did not converge
    double min_slack = std::numeric_limits<double>::infinity();
    std::string min_slack_inputs;
    double max_oracle = 0;
    double error_budget_used = 0; // largest budget applied to any sample
    std::string notes;

    [[nodiscard]] bool passed() const noexcept { return violations == 0; }

    void record(double oracle, double bound, double budget, const std::string& inputs)
    {
        ++samples;
        const double slack = bound - oracle - budget;
        if (oracle > bound + budget)
            ++violations;
        if (slack < min_slack) {
            min_slack = slack;
            min_slack_inputs = inputs;
        }
        max_oracle = std::max(max_oracle, oracle);
        error_budget_used = std::max(error_budget_used, budget);
    }

    void note(const std::string& s)
    {
        if (!notes.empty())
            notes += "; ";
        notes += s;
    }
};

struct SampleSpec {
    std::size_t samples = 100;
    std::uint64_t seed = 1;
    // Optional t range; each check has its own default.
    std::optional<double> t_min;
    std::optional<double> t_max;
    std::int64_t max_m = 10000; // weight-sum check sweeps M = 1..max_m exhaustively
    int max_n = 8;              // vertex check instance size
};

namespace detail {

inline std::string fmt_inputs(std::initializer_list<std::pair<const char*, double>> kv)
{
    std::ostringstream os;
    os.precision(17);
    bool first = true;
    for (const auto& [k, v] : kv) {
        os << (first ? "" : " ") << k << '=' << v;
        first = false;
    }
    return os.str();
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi)
{
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

inline void check_lemma_2_1(const SampleSpec& spec, VerificationReport& r)
{
    // f = sign * (c exp(-lambda (x - a)) + d / x): positive decreasing, or
    // negative increasing. g = A sin(w1 x + phi) + B cos(w2 x).
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (std::size_t i = 0; i < spec.samples; ++i) {
        const double a = 0.5 + 10 * U(rng);
        const double b = a + 0.1 + 20 * U(rng);
        const double c = 0.1 + 3 * U(rng), d = 3 * U(rng), lambda = 2 * U(rng);
        const double sign = U(rng) < 0.5 ? 1.0 : -1.0;
        const double A = 2 * U(rng) - 1, B = 2 * U(rng) - 1;
        const double w1 = 0.1 + 20 * U(rng), w2 = 0.1 + 20 * U(rng), phi = 2 * pi * U(rng);
        auto f = [=](double x) { return sign * (c * std::exp(-lambda * (x - a)) + d / x); };
        auto g = [=](double x) { return A * std::sin(w1 * x + phi) + B * std::cos(w2 * x); };
        auto gp = [=](double x) { return A * w1 * std::cos(w1 * x + phi) - B * w2 * std::sin(w2 * x); };
        QuadratureOptions opts;
        opts.max_panel_width = 0.5 * 2 * pi / std::max(w1, w2);
        const auto q = integrate_adaptive([&](double x) { return f(x) * gp(x); }, a, b, 1e-11, opts);
        if (!q.converged) {
            ++r.excluded;
            continue;
        }
        // Dense sampling under-estimates max|g|, which only tightens the bound.
        double gmax = 0;
        const int grid = 20000;
        for (int k = 0; k <= grid; ++k)
            gmax = std::max(gmax, std::abs(g(a + (b - a) * k / grid)));
        r.record(std::abs(q.value), 2 * std::abs(f(a)) * gmax, q.error_estimate,
                 fmt_inputs({{"a", a}, {"b", b}, {"sign", sign}, {"w1", w1}, {"w2", w2}}));
    }
    r.note("checked in the <= reading: |int f g'| <= 2|f(a)| max|g|");
}

// Integral-estimate family 2.2. variant: 'a' single sine, 'b' sum/difference,
// 'c' sin(t log x) sin(2 pi v x), 'd' cos(t log x) sin(2 pi v x).
inline void check_lemma_2_2(char variant, const SampleSpec& spec, VerificationReport& r)
{
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const double t_lo = spec.t_min.value_or(2 * pi * std::exp(2.0));
    const double t_hi = spec.t_max.value_or(500.0);
    if (t_lo < 2 * pi * std::exp(2.0) * (1 - 1e-12))
        throw domain_error("verify 2.2: t_min must be >= 2 pi e^2 so that a > e^2 and f decreases");
    for (std::size_t i = 0; i < spec.samples; ++i) {
        const double t = t_lo + (t_hi - t_lo) * U(rng);
        const int v = 1 + static_cast<int>(6 * U(rng));
        const double sigma = U(rng);
        const double a = t / (2 * pi) * (1.1 + 1.9 * U(rng));
        const double b = a + 0.5 + 30 * U(rng);
        const double sgn = U(rng) < 0.5 ? 1.0 : -1.0;
        const double w = 2 * pi * v;
        auto weight = [sigma](double x) { return std::log(x) / std::pow(x, 1 + sigma); };
        std::function<double(double)> h;
        double bound = 0;
        const double big = 8 * pi * v * a * std::log(a) / (std::pow(a, sigma) * (w * w * a * a - t * t));
        switch (variant) {
        case 'a':
            h = [=](double x) { return std::sin(t * std::log(x) + sgn * w * x) * weight(x); };
            bound = 2 * std::log(a) / (std::pow(a, sigma) * (w * a + sgn * t));
            break;
        case 'b':
            h = [=](double x) {
                return (std::sin(t * std::log(x) + w * x) + sgn * std::sin(t * std::log(x) - w * x)) * weight(x);
            };
            bound = big;
            break;
        case 'c':
            h = [=](double x) { return std::sin(t * std::log(x)) * std::sin(w * x) * weight(x); };
            bound = big;
            break;
        default:
            h = [=](double x) { return std::cos(t * std::log(x)) * std::sin(w * x) * weight(x); };
            bound = big;
            break;
        }
        QuadratureOptions opts;
        opts.max_panel_width = 0.5 / (t / (2 * pi * a) + v);
        const auto q = integrate_adaptive(h, a, b, 1e-11, opts);
        if (!q.converged) {
            ++r.excluded;
            continue;
        }
        r.record(std::abs(q.value), bound, q.error_estimate,
                 fmt_inputs({{"t", t}, {"v", v}, {"sigma", sigma}, {"a", a}, {"b", b}, {"sign", sgn}}));
    }
    if (variant == 'c' || variant == 'd')
        r.note("product-to-sum gives half the stated right-hand side; the stated (looser) side is checked");
}

inline void check_lemma_2_3(const SampleSpec& spec, VerificationReport& r)
{
    std::mt19937_64 rng(spec.seed);
    const double t_lo = spec.t_min.value_or(std::exp(2.0));
    const double t_hi = spec.t_max.value_or(300.0);
    if (t_lo < std::exp(2.0) * (1 - 1e-12) || t_hi > 2000)
        throw domain_error("verify 2.3: t range must lie in [e^2, 2000]");
    for (std::size_t i = 0; i < spec.samples; ++i) {
        const double t = log_uniform(rng, t_lo, t_hi);
        const EvalPoint p{t};
        const auto zp = zeta_prime_em(p, default_em_config(p, 1e-10, true));
        const auto head = log_dirichlet_sum(t, 0.5, std::floor(t * t));
        const double E = std::abs(zp.value + head.value);
        r.record(E, tail_error_bound(t), zp.error_bound + head.error_bound, fmt_inputs({{"t", t}}));
    }
    r.note("|E| = |zeta'(s) + sum_{n<=[t^2]} log n n^{-s}| against the final displayed inequality");
}

inline void check_lemma_2_4(const SampleSpec& spec, VerificationReport& r)
{
    std::mt19937_64 rng(spec.seed);
    const double t_lo = spec.t_min.value_or(std::exp(2.0));
    const double t_hi = spec.t_max.value_or(300.0);
    if (t_lo < std::exp(2.0) * (1 - 1e-12) || t_hi > 2000)
        throw domain_error("verify 2.4: t range must lie in [e^2, 2000]");
    for (std::size_t i = 0; i < spec.samples; ++i) {
        const double t = log_uniform(rng, t_lo, t_hi);
        const auto s = log_dirichlet_sum(t, t, t * t);
        r.record(std::abs(s.value), mid_tail_sum_bound(t), s.error_bound, fmt_inputs({{"t", t}}));
    }
}

inline void check_lemma_2_5(const SampleSpec& spec, VerificationReport& r)
{
    if (spec.max_n < 1 || spec.max_n > 20)
        throw domain_error("verify 2.5: max_n must lie in [1, 20]");
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::uniform_int_distribution<int> N(1, spec.max_n);
    for (std::size_t i = 0; i < spec.samples; ++i) {
        const int n = N(rng);
        std::vector<double> amps(static_cast<std::size_t>(n)), phases(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            amps[k] = 0.01 + U(rng);
            phases[k] = 2 * pi * U(rng);
        }
        std::sort(amps.begin(), amps.end());
        complex direct{};
        double mass = 0;
        for (int k = 0; k < n; ++k) {
            direct += std::polar(amps[k], phases[k]);
            mass += amps[k];
        }
        r.record(std::abs(direct), vertex_max_bound(amps, phases), 8 * n * machine_eps * mass,
                 fmt_inputs({{"n", n}, {"instance", static_cast<double>(i)}}));
    }
}

inline void check_lemma_4_1(const SampleSpec& spec, VerificationReport& r)
{
    std::mt19937_64 rng(spec.seed);
    const double t_lo = spec.t_min.value_or(1e3);
    const double t_hi = spec.t_max.value_or(1e5);
    for (std::size_t i = 0; i < spec.samples; ++i) {
        const double t = log_uniform(rng, t_lo, t_hi);
        // |f''| = t/(2 pi x^2) on [N+1, N+L]; W > 1 needs N + L > sqrt(t / 2 pi).
        const double n_lo = std::ceil(std::sqrt(t / (2 * pi)));
        const auto N = static_cast<std::int64_t>(std::floor(log_uniform(rng, n_lo, t)));
        std::uniform_int_distribution<std::int64_t> Ld(1, std::max<std::int64_t>(1, std::min<std::int64_t>(N, 20000)));
        const std::int64_t L = Ld(rng);
        const double x0 = static_cast<double>(N + 1), x1 = static_cast<double>(N + L);
        const double V = 2 * pi * x0 * x0 / t;
        // L = 1 pins f'' to a point; any W just above V is admissible.
        const double W = std::max(2 * pi * x1 * x1 / t, V * (1 + 1e-12));
        if (!(W > 1)) {
            ++r.excluded;
            continue;
        }
        const complex S = exp_sum_exact(PhaseFunction::log_phase(t), N, L);
        const double budget = static_cast<double>(L) * machine_eps * (t * std::log(x1) + 4);
        r.record(std::abs(S), vdc_second_derivative_bound({static_cast<double>(L), V, W}), budget,
                 fmt_inputs({{"t", t}, {"N", static_cast<double>(N)}, {"L", static_cast<double>(L)}}));
    }
}

inline void check_lemma_4_3(const SampleSpec& spec, VerificationReport& r)
{
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (std::size_t i = 0; i < spec.samples; ++i) {
        const bool log_kind = i % 2 == 0;
        const PhaseFunction f = log_kind ? PhaseFunction::log_phase(log_uniform(rng, 1e2, 1e5))
                                         : PhaseFunction::quadratic(U(rng) * 0.01, U(rng), U(rng));
        const auto N = static_cast<std::int64_t>(10 + std::floor(2000 * U(rng)));
        const auto L = static_cast<std::int64_t>(1 + std::floor(400 * U(rng)));
        const auto M = static_cast<std::int64_t>(1 + std::floor(static_cast<double>(std::min<std::int64_t>(L, 60)) * U(rng)));
        const complex S = exp_sum_exact(f, N, L);
        const auto diffmax = weyl_diffmax_exact(f, N, L, M);
        const double lhs = std::norm(S);
        const double budget = 8 * static_cast<double>(L * L) * machine_eps * (1 + static_cast<double>(N + L));
        r.record(lhs, weyl_differencing_rhs(static_cast<double>(L), M, diffmax), budget,
                 fmt_inputs({{log_kind ? "t" : "a", f.parameters[0]},
                             {"N", static_cast<double>(N)},
                             {"L", static_cast<double>(L)},
                             {"M", static_cast<double>(M)}}));
    }
}

inline void check_lemma_4_6(const SampleSpec& spec, VerificationReport& r)
{
    if (spec.max_m < 1)
        throw domain_error("verify 4.6: max_m must be >= 1");
    double worst_closed = 0;
    bool strict34 = true;
    for (std::int64_t M = 1; M <= spec.max_m; ++M) {
        const WeightSums w = weight_sums(M);
        const double Md = static_cast<double>(M);
        const double budget = 4 * Md * machine_eps * std::max(1.0, Md * Md);
        int worst = 0;
        for (int k = 1; k < 4; ++k)
            if (w.bound[k] - w.exact[k] < w.bound[worst] - w.exact[worst])
                worst = k;
        r.record(w.exact[worst], w.bound[worst], budget,
                 fmt_inputs({{"M", Md}, {"relation", static_cast<double>(worst + 1)}}));
        worst_closed = std::max({worst_closed, std::abs(w.exact[2] - (Md * Md - 1) / 6) / std::max(1.0, Md * Md),
                                 std::abs(w.exact[3] - (Md - 1) / 2) / Md});
        strict34 = strict34 && w.exact[2] < w.bound[2] && w.exact[3] < w.bound[3];
    }
    std::ostringstream os;
    os.precision(3);
    os << "relations 3 and 4 hold with strict inequality" << (strict34 ? "" : " (NOT for every M)")
       << ": exact values are (M^2-1)/6 and (M-1)/2, not M^2/6 and M/2 (max relative deviation from those closed forms "
       << worst_closed << ")";
    r.note(os.str());
}

} // namespace detail

inline const std::vector<std::string>& supported_lemmas()
{
    static const std::vector<std::string> ids = {"2.1", "2.2a", "2.2b", "2.2c", "2.2d", "2.3",
                                                 "2.4", "2.5",  "4.1",  "4.3",  "4.6"};
    return ids;
}

inline VerificationReport verify_lemma(const std::string& id, const SampleSpec& spec)
{
    VerificationReport r;
    r.lemma_id = id;
    if (id == "2.1")
        detail::check_lemma_2_1(spec, r);
    else if (id.size() == 4 && id.rfind("2.2", 0) == 0 && id[3] >= 'a' && id[3] <= 'd')
        detail::check_lemma_2_2(id[3], spec, r);
    else if (id == "2.3")
        detail::check_lemma_2_3(spec, r);
    else if (id == "2.4")
        detail::check_lemma_2_4(spec, r);
    else if (id == "2.5")
        detail::check_lemma_2_5(spec, r);
    else if (id == "4.1")
        detail::check_lemma_4_1(spec, r);
    else if (id == "4.3")
        detail::check_lemma_4_3(spec, r);
    else if (id == "4.6")
        detail::check_lemma_4_6(spec, r);
    else
        throw invalid_input("verify_lemma: unknown lemma id '" + id + "'");
    if (r.excluded > 0)
        r.note(std::to_string(r.excluded) + " samples excluded: oracle did not converge");
    return r;
}

/// Geometric grid of n points from t_min to t_max inclusive.
inline std::vector<double> geometric_grid(double t_min, double t_max, std::size_t n)
{
    if (!(t_min > 0) || !(t_max >= t_min) || n == 0)
        throw domain_error("geometric_grid: require 0 < t_min <= t_max and n >= 1");
    std::vector<double> out(n);
    const double lr = std::log(t_max / t_min);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = n == 1 ? t_min : t_min * std::exp(lr * static_cast<double>(i) / static_cast<double>(n - 1));
    if (n > 1)
        out.back() = t_max;
    return out;
}

/// |zeta'(1/2 + it)| against theorem `which` (1: closed form, 2: parametric)
/// on a geometric grid. The oracle error bound is subtracted from the slack.
inline VerificationReport verify_theorem_envelope(int which, double t_min, double t_max, std::size_t n,
                                                  const std::optional<BoundParams>& params = std::nullopt,
                                                  double oracle_budget = 1e-4)
{
    if (which != 1 && which != 2)
        throw invalid_input("verify_theorem_envelope: theorem must be 1 or 2");
    if (n < 1)
        throw domain_error("verify_theorem_envelope: n_samples must be >= 1");
    if (detail::below(t_min, which == 1 ? e2 : e6))
        throw domain_error(which == 1 ? "verify_theorem_envelope: theorem 1 requires t >= e^2"
                                      : "verify_theorem_envelope: theorem 2 requires t >= e^6");
    VerificationReport r;
    r.lemma_id = which == 1 ? "theorem1" : "theorem2";
    const BoundParams p = params.value_or(BoundParams{});
    std::optional<BoundCoefficients> coeffs;
    if (which == 2)
        coeffs = theorem2_coeffs(p);
    for (double t : geometric_grid(t_min, t_max, n)) {
        const CertifiedComplex z = zeta_prime_oracle({t}, oracle_budget);
        if (!z.converged) {
            ++r.excluded;
            continue;
        }
        const double bound = which == 1 ? theorem1_bound(t).total : q_polynomial(coeffs->Q, t);
        r.record(std::abs(z.value), bound, z.error_bound, detail::fmt_inputs({{"t", t}}));
    }
    if (r.excluded > 0)
        r.note(std::to_string(r.excluded) + " samples excluded: oracle did not converge");
    return r;
}

} // namespace zetabound
