#pragma once
// Exact evaluation of the Dirichlet-type and exponential sums that the
// bounds are built from, plus the explicit estimates used to control them:
// the second-derivative test, Weyl differencing, the vertex bound for
// weighted unit-phasor sums, the triangular weight sums and the geometric
// block decomposition of a range.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "numerics.hpp"
#include "zeta.hpp"

namespace zetabound {

/// t^e, exact at the cube-root exponents used for block ranges.
inline double pow_exponent(double t, double e)
{
    if (e == 1.0)
        return t;
    if (std::abs(e - 1.0 / 3.0) < 1e-15)
        return std::cbrt(t);
    if (std::abs(e - 2.0 / 3.0) < 1e-15) {
        const double c = std::cbrt(t);
        return c * c;
    }
    return std::pow(t, e);
}

/// Sum_{a < n <= b} log(n) n^{-1/2 - i t} by direct compensated summation.
/// The error bound covers rounding, including the phase error of t log n.
inline CertifiedComplex log_dirichlet_sum(double t, double a, double b)
{
    if (!(a > 0) || !(b >= a))
        throw domain_error("log_dirichlet_sum: require 0 < a <= b");
    if (b - a > 1e8)
        throw domain_error("log_dirichlet_sum: range longer than 1e8 terms; use sampled verification instead");
    const auto first = static_cast<std::int64_t>(std::floor(a)) + 1;
    const auto last = static_cast<std::int64_t>(std::floor(b));
    const EvalPoint p{t, 0.5};
    ComplexAccumulator acc;
    double rounding = 0;
    for (std::int64_t n = first; n <= last; ++n) {
        const double ln = std::log(static_cast<double>(n));
        double err = 0;
        acc += ln * detail::power_neg_s(ln, p, err);
        rounding += ln * err;
    }
    return {acc.value(), rounding + acc.error_bound(), true};
}

/// Real phase f for sums of e^{2 pi i f(n)}.
struct PhaseFunction {
    enum class Kind { log_phase, quadratic, custom };

    Kind kind = Kind::log_phase;
    // log_phase: {t}, f(x) = -t log(x) / (2 pi)
    // quadratic: {a, b, c}, f(x) = a x^2 + b x + c
    std::vector<double> parameters;
    std::function<double(double)> custom;

    static PhaseFunction log_phase(double t)
    {
        if (!(t > 0))
            throw domain_error("PhaseFunction::log_phase: t must be positive");
        return {Kind::log_phase, {t}, {}};
    }
    static PhaseFunction quadratic(double a, double b, double c) { return {Kind::quadratic, {a, b, c}, {}}; }
    static PhaseFunction from(std::function<double(double)> f) { return {Kind::custom, {}, std::move(f)}; }

    [[nodiscard]] double operator()(double x) const
    {
        switch (kind) {
        case Kind::log_phase:
            return -parameters.at(0) * std::log(x) / (2 * pi);
        case Kind::quadratic:
            return (parameters.at(0) * x + parameters.at(1)) * x + parameters.at(2);
        case Kind::custom:
            return custom(x);
        }
        return 0;
    }

    /// e^{2 pi i f(n)}; for log_phase the phase is formed as -t log n directly.
    [[nodiscard]] complex unit(double n) const
    {
        if (kind == Kind::log_phase)
            return std::polar(1.0, -parameters[0] * std::log(n));
        return std::polar(1.0, 2 * pi * (*this)(n));
    }

    /// e^{2 pi i (f(n+m) - f(n))}.
    [[nodiscard]] complex shifted_unit(double n, double m) const
    {
        if (kind == Kind::log_phase)
            return std::polar(1.0, -parameters[0] * std::log1p(m / n));
        return std::polar(1.0, 2 * pi * ((*this)(n + m) - (*this)(n)));
    }
};

/// Sum_{n=N+1}^{N+L} e^{2 pi i f(n)}.
inline complex exp_sum_exact(const PhaseFunction& f, std::int64_t N, std::int64_t L)
{
    if (L < 0)
        throw domain_error("exp_sum_exact: L must be non-negative");
    ComplexAccumulator acc;
    for (std::int64_t n = N + 1; n <= N + L; ++n)
        acc += f.unit(static_cast<double>(n));
    return acc.value();
}

/// Parameters of the second-derivative test: block length and the
/// curvature window 1/W <= |f''| <= 1/V.
struct VdCParams {
    double L = 0;
    double V = 1;
    double W = 2;
};

/// (1/5)(L/V + 1)(8 sqrt(W) + 15).
inline double vdc_second_derivative_bound(const VdCParams& p)
{
    if (!(p.W > 1))
        throw domain_error("vdc_second_derivative_bound: W must exceed 1");
    if (!(p.V > 0) || !(p.V < p.W))
        throw domain_error("vdc_second_derivative_bound: require 0 < V < W");
    if (p.L < 0)
        throw domain_error("vdc_second_derivative_bound: L must be non-negative");
    return 0.2 * (p.L / p.V + 1.0) * (8.0 * std::sqrt(p.W) + 15.0);
}

/// Right-hand side of the Weyl differencing inequality, a bound for |S|^2:
///   (L+M)L/M + 2(L+M)/M * sum_{m=1}^{M-1} (1 - m/M) diffmax[m-1]
/// where diffmax[m-1] bounds max_{K<=L} |S'_m(K)|.
inline double weyl_differencing_rhs(double L, std::int64_t M, std::span<const double> diffmax)
{
    if (M < 1)
        throw domain_error("weyl_differencing_rhs: M must be >= 1");
    if (static_cast<std::int64_t>(diffmax.size()) != M - 1)
        throw invalid_input("weyl_differencing_rhs: diffmax must have M-1 entries");
    Accumulator<double> weighted;
    const double Md = static_cast<double>(M);
    for (std::int64_t m = 1; m < M; ++m) {
        const double d = diffmax[static_cast<std::size_t>(m - 1)];
        if (!(d >= 0))
            throw invalid_input("weyl_differencing_rhs: diffmax entries must be >= 0");
        weighted.add((1.0 - static_cast<double>(m) / Md) * d);
    }
    return (L + Md) * L / Md + 2.0 * (L + Md) / Md * weighted.value();
}

/// Exact max_{K<=L} |sum_{n=N+1}^{N+K} e^{2 pi i (f(n+m) - f(n))}| for m = 1..M-1.
inline std::vector<double> weyl_diffmax_exact(const PhaseFunction& f, std::int64_t N, std::int64_t L, std::int64_t M)
{
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(M - 1, 0)));
    for (std::int64_t m = 1; m < M; ++m) {
        complex partial{};
        double best = 0;
        for (std::int64_t n = N + 1; n <= N + L; ++n) {
            partial += f.shifted_unit(static_cast<double>(n), static_cast<double>(m));
            best = std::max(best, std::abs(partial));
        }
        out.push_back(best);
    }
    return out;
}

/// a_n * max{1, b_2, ..., b_n}, where b_r is the largest modulus of a sum
/// of r distinct unit phasors e^{i x_k}. Exact enumeration, n <= 20.
inline double vertex_max_bound(std::span<const double> amps, std::span<const double> phases)
{
    const std::size_t n = amps.size();
    if (n != phases.size())
        throw invalid_input("vertex_max_bound: amps and phases differ in length");
    if (n == 0)
        return 0.0;
    if (n > 20)
        throw domain_error("vertex_max_bound: n > 20; use vertex_max_bound_sampled");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(amps[i] > 0))
            throw invalid_input("vertex_max_bound: amplitudes must be positive");
        if (i > 0 && amps[i] < amps[i - 1])
            throw invalid_input("vertex_max_bound: amplitudes must be non-decreasing");
    }
    std::vector<complex> unit(n);
    for (std::size_t i = 0; i < n; ++i)
        unit[i] = std::polar(1.0, phases[i]);

    // Gray-code walk over all subsets: one add/remove per step.
    double best = 1.0;
    complex partial{};
    const std::uint32_t count = std::uint32_t{1} << n;
    for (std::uint32_t g = 1; g < count; ++g) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(g));
        const std::uint32_t gray = g ^ (g >> 1);
        if (gray & (std::uint32_t{1} << bit))
            partial += unit[bit];
        else
            partial -= unit[bit];
        best = std::max(best, std::abs(partial));
    }
    return amps[n - 1] * best;
}

/// Monte-Carlo estimate of vertex_max_bound for large n. The result is a
/// lower estimate of the true value and is never used as a proof step.
inline double vertex_max_bound_sampled(std::span<const double> amps, std::span<const double> phases,
                                       std::size_t samples, std::uint64_t seed)
{
    const std::size_t n = amps.size();
    if (n != phases.size())
        throw invalid_input("vertex_max_bound_sampled: amps and phases differ in length");
    if (n == 0)
        return 0.0;
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);
    double best = 1.0;
    for (std::size_t s = 0; s < samples; ++s) {
        complex partial{};
        for (std::size_t i = 0; i < n; ++i)
            if (coin(rng))
                partial += std::polar(1.0, phases[i]);
        best = std::max(best, std::abs(partial));
    }
    // Half-plane subsets are near-optimal; include each half-plane cut.
    for (std::size_t k = 0; k < n; ++k) {
        complex partial{};
        for (std::size_t i = 0; i < n; ++i)
            if (std::cos(phases[i] - phases[k]) > 0)
                partial += std::polar(1.0, phases[i]);
        best = std::max(best, std::abs(partial));
    }
    return amps[n - 1] * best;
}

/// Triangular-weight sums over m = 1..M-1 and their closed-form bounds.
struct WeightSums {
    // sum (1-m/M) m^{1/2}, sum (1-m/M) m^{-1/2}, sum (1-m/M) m, sum (1-m/M)
    std::array<double, 4> exact{};
    // (4/15) M^{3/2}, (4/3) M^{1/2}, M^2/6, M/2
    std::array<double, 4> bound{};
};

inline WeightSums weight_sums(std::int64_t M)
{
    if (M < 1)
        throw domain_error("weight_sums: M must be >= 1");
    std::array<Accumulator<double>, 4> acc;
    const double Md = static_cast<double>(M);
    for (std::int64_t m = 1; m < M; ++m) {
        const double md = static_cast<double>(m);
        const double w = 1.0 - md / Md;
        const double r = std::sqrt(md);
        acc[0].add(w * r);
        acc[1].add(w / r);
        acc[2].add(w * md);
        acc[3].add(w);
    }
    WeightSums out;
    for (int i = 0; i < 4; ++i)
        out.exact[i] = acc[i].value();
    out.bound = {4.0 / 15.0 * Md * std::sqrt(Md), 4.0 / 3.0 * std::sqrt(Md), Md * Md / 6.0, Md / 2.0};
    return out;
}

/// One block (N_lo, N_hi] of a geometric decomposition, with X_lo < N_lo + 1
/// and N_hi <= X_hi.
struct Block {
    double X_lo = 0;
    double X_hi = 0;
    std::int64_t N_lo = 0;
    std::int64_t N_hi = 0;

    [[nodiscard]] std::int64_t length() const noexcept { return N_hi - N_lo; }
};

/// Blocks X_j = ratio^j t^alpha, N_j = floor(X_j) covering the integers in
/// (t^alpha, t^upper]. The last block is cut at floor(t^upper).
struct BlockScheme {
    double t = 0;
    double alpha = 0;
    double upper = 0;
    double ratio = 2;
    std::vector<Block> blocks;

    [[nodiscard]] std::size_t J() const noexcept { return blocks.size(); }
    [[nodiscard]] std::int64_t first() const noexcept { return blocks.empty() ? 0 : blocks.front().N_lo; }
    [[nodiscard]] std::int64_t last() const noexcept { return blocks.empty() ? 0 : blocks.back().N_hi; }
};

inline BlockScheme block_scheme(double t, double alpha, double ratio, double upper_exponent)
{
    if (!(t > 1))
        throw domain_error("block_scheme: t must exceed 1");
    if (!(ratio > 1))
        throw domain_error("block_scheme: ratio must exceed 1");
    if (!(alpha > 0) || !(alpha < upper_exponent))
        throw domain_error("block_scheme: require 0 < alpha < upper_exponent");
    const double X0 = pow_exponent(t, alpha);
    if (X0 < 2)
        throw domain_error("block_scheme: t^alpha < 2, blocks degenerate");

    BlockScheme scheme{t, alpha, upper_exponent, ratio, {}};
    const auto top = static_cast<std::int64_t>(std::floor(pow_exponent(t, upper_exponent)));
    const double log_ratio = std::log(ratio);
    double X_lo = X0;
    auto N_lo = static_cast<std::int64_t>(std::floor(X_lo));
    for (int j = 1; N_lo < top; ++j) {
        const double X_hi = X0 * std::exp(j * log_ratio);
        const auto N_hi = std::min(static_cast<std::int64_t>(std::floor(X_hi)), top);
        if (N_hi > N_lo)
            scheme.blocks.push_back({X_lo, X_hi, N_lo, N_hi});
        X_lo = X_hi;
        N_lo = static_cast<std::int64_t>(std::floor(X_hi));
    }
    return scheme;
}

} // namespace zetabound
