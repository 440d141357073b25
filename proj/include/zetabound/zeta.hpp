#pragma once
// Evaluation of zeta(s) and zeta'(s) with explicit error bounds.
//
// The production path is Euler-Maclaurin summation (zeta_em /
// zeta_prime_em). An independent path built on the alternating eta series
// with Borwein's acceleration (eta_oracle / zeta_prime_oracle) exists only
// to cross-check it and to drive the envelope sweeps.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "numerics.hpp"

namespace zetabound {

using complex = std::complex<double>;

/// A point s = sigma + i t. Production paths use sigma = 1/2; sigma = 2 is
/// used for calibration only.
struct EvalPoint {
    double t = 0;
    double sigma = 0.5;

    [[nodiscard]] complex s() const noexcept { return {sigma, t}; }
};

/// Euler-Maclaurin truncation: partial sum up to N-1 plus v Bernoulli corrections.
struct EMConfig {
    std::int64_t N = 64;
    int v = 6;
    double tol = 1e-9;
};

/// A value together with an absolute error bound. `converged` is false when
/// the bound exceeds the tolerance the caller asked for.
struct CertifiedComplex {
    complex value{};
    double error_bound = 0;
    bool converged = true;
};

namespace detail {

inline void validate_em(const EvalPoint& p, const EMConfig& cfg)
{
    if (cfg.N < 2)
        throw domain_error("EMConfig: N must be >= 2");
    if (cfg.v < 0 || cfg.v > 15)
        throw domain_error("EMConfig: v must lie in [0, 15]");
    if (!(p.sigma + 2.0 * cfg.v > 0))
        throw domain_error("EMConfig: Re(s) + 2v + 1 > 1 violated");
    if (p.sigma == 1.0 && p.t == 0.0)
        throw domain_error("zeta has a pole at s = 1");
}

inline double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

// log of |s (s+1) ... (s+count-1)|
inline double log_abs_rising(complex s, int count)
{
    double acc = 0;
    for (int i = 0; i < count; ++i)
        acc += std::log(std::abs(s + static_cast<double>(i)));
    return acc;
}

// n^{-s}, with the rounding error of the phase t*log(n) folded into `err`.
inline complex power_neg_s(double log_n, const EvalPoint& p, double& err)
{
    const double mag = std::exp(-p.sigma * log_n);
    err += mag * machine_eps * (std::abs(p.t) * log_n + 4.0);
    return std::polar(mag, -p.t * log_n);
}

} // namespace detail

/// Upper bound for |R_{2v}| = |s(s+1)..(s+2v-1)/(2v)! * int_N^inf B~_{2v}(x) x^{-s-2v} dx|
/// using |B~_{2v}(x)| <= |B_{2v}|. Requires v >= 1.
inline double em_remainder_bound(const EvalPoint& p, std::int64_t N, int v)
{
    if (v < 1)
        throw domain_error("em_remainder_bound: v must be >= 1 (v = 0 uses the sawtooth bound)");
    if (N < 1)
        throw domain_error("em_remainder_bound: N must be positive");
    const double a = p.sigma + 2.0 * v; // exponent of x in the integrand
    if (!(a > 1))
        throw domain_error("em_remainder_bound: Re(s) + 2v + 1 > 1 violated");
    const double logN = std::log(static_cast<double>(N));
    const double log_bound = detail::log_abs_rising(p.s(), 2 * v) - detail::log_factorial(2 * v)
                             + std::log(std::abs(bernoulli_number(2 * v))) + (1.0 - a) * logN
                             - std::log(a - 1.0);
    return std::exp(log_bound);
}

/// Upper bound for |d/ds R_{2v}|. Differentiating under the integral gives
///   |R'| <= |B_{2v}|/(2v)! |P| N^{1-a} [ (sum_i 1/|s+i|)/(a-1) + log N/(a-1) + 1/(a-1)^2 ]
/// with P = s(s+1)..(s+2v-1) and a = sigma + 2v. For v = 0 the sawtooth
/// |x - [x] - 1/2| <= 1/2 is used instead.
inline double em_derivative_remainder_bound(const EvalPoint& p, std::int64_t N, int v)
{
    const double logN = std::log(static_cast<double>(N));
    const complex s = p.s();
    if (v == 0) {
        const double sig = p.sigma;
        if (!(sig > 0))
            throw domain_error("em_derivative_remainder_bound: v = 0 needs sigma > 0");
        const double Nps = std::exp(-sig * logN);
        return 0.5 * (Nps / sig + std::abs(s) * Nps * (logN / sig + 1.0 / (sig * sig)));
    }
    const double a = p.sigma + 2.0 * v;
    if (!(a > 1))
        throw domain_error("em_derivative_remainder_bound: Re(s) + 2v + 1 > 1 violated");
    double inv_sum = 0;
    for (int i = 0; i < 2 * v; ++i)
        inv_sum += 1.0 / std::abs(s + static_cast<double>(i));
    const double base = em_remainder_bound(p, N, v) * (a - 1.0); // |B||P|N^{1-a}/(2v)!
    return base * (inv_sum / (a - 1.0) + logN / (a - 1.0) + 1.0 / ((a - 1.0) * (a - 1.0)));
}

namespace detail {

inline double em_value_remainder(const EvalPoint& p, std::int64_t N, int v)
{
    if (v == 0) {
        if (!(p.sigma > 0))
            throw domain_error("zeta_em: v = 0 needs sigma > 0");
        return 0.5 * std::abs(p.s()) * std::exp(-p.sigma * std::log(static_cast<double>(N))) / p.sigma;
    }
    return em_remainder_bound(p, N, v);
}

} // namespace detail

/// Euler-Maclaurin evaluation of zeta(s).
inline CertifiedComplex zeta_em(const EvalPoint& p, const EMConfig& cfg)
{
    detail::validate_em(p, cfg);
    const complex s = p.s();
    const auto N = cfg.N;
    const double Nd = static_cast<double>(N);
    const double logN = std::log(Nd);

    ComplexAccumulator sum;
    double rounding = 0;
    for (std::int64_t n = 1; n < N; ++n)
        sum += detail::power_neg_s(std::log(static_cast<double>(n)), p, rounding);

    double tail_err = 0;
    const complex N_ms = detail::power_neg_s(logN, p, tail_err); // N^{-s}
    sum += N_ms * Nd / (s - 1.0);
    sum += 0.5 * N_ms;

    // Corrections B_{2j}/(2j)! s(s+1)..(s+2j-2) N^{-s-2j+1}
    complex rising = s; // s(s+1)..(s+2j-2), 2j-1 factors
    double N_pow = 1.0 / Nd;
    for (int j = 1; j <= cfg.v; ++j) {
        if (j > 1) {
            rising *= (s + (2.0 * j - 3.0)) * (s + (2.0 * j - 2.0));
            N_pow /= Nd * Nd;
        }
        const complex term = bernoulli_number(2 * j) / std::exp(detail::log_factorial(2 * j)) * rising * N_ms * N_pow;
        if (!std::isfinite(term.real()) || !std::isfinite(term.imag()))
            throw domain_error("zeta_em: correction term overflowed; reduce v");
        sum += term;
    }

    CertifiedComplex out;
    out.value = sum.value();
    out.error_bound = detail::em_value_remainder(p, N, cfg.v) + rounding + tail_err * (Nd / std::abs(s - 1.0) + 1.0)
                      + sum.error_bound();
    out.converged = out.error_bound <= cfg.tol;
    return out;
}

/// Term-by-term s-derivative of the Euler-Maclaurin truncation.
inline CertifiedComplex zeta_prime_em(const EvalPoint& p, const EMConfig& cfg)
{
    detail::validate_em(p, cfg);
    const complex s = p.s();
    const auto N = cfg.N;
    const double Nd = static_cast<double>(N);
    const double logN = std::log(Nd);

    ComplexAccumulator sum;
    double rounding = 0;
    for (std::int64_t n = 2; n < N; ++n) {
        const double ln = std::log(static_cast<double>(n));
        double err = 0;
        sum += -ln * detail::power_neg_s(ln, p, err);
        rounding += ln * err;
    }

    double tail_err = 0;
    const complex N_ms = detail::power_neg_s(logN, p, tail_err);
    const complex sm1 = s - 1.0;
    // d/ds N^{1-s}/(s-1)
    sum += -logN * Nd * N_ms / sm1 - Nd * N_ms / (sm1 * sm1);
    // d/ds N^{-s}/2
    sum += -0.5 * logN * N_ms;

    // d/ds [P_j(s) N^{-s-2j+1}] = (P_j' - log N P_j) N^{-s-2j+1}
    complex P = s;
    complex dP = 1.0;
    double N_pow = 1.0 / Nd;
    for (int j = 1; j <= cfg.v; ++j) {
        if (j > 1) {
            for (double shift : {2.0 * j - 3.0, 2.0 * j - 2.0}) {
                dP = dP * (s + shift) + P;
                P *= s + shift;
            }
            N_pow /= Nd * Nd;
        }
        const double coeff = bernoulli_number(2 * j) / std::exp(detail::log_factorial(2 * j));
        const complex term = coeff * (dP - logN * P) * N_ms * N_pow;
        if (!std::isfinite(term.real()) || !std::isfinite(term.imag()))
            throw domain_error("zeta_prime_em: correction term overflowed; reduce v");
        sum += term;
    }

    CertifiedComplex out;
    out.value = sum.value();
    const double tail_scale = logN * Nd / std::abs(sm1) + Nd / std::norm(sm1) + logN;
    out.error_bound = em_derivative_remainder_bound(p, N, cfg.v) + rounding + tail_err * tail_scale
                      + sum.error_bound();
    out.converged = out.error_bound <= cfg.tol;
    return out;
}

/// N = max(ceil(8|t|), 64) and the smallest v <= 12 whose remainder bound is
/// below tol (derivative remainder when `derivative` is set).
inline EMConfig default_em_config(const EvalPoint& p, double tol = 1e-9, bool derivative = false)
{
    EMConfig cfg;
    cfg.tol = tol;
    cfg.N = std::max<std::int64_t>(static_cast<std::int64_t>(std::ceil(8.0 * std::abs(p.t))), 64);
    cfg.v = 12;
    for (int v = 1; v <= 12; ++v) {
        if (!(p.sigma + 2.0 * v > 1))
            continue;
        const double r = derivative ? em_derivative_remainder_bound(p, cfg.N, v) : em_remainder_bound(p, cfg.N, v);
        if (r < tol) {
            cfg.v = v;
            break;
        }
    }
    return cfg;
}

// ---------------------------------------------------------------------------
// Independent oracle: zeta(s) = eta(s) / (1 - 2^{1-s}), eta accelerated with
// Borwein's algorithm 2 (Chebyshev-type weights d_k).

namespace detail {

inline const double log_borwein_base = std::log(3.0 + std::sqrt(8.0));

// Weights w_k = (d_n - d_k)/d_n for k = 0..n-1, computed from log-scaled
// terms so large n does not overflow.
inline std::vector<double> borwein_weights(int n)
{
    std::vector<double> log_terms(static_cast<std::size_t>(n) + 1);
    log_terms[0] = 0.0; // T_0 = 1
    for (int i = 0; i < n; ++i) {
        const double ratio = 4.0 * (static_cast<double>(n) + i) * (static_cast<double>(n) - i)
                             / ((2.0 * i + 1.0) * (2.0 * i + 2.0));
        log_terms[i + 1] = log_terms[i] + std::log(ratio);
    }
    double top = log_terms[0];
    for (double l : log_terms)
        top = std::max(top, l);
    std::vector<double> tail(static_cast<std::size_t>(n) + 2, 0.0);
    for (int i = n; i >= 0; --i)
        tail[i] = tail[i + 1] + std::exp(log_terms[i] - top);
    const double total = tail[0];
    std::vector<double> w(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        w[k] = tail[k + 1] / total;
    return w;
}

inline double one_minus_two_pow(complex s, complex& factor)
{
    factor = 1.0 - std::exp((1.0 - s) * std::log(2.0));
    return std::abs(factor);
}

} // namespace detail

/// Smallest term count for which Borwein's a-priori bound drops below `target`.
inline int eta_default_terms(double t, double target = 1e-15)
{
    const double at = std::abs(t);
    const double log_need = std::log(3.0) + std::log1p(2.0 * at) + pi * at / 2.0 - std::log(target) + std::log(3.0);
    return std::max(20, static_cast<int>(std::ceil(log_need / detail::log_borwein_base)) + 2);
}

inline CertifiedComplex eta_oracle(const EvalPoint& p, int terms)
{
    if (terms < 10)
        throw domain_error("eta_oracle: terms must be >= 10");
    const complex s = p.s();
    complex factor;
    const double denom = detail::one_minus_two_pow(s, factor);
    if (denom < 1e-12)
        throw domain_error("eta_oracle: 1 - 2^{1-s} vanishes at this s");

    const std::vector<double> w = detail::borwein_weights(terms);
    ComplexAccumulator acc;
    double rounding = 0;
    for (int k = 0; k < terms; ++k) {
        const double lk = std::log(static_cast<double>(k) + 1.0);
        double err = 0;
        const complex term = w[k] * detail::power_neg_s(lk, p, err);
        rounding += w[k] * err;
        acc += (k % 2 == 0) ? term : -term;
    }
    CertifiedComplex out;
    out.value = acc.value() / factor;
    const double at = std::abs(p.t);
    const double log_trunc = std::log(3.0) + std::log1p(2.0 * at) + pi * at / 2.0
                             - terms * detail::log_borwein_base - std::log(denom);
    out.error_bound = std::exp(log_trunc) + (rounding + acc.error_bound()) / denom
                      + 4 * machine_eps * std::abs(out.value);
    out.converged = std::isfinite(out.error_bound);
    return out;
}

inline CertifiedComplex eta_oracle(const EvalPoint& p) { return eta_oracle(p, eta_default_terms(p.t)); }

/// zeta'(s) from Richardson-extrapolated central differences of eta_oracle
/// taken along the imaginary direction (s +- i h), so sigma never moves.
///
/// The returned error bound stacks the extrapolation disagreement and the
/// propagated oracle error. The result is flagged non-converged when that
/// bound exceeds `budget`.
inline CertifiedComplex zeta_prime_oracle(const EvalPoint& p, double budget = 1e-6)
{
    const double h0 = 0.25 / (1.0 + std::log1p(std::abs(p.t)));
    if (!(std::abs(p.s() - 1.0) > 0.5 + h0))
        throw domain_error("zeta_prime_oracle: stencil too close to the pole at s = 1");

    constexpr int levels = 6;
    const int terms = eta_default_terms(std::abs(p.t) + h0);
    double oracle_err = 0;
    complex table[levels][levels];
    double h = h0;
    for (int i = 0; i < levels; ++i, h *= 0.5) {
        const CertifiedComplex up = eta_oracle({p.t + h, p.sigma}, terms);
        const CertifiedComplex dn = eta_oracle({p.t - h, p.sigma}, terms);
        oracle_err = std::max(oracle_err, (up.error_bound + dn.error_bound) / (2.0 * h));
        table[i][0] = (up.value - dn.value) / complex(0.0, 2.0 * h);
        double scale = 4.0;
        for (int j = 1; j <= i; ++j, scale *= 4.0)
            table[i][j] = table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / (scale - 1.0);
    }
    CertifiedComplex out;
    out.value = table[levels - 1][levels - 1];
    const double trunc = std::abs(table[levels - 1][levels - 1] - table[levels - 2][levels - 2]);
    // Richardson weights amplify input errors by at most ~1.7 over 6 levels.
    out.error_bound = trunc + 2.0 * oracle_err;
    out.converged = out.error_bound <= budget * std::max(1.0, std::abs(out.value));
    return out;
}

} // namespace zetabound
