#pragma once
// Floating-point building blocks shared by the evaluators and bound
// checkers: compensated summation, Bernoulli numbers and an adaptive
// Gauss-Kronrod integrator that accepts an oscillation scale.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace zetabound {

/// Thrown when an argument lies outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Thrown for malformed input (non-finite values, wrong lengths).
class invalid_input : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr double machine_eps = std::numeric_limits<double>::epsilon();
inline constexpr double pi = 3.14159265358979323846264338327950288;

/// Neumaier's variant of Kahan summation.
///
/// The result is a deterministic function of the order in which terms are
/// added. For n terms the absolute error stays below 2*eps*sum|x_i| up to
/// O(n eps^2) terms.
template <class Real = double>
class Accumulator {
public:
    void add(Real x) noexcept
    {
        const Real s = running_sum_ + x;
        if (std::abs(running_sum_) >= std::abs(x))
            compensation_ += (running_sum_ - s) + x;
        else
            compensation_ += (x - s) + running_sum_;
        running_sum_ = s;
        abs_sum_ += std::abs(x);
    }

    Accumulator& operator+=(Real x) noexcept
    {
        add(x);
        return *this;
    }

    [[nodiscard]] Real value() const noexcept { return running_sum_ + compensation_; }
    [[nodiscard]] Real running_sum() const noexcept { return running_sum_; }
    [[nodiscard]] Real compensation() const noexcept { return compensation_; }
    /// Sum of |x_i| seen so far; feeds the rounding error budget.
    [[nodiscard]] Real magnitude() const noexcept { return abs_sum_; }
    /// A-priori bound on the rounding error of value().
    [[nodiscard]] Real error_bound() const noexcept { return 2 * machine_eps * abs_sum_; }

private:
    Real running_sum_{0};
    Real compensation_{0};
    Real abs_sum_{0};
};

/// Compensated complex accumulator (independent real and imaginary parts).
class ComplexAccumulator {
public:
    void add(std::complex<double> z) noexcept
    {
        re_.add(z.real());
        im_.add(z.imag());
    }
    ComplexAccumulator& operator+=(std::complex<double> z) noexcept
    {
        add(z);
        return *this;
    }
    [[nodiscard]] std::complex<double> value() const noexcept { return {re_.value(), im_.value()}; }
    [[nodiscard]] double error_bound() const noexcept { return re_.error_bound() + im_.error_bound(); }

private:
    Accumulator<double> re_;
    Accumulator<double> im_;
};

inline double compensated_sum(std::span<const double> terms)
{
    Accumulator<double> acc;
    for (double x : terms) {
        if (!std::isfinite(x))
            throw invalid_input("compensated_sum: non-finite term");
        acc.add(x);
    }
    return acc.value();
}

namespace detail {

using rational = boost::multiprecision::cpp_rational;

inline constexpr int max_bernoulli_index = 60;

// B_0..B_60 from sum_{k=0}^{m} C(m+1,k) B_k = 0, in exact rationals.
inline const std::array<double, max_bernoulli_index + 1>& bernoulli_table()
{
    static const std::array<double, max_bernoulli_index + 1> table = [] {
        std::array<rational, max_bernoulli_index + 1> b;
        b[0] = 1;
        for (int m = 1; m <= max_bernoulli_index; ++m) {
            rational acc = 0;
            boost::multiprecision::cpp_int binom = 1; // C(m+1, 0)
            for (int k = 0; k < m; ++k) {
                acc += rational(binom) * b[k];
                binom = binom * (m + 1 - k) / (k + 1);
            }
            b[m] = -acc / (m + 1);
        }
        std::array<double, max_bernoulli_index + 1> out{};
        for (int m = 0; m <= max_bernoulli_index; ++m)
            out[m] = b[m].convert_to<double>();
        return out;
    }();
    return table;
}

} // namespace detail

/// Bernoulli number B_m for even 2 <= m <= 60.
inline double bernoulli_number(int m)
{
    if (m < 2 || m > detail::max_bernoulli_index || m % 2 != 0)
        throw domain_error("bernoulli_number: m must be even with 2 <= m <= 60, got " + std::to_string(m));
    return detail::bernoulli_table()[m];
}

// ---------------------------------------------------------------------------
// Adaptive quadrature

struct QuadratureResult {
    double value = 0;
    double error_estimate = 0; // absolute, >= 0
    std::size_t subdivisions = 0;
    bool converged = false;
};

struct QuadratureOptions {
    // Largest panel width used before any adaptivity. Callers integrating an
    // oscillatory function pass (a fraction of) its shortest wavelength.
    double max_panel_width = std::numeric_limits<double>::infinity();
    std::size_t max_subdivisions = 200000;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
inline constexpr std::array<double, 8> gk15_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> gk15_kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gk15_gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const noexcept { return error < o.error; }
};

template <class F>
Panel gk15(const F& f, double a, double b)
{
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(centre);
    double kronrod = fc * gk15_kronrod_weights[7];
    double gauss = fc * gk15_gauss_weights[3];
    double abs_sum = std::abs(kronrod);
    for (int i = 0; i < 7; ++i) {
        const double dx = half * gk15_nodes[i];
        const double f1 = f(centre - dx);
        const double f2 = f(centre + dx);
        kronrod += gk15_kronrod_weights[i] * (f1 + f2);
        abs_sum += gk15_kronrod_weights[i] * (std::abs(f1) + std::abs(f2));
        if (i % 2 == 1)
            gauss += gk15_gauss_weights[i / 2] * (f1 + f2);
    }
    kronrod *= half;
    gauss *= half;
    abs_sum *= std::abs(half);
    const double err = std::abs(kronrod - gauss) + 50 * machine_eps * abs_sum;
    return {a, b, kronrod, err};
}

} // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
///
/// The interval is first cut into panels no wider than
/// opts.max_panel_width; the panel with the largest error estimate is then
/// bisected until the summed estimate drops below tol. If the subdivision
/// cap is hit the result is returned with converged == false and must not
/// be used as an oracle.
template <class F>
QuadratureResult integrate_adaptive(const F& f, double a, double b, double tol, QuadratureOptions opts = {})
{
    if (!(a < b))
        throw domain_error("integrate_adaptive: require a < b");
    if (!(tol > 0))
        throw domain_error("integrate_adaptive: require tol > 0");

    std::size_t initial = 1;
    if (std::isfinite(opts.max_panel_width) && opts.max_panel_width > 0)
        initial = static_cast<std::size_t>(std::ceil((b - a) / opts.max_panel_width));
    initial = std::max<std::size_t>(initial, 1);

    QuadratureResult result;
    if (initial > opts.max_subdivisions) {
        result.subdivisions = 0;
        result.error_estimate = std::numeric_limits<double>::infinity();
        return result;
    }

    std::priority_queue<detail::Panel> panels;
    const double width = (b - a) / static_cast<double>(initial);
    for (std::size_t i = 0; i < initial; ++i) {
        const double lo = a + width * static_cast<double>(i);
        const double hi = (i + 1 == initial) ? b : a + width * static_cast<double>(i + 1);
        panels.push(detail::gk15(f, lo, hi));
    }
    std::size_t count = initial;

    auto totals = [&panels] {
        // priority_queue has no iteration; copy is cheap relative to f calls
        auto copy = panels;
        Accumulator<double> v, e;
        while (!copy.empty()) {
            v.add(copy.top().value);
            e.add(copy.top().error);
            copy.pop();
        }
        return std::pair{v.value(), e.value()};
    };

    double err_total = 0;
    {
        auto [v, e] = totals();
        result.value = v;
        err_total = e;
    }
    // Track the running error incrementally; recompute exactly on exit.
    while (err_total > tol && count < opts.max_subdivisions) {
        const detail::Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const detail::Panel left = detail::gk15(f, worst.a, mid);
        const detail::Panel right = detail::gk15(f, mid, worst.b);
        err_total += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        ++count;
        if (err_total <= tol) {
            auto [v, e] = totals();
            err_total = e;
        }
    }
    auto [v, e] = totals();
    result.value = v;
    result.error_estimate = e;
    result.subdivisions = count;
    result.converged = e <= tol;
    return result;
}

} // namespace zetabound
