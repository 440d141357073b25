#pragma once
// Sums of terms c * t^p * (log t)^q. The explicit bounds are assembled as
// such sums, so they can be evaluated at any t, compared shape by shape,
// and evaluated in log space far beyond double range in t.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "numerics.hpp"

namespace zetabound {

struct ShapeTerm {
    double coef = 0;
    double t_power = 0;
    int log_power = 0;
};

inline bool same_shape(double p1, int q1, double p2, int q2) noexcept
{
    return q1 == q2 && std::abs(p1 - p2) < 1e-12;
}

class ShapeSum {
public:
    ShapeSum() = default;
    ShapeSum(std::initializer_list<ShapeTerm> terms)
    {
        for (const auto& s : terms)
            add(s.coef, s.t_power, s.log_power);
    }

    void add(double coef, double t_power, int log_power)
    {
        for (auto& s : terms_) {
            if (same_shape(s.t_power, s.log_power, t_power, log_power)) {
                s.coef += coef;
                return;
            }
        }
        terms_.push_back({coef, t_power, log_power});
    }

    ShapeSum& operator+=(const ShapeSum& other)
    {
        for (const auto& s : other.terms_)
            add(s.coef, s.t_power, s.log_power);
        return *this;
    }

    /// this * coef * t^t_power
    [[nodiscard]] ShapeSum scaled(double coef, double t_power = 0) const
    {
        ShapeSum out;
        for (const auto& s : terms_)
            out.add(s.coef * coef, s.t_power + t_power, s.log_power);
        return out;
    }

    [[nodiscard]] double coefficient(double t_power, int log_power) const noexcept
    {
        for (const auto& s : terms_)
            if (same_shape(s.t_power, s.log_power, t_power, log_power))
                return s.coef;
        return 0.0;
    }

    [[nodiscard]] const std::vector<ShapeTerm>& terms() const noexcept { return terms_; }

    [[nodiscard]] double operator()(double t) const
    {
        const double L = std::log(t);
        Accumulator<double> acc;
        for (const auto& s : terms_)
            acc.add(s.coef * std::pow(t, s.t_power) * std::pow(L, s.log_power));
        return acc.value();
    }

    /// log of the value at t = e^y. Positive and negative parts are combined
    /// with log-sum-exp; returns -inf when the value is <= 0.
    [[nodiscard]] double log_value(double y) const
    {
        double pos_max = -std::numeric_limits<double>::infinity();
        double neg_max = pos_max;
        std::vector<std::pair<double, bool>> logs;
        for (const auto& s : terms_) {
            if (s.coef == 0)
                continue;
            const double l = std::log(std::abs(s.coef)) + s.t_power * y + s.log_power * std::log(y);
            const bool positive = s.coef > 0;
            logs.emplace_back(l, positive);
            (positive ? pos_max : neg_max) = std::max(positive ? pos_max : neg_max, l);
        }
        if (!std::isfinite(pos_max))
            return -std::numeric_limits<double>::infinity();
        double pos = 0, neg = 0;
        for (auto [l, positive] : logs) {
            if (positive)
                pos += std::exp(l - pos_max);
            else
                neg += std::exp(l - pos_max);
        }
        if (neg >= pos)
            return -std::numeric_limits<double>::infinity();
        return pos_max + std::log(pos - neg);
    }

private:
    std::vector<ShapeTerm> terms_;
};

/// sup over log t >= L0 of t^{dp} (log t)^{dq}; infinite when unbounded.
inline double shape_ratio_sup(double dp, double dq, double L0)
{
    const double inf = std::numeric_limits<double>::infinity();
    if (dp > 1e-15)
        return inf;
    auto f = [&](double L) { return std::exp(dp * L) * std::pow(L, dq); };
    if (std::abs(dp) <= 1e-15)
        return dq <= 0 ? std::pow(L0, dq) : inf;
    if (dq <= 0)
        return f(L0);
    return f(std::max(L0, dq / -dp));
}

/// Closed-form bound for sum_{j=1}^{J} X_{j-1}^gamma log X_{j-1} over a
/// geometric block scheme X_{j-1} = ratio^{j-1} t^alpha with
/// X_{J-1} < t^beta (hence J - 1 < (beta - alpha) log t / log ratio):
///
///   gamma > 0:  beta log t * t^{beta gamma} * r^gamma / (r^gamma - 1)
///   gamma = 0:  (alpha c + c^2 log r / 2) log^2 t + (alpha + c log r / 2) log t,
///               c = (beta - alpha) / log r
///   gamma < 0:  t^{alpha gamma} (alpha log t / (1 - r^gamma) + log r r^gamma / (1 - r^gamma)^2)
///
/// gamma = 1/2 gives the M_1 sum and gamma = -delta/2 the M_2(delta) sums.
inline ShapeSum geometric_log_sum_bound(double alpha, double beta, double ratio, double gamma)
{
    if (!(ratio > 1))
        throw domain_error("geometric_log_sum_bound: ratio must exceed 1");
    const double lr = std::log(ratio);
    ShapeSum out;
    if (gamma > 0) {
        const double rg = std::exp(gamma * lr);
        out.add(beta * rg / (rg - 1.0), beta * gamma, 1);
    } else if (gamma == 0) {
        const double c = (beta - alpha) / lr;
        out.add(alpha * c + c * c * lr / 2.0, 0.0, 2);
        out.add(alpha + c * lr / 2.0, 0.0, 1);
    } else {
        const double rg = std::exp(gamma * lr);
        out.add(alpha / (1.0 - rg), alpha * gamma, 1);
        out.add(lr * rg / ((1.0 - rg) * (1.0 - rg)), alpha * gamma, 0);
    }
    return out;
}

} // namespace zetabound
