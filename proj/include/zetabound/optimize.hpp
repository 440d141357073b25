#pragma once
// Parameter search for the parametric bound and the crossover against the
// closed-form bound. Deterministic: no randomness anywhere.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bounds.hpp"

namespace zetabound {

struct Objective {
    enum class Kind { minimize_Q1, minimize_bound_at_t, minimize_weighted_Q };
    Kind kind = Kind::minimize_Q1;
    double t = 0;
    std::array<double, 6> weights{};

    static Objective Q1() { return {}; }
    static Objective bound_at(double t)
    {
        Objective o;
        o.kind = Kind::minimize_bound_at_t;
        o.t = t;
        return o;
    }
    static Objective weighted(const std::array<double, 6>& w)
    {
        Objective o;
        o.kind = Kind::minimize_weighted_Q;
        o.weights = w;
        return o;
    }

    void validate() const
    {
        if (kind == Kind::minimize_bound_at_t && detail::below(t, e6))
            throw domain_error("Objective: minimize_bound_at_t requires t >= e^6");
        if (kind == Kind::minimize_weighted_Q) {
            bool any = false;
            for (double w : weights) {
                if (!(w >= 0) || !std::isfinite(w))
                    throw domain_error("Objective: weights must be finite and non-negative");
                any = any || w > 0;
            }
            if (!any)
                throw domain_error("Objective: weights must not all be zero");
        }
    }

    /// Objective value at p; +inf when p violates a parameter constraint.
    [[nodiscard]] double operator()(const BoundParams& p) const
    {
        if (p.violation())
            return std::numeric_limits<double>::infinity();
        const BoundCoefficients c = theorem2_coeffs(p);
        switch (kind) {
        case Kind::minimize_Q1:
            return c.Q[0];
        case Kind::minimize_bound_at_t:
            return q_polynomial(c.Q, t);
        case Kind::minimize_weighted_Q: {
            Accumulator<double> acc;
            for (std::size_t i = 0; i < 6; ++i)
                acc.add(weights[i] * c.Q[i]);
            return acc.value();
        }
        }
        return std::numeric_limits<double>::infinity();
    }
};

struct Interval {
    double lo = 0;
    double hi = 0;
};

/// Search box, in the fixed coordinate order (k, tau, q, t1, t2).
/// t1 and t2 are searched on a logarithmic axis.
struct ParamRanges {
    Interval k{1.1, 8.0};
    Interval tau{1.1, 8.0};
    Interval q{2.0, 7.0};
    Interval t1{e3, 1e8};
    Interval t2{e6, 1e10};

    [[nodiscard]] std::array<Interval, 5> axes() const { return {k, tau, q, t1, t2}; }

    void validate() const
    {
        const auto a = axes();
        static const char* names[] = {"k", "tau", "q", "t1", "t2"};
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!(a[i].lo <= a[i].hi) || !std::isfinite(a[i].lo) || !std::isfinite(a[i].hi))
                throw domain_error(std::string("ParamRanges: empty or non-finite range for ") + names[i]);
        if (!(k.lo > 1) || !(tau.lo > 1))
            throw domain_error("ParamRanges: k and tau must exceed 1");
        if (q.lo < 2)
            throw domain_error("ParamRanges: q must be >= 2");
        if (detail::below(t1.lo, e3) || detail::below(t2.lo, e6))
            throw domain_error("ParamRanges: t1 >= e^3 and t2 >= e^6 required");
    }

    /// Map normalized coordinates u in [0,1]^5 to parameters.
    [[nodiscard]] BoundParams at(const std::array<double, 5>& u) const
    {
        auto lin = [](Interval r, double x) { return r.lo == r.hi ? r.lo : r.lo + (r.hi - r.lo) * x; };
        auto geo = [](Interval r, double x) {
            return r.lo == r.hi ? r.lo : std::exp(std::log(r.lo) + (std::log(r.hi) - std::log(r.lo)) * x);
        };
        return {lin(k, u[0]), lin(tau, u[1]), lin(q, u[2]), geo(t1, u[3]), geo(t2, u[4])};
    }
};

struct OptStep {
    BoundParams params;
    double value = 0;
    bool accepted = false; // true when this evaluation became the new best
};

struct OptResult {
    BoundParams best;
    double objective_value = std::numeric_limits<double>::infinity();
    std::vector<OptStep> trace;
    std::size_t evaluations = 0;
    bool budget_exhausted = false;
};

/// Grid scan with grid_points per axis (lexicographic order, ties kept at
/// the first point), then coordinate descent in normalized coordinates,
/// halving the step after a sweep without improvement until it drops below
/// min_step or the evaluation budget runs out.
inline OptResult optimize_params(const Objective& obj, const ParamRanges& ranges, std::size_t budget,
                                 int grid_points = 5, double min_step = 1e-3)
{
    obj.validate();
    ranges.validate();
    if (budget < 10)
        throw domain_error("optimize_params: budget must be >= 10");
    if (grid_points < 2)
        throw domain_error("optimize_params: grid_points must be >= 2");

    OptResult res;
    std::array<double, 5> best_u{};
    auto evaluate = [&](const std::array<double, 5>& u) -> bool {
        if (res.evaluations >= budget) {
            res.budget_exhausted = true;
            return false;
        }
        const BoundParams p = ranges.at(u);
        const double v = obj(p);
        ++res.evaluations;
        const bool better = v < res.objective_value;
        res.trace.push_back({p, v, better});
        if (better) {
            res.objective_value = v;
            res.best = p;
            best_u = u;
        }
        return true;
    };

    const auto axes = ranges.axes();
    std::array<int, 5> counts{};
    for (std::size_t i = 0; i < 5; ++i)
        counts[i] = axes[i].lo == axes[i].hi ? 1 : grid_points;

    std::array<int, 5> idx{};
    bool running = true;
    while (running) {
        std::array<double, 5> u{};
        for (std::size_t i = 0; i < 5; ++i)
            u[i] = counts[i] == 1 ? 0.0 : static_cast<double>(idx[i]) / (counts[i] - 1);
        if (!evaluate(u))
            break;
        // odometer, last axis fastest
        int ax = 4;
        while (ax >= 0 && ++idx[static_cast<std::size_t>(ax)] == counts[static_cast<std::size_t>(ax)]) {
            idx[static_cast<std::size_t>(ax)] = 0;
            --ax;
        }
        running = ax >= 0;
    }

    double step = 0.5 / (grid_points - 1);
    while (!res.budget_exhausted && std::isfinite(res.objective_value) && step >= min_step) {
        bool improved = false;
        for (std::size_t i = 0; i < 5 && !res.budget_exhausted; ++i) {
            if (counts[i] == 1)
                continue;
            for (double dir : {-1.0, 1.0}) {
                std::array<double, 5> u = best_u;
                u[i] = std::clamp(u[i] + dir * step, 0.0, 1.0);
                if (u[i] == best_u[i])
                    continue;
                const double before = res.objective_value;
                if (!evaluate(u))
                    break;
                if (res.objective_value < before) {
                    improved = true;
                    break;
                }
            }
        }
        if (!improved)
            step *= 0.5;
    }

    if (!std::isfinite(res.objective_value))
        throw domain_error("optimize_params: no feasible parameter point in the given ranges");
    return res;
}

struct Crossover {
    double log_t = 0;
    double t = 0; // +inf when beyond double range
    double log_theorem1 = 0;
    double log_theorem2 = 0;
};

/// First t in [e^6, t_max] (geometric grid of ratio 1.1 on log t) where the
/// parametric bound falls below the closed-form bound, refined by bisection
/// to relative width 1e-6. All comparisons are in log space, so t_max may be
/// given as log_t_max beyond double range.
inline std::optional<Crossover> crossover_scan_log(const BoundParams& p, double log_t_max)
{
    if (log_t_max < 6.0 - 1e-12)
        throw domain_error("crossover_scan: t_max must be >= e^6");
    const BoundCoefficients coeffs = theorem2_coeffs(p);
    auto below = [&](double y) { return log_theorem2_bound(y, coeffs) < log_theorem1_bound(y); };
    const double dy = std::log(1.1);
    const double width = std::log1p(1e-6) * 0.5;

    double prev = 6.0;
    if (!below(prev)) {
        std::optional<double> hit;
        for (std::size_t i = 1;; ++i) {
            const double y = std::min(6.0 + dy * static_cast<double>(i), log_t_max);
            if (below(y)) {
                hit = y;
                break;
            }
            if (y >= log_t_max)
                break;
            prev = y;
        }
        if (!hit)
            return std::nullopt;
        double lo = prev, hi = *hit;
        while (hi - lo > width) {
            const double mid = 0.5 * (lo + hi);
            (below(mid) ? hi : lo) = mid;
        }
        prev = hi;
    }
    Crossover c;
    c.log_t = prev;
    c.t = std::exp(prev);
    c.log_theorem1 = log_theorem1_bound(prev);
    c.log_theorem2 = log_theorem2_bound(prev, coeffs);
    return c;
}

inline std::optional<Crossover> crossover_scan(const BoundParams& p, double t_max)
{
    if (!(t_max > 0))
        throw domain_error("crossover_scan: t_max must be positive");
    return crossover_scan_log(p, std::log(t_max));
}

} // namespace zetabound
