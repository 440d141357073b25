#pragma once
// Explicit upper bounds for |zeta'(1/2 + it)|.
//
// theorem1_bound is the closed form valid for t >= e^2. The parametric
// bound for t >= e^6 is assembled from five parts of the range split
//   n <= t^{1/3},  (t^{1/3}, t^{2/3}],  (t^{2/3}, t],  (t, t^2],  remainder E(s)
// into six coefficients Q_1..Q_6 of the shapes
//   t^{1/6} log^2 t, t^{1/6} log t, t^{1/6}, log^2 t, log t, 1.
// Every coefficient carries a derivation trace naming the estimate it came from.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "exp_sums.hpp"
#include "numerics.hpp"
#include "shape_sum.hpp"

namespace zetabound {

inline const double e2 = std::exp(2.0);
inline const double e3 = std::exp(3.0);
inline const double e6 = std::exp(6.0);

namespace detail {
// Thresholds like e^2 are accepted up to rounding of the caller's literal.
inline bool below(double t, double threshold) { return t < threshold * (1.0 - 1e-7); }
} // namespace detail

/// Free parameters of the parametric bound.
struct BoundParams {
    double k = 2;   // block ratio on (t^{2/3}, t]
    double tau = 2; // block ratio on (t^{1/3}, t^{2/3}]
    double q = 2;   // Weyl shift scale, M = q X / t^{1/3}
    double t1 = e3; // crude/blocked switch for (t^{2/3}, t]
    double t2 = e6; // crude/blocked switch for (t^{1/3}, t^{2/3}]

    /// Empty when valid, else the first violated constraint.
    [[nodiscard]] std::optional<std::string> violation() const
    {
        if (!(k > 1))
            return "k must exceed 1";
        if (!(tau > 1))
            return "tau must exceed 1";
        if (!(q >= 2))
            return "q must be >= 2";
        if (detail::below(t1, e3))
            return "t1 must be >= e^3";
        if (detail::below(t2, e6))
            return "t2 must be >= e^6";
        // n + m <= (tau + 1) X in the shifted sums needs M <= X.
        if (q > std::cbrt(t2) * (1.0 + 1e-12))
            return "q must be <= t2^{1/3}";
        if (!(q < pi * std::pow(tau + 1.0, 3)))
            return "q must be < pi (tau + 1)^3";
        if (!std::isfinite(k) || !std::isfinite(tau) || !std::isfinite(q) || !std::isfinite(t1) || !std::isfinite(t2))
            return "parameters must be finite";
        return std::nullopt;
    }

    void validate() const
    {
        if (auto v = violation())
            throw domain_error("BoundParams: " + *v);
    }
};

inline bool operator==(const BoundParams& a, const BoundParams& b)
{
    return a.k == b.k && a.tau == b.tau && a.q == b.q && a.t1 == b.t1 && a.t2 == b.t2;
}

/// Bound total plus a named breakdown; total equals the sum of the parts.
struct BoundCurve {
    double t = 0;
    double total = 0;
    std::vector<std::pair<std::string, double>> per_term;

    [[nodiscard]] double part(const std::string& name) const
    {
        for (const auto& [n, v] : per_term)
            if (n == name)
                return v;
        throw invalid_input("BoundCurve: no part named " + name);
    }
};

// ---------------------------------------------------------------------------
// Closed-form pieces

/// Bound for |A| + |B| + |C| + |D| with sigma = 1/2 and N = [t^2].
inline double tail_error_bound(double t)
{
    if (!(t > 1))
        throw domain_error("tail_error_bound: t must exceed 1");
    const double L = std::log(t);
    const double t2m1 = t * t - 1.0;
    return 2.0 / std::sqrt(t2m1) + std::sqrt((4.0 * t * t + 1.0) / t2m1) * (2.0 * L + 2.0) + 1.0 / t + 2.0 * L;
}

/// Bound for |sum_{t < n <= t^2} log n / n^s| at sigma = 1/2.
inline double mid_tail_sum_bound(double t)
{
    if (detail::below(t, e2))
        throw domain_error("mid_tail_sum_bound: requires t >= e^2");
    return 2.0 * std::log(t) + 1.944;
}

/// int_0^{t^alpha} log(u) u^{-1/2} du = 2 t^{alpha/2} (alpha log t - 2), alpha in {1/3, 1}.
inline double head_sum_bound(double t, double alpha)
{
    const bool third = std::abs(alpha - 1.0 / 3.0) < 1e-12;
    if (!third && alpha != 1.0)
        throw domain_error("head_sum_bound: alpha must be 1/3 or 1");
    if (!(t > 1))
        throw domain_error("head_sum_bound: t must exceed 1");
    const double a = third ? 1.0 / 3.0 : 1.0;
    const double inner = a * std::log(t) - 2.0;
    if (inner < -1e-7)
        throw domain_error("head_sum_bound: value negative; requires t >= e^2 (alpha=1) or t >= e^6 (alpha=1/3)");
    return 2.0 * pow_exponent(t, a / 2.0) * std::max(inner, 0.0);
}

inline BoundCurve theorem1_bound(double t)
{
    if (detail::below(t, e2))
        throw domain_error("theorem1_bound: requires t >= e^2");
    const double L = std::log(t);
    const double rt = std::sqrt(t);
    BoundCurve c;
    c.t = t;
    c.total = 2.0 * rt * L - 4.0 * rt + 8.047 * L + 6.399;
    c.per_term = {{"head", 2.0 * rt * (L - 2.0)}, {"mid_tail", 2.0 * L + 1.944}, {"remainder_E", 4.455 + 6.047 * L}};
    return c;
}

/// log of theorem1_bound at t = e^y; usable for y far beyond double range of t.
inline double log_theorem1_bound(double y)
{
    if (y < 2.0 - 1e-12)
        throw domain_error("log_theorem1_bound: requires log t >= 2");
    const double lead = y / 2.0 + std::log(std::max(2.0 * y - 4.0, 0.0)); // sqrt(t)(2 log t - 4)
    const double rest = std::log(8.047 * y + 6.399);
    const double top = std::max(lead, rest);
    return top + std::log(std::exp(lead - top) + std::exp(rest - top));
}

// ---------------------------------------------------------------------------
// Derivation trace

struct TraceEntry {
    std::string target; // "C3", "c1", "Q6", ...
    std::string source; // which estimate produced the contribution
    double contribution = 0;
    std::string note;
};

inline std::string format_trace(const std::vector<TraceEntry>& trace)
{
    std::ostringstream os;
    os.precision(17);
    for (const auto& e : trace) {
        os << e.target << " += " << e.contribution << "  [" << e.source << "]";
        if (!e.note.empty())
            os << "  " << e.note;
        os << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Range (t^{2/3}, t]: blocks X_j = k^j t^{2/3}, second-derivative test per block.

/// Shapes of the eleven C_i, in order: t^{1/6}L, t^{1/6}, L, 1, t^{-1/6},
/// t^{-1/2}, t^{-1/3}, t^{-2/3}, t^{-2/3}L, t^{-1/2}L, t^{-1/3}L.
inline constexpr std::array<std::pair<double, int>, 11> c23_shapes = {{{1.0 / 6, 1},
                                                                       {1.0 / 6, 0},
                                                                       {0.0, 1},
                                                                       {0.0, 0},
                                                                       {-1.0 / 6, 0},
                                                                       {-1.0 / 2, 0},
                                                                       {-1.0 / 3, 0},
                                                                       {-2.0 / 3, 0},
                                                                       {-2.0 / 3, 1},
                                                                       {-1.0 / 2, 1},
                                                                       {-1.0 / 3, 1}}};

/// Shapes of c_1..c_6 and Q_1..Q_6.
inline constexpr std::array<std::pair<double, int>, 6> q_shapes = {
    {{1.0 / 6, 2}, {1.0 / 6, 1}, {1.0 / 6, 0}, {0.0, 2}, {0.0, 1}, {0.0, 0}}};

/// Sum over the blocks of the per-block bound, with the M_1 and M_2(delta)
/// sums replaced by their geometric closed forms. Valid for t >= e^3.
///
/// Per block (X = X_{j-1}), the block sum is at most
///   log X / X^{1/2} * (1/5)(L/V + 1)(8 W^{1/2} + 15),
///   V = 2 pi X^2 / t, W = k^2 V, L <= (k-1) X + 1,
/// and expanding the product gives six terms in X whose block sums are
/// M_2(1), M_2(3), M_1, M_2(3), M_2(5), M_2(1).
inline ShapeSum block23_shape(double k, std::vector<TraceEntry>* trace = nullptr)
{
    if (!(k > 1))
        throw domain_error("block_bound_23: k must exceed 1");
    const double alpha = 2.0 / 3.0;
    const double beta = 1.0;
    const double sp = std::sqrt(pi);
    const double r252 = std::pow(2.0, 2.5);
    const double r272 = std::pow(2.0, 3.5);
    auto M1 = geometric_log_sum_bound(alpha, beta, k, 0.5);
    auto M2 = [&](double delta) { return geometric_log_sum_bound(alpha, beta, k, -delta / 2.0); };

    struct Piece {
        const char* name;
        double coef;
        double t_power;
        ShapeSum sum;
    };
    const std::array<Piece, 6> pieces = {{
        {"2^{5/2}k(k-1)t^{1/2}/pi^{1/2} * M2(1)", r252 * k * (k - 1.0) / sp, 0.5, M2(1)},
        {"2^{5/2}k t^{1/2}/pi^{1/2} * M2(3)", r252 * k / sp, 0.5, M2(3)},
        {"2^{7/2}pi^{1/2}k t^{-1/2} * M1", r272 * sp * k, -0.5, M1},
        {"15(k-1)t/(2pi) * M2(3)", 15.0 * (k - 1.0) / (2.0 * pi), 1.0, M2(3)},
        {"15t/(2pi) * M2(5)", 15.0 / (2.0 * pi), 1.0, M2(5)},
        {"15 * M2(1)", 15.0, 0.0, M2(1)},
    }};
    ShapeSum total;
    for (const auto& p : pieces) {
        const ShapeSum part = p.sum.scaled(p.coef / 5.0, p.t_power);
        if (trace) {
            for (const auto& term : part.terms()) {
                for (std::size_t i = 0; i < c23_shapes.size(); ++i) {
                    if (same_shape(term.t_power, term.log_power, c23_shapes[i].first, c23_shapes[i].second))
                        trace->push_back({"C" + std::to_string(i + 1), std::string("block (t^{2/3},t]: ") + p.name,
                                          term.coef, ""});
                }
            }
        }
        total += part;
    }
    return total;
}

inline std::array<double, 11> block23_coefficients(double k, std::vector<TraceEntry>* trace = nullptr)
{
    const ShapeSum s = block23_shape(k, trace);
    std::array<double, 11> C{};
    for (std::size_t i = 0; i < C.size(); ++i)
        C[i] = s.coefficient(c23_shapes[i].first, c23_shapes[i].second);
    for (const auto& term : s.terms()) {
        bool known = false;
        for (const auto& sh : c23_shapes)
            known = known || same_shape(term.t_power, term.log_power, sh.first, sh.second);
        if (!known)
            throw std::logic_error("block23_coefficients: unexpected shape in assembly");
    }
    return C;
}

inline double crude_block23(double t1) { return 2.0 * std::sqrt(t1) * (std::log(t1) - 2.0) + 4.0; }

enum class Branch { crude, blocked };

struct Block23Result {
    double value = 0;
    std::array<double, 11> C{};
    Branch branch = Branch::blocked;
};

inline Block23Result block_bound_23(double t, double k, double t1)
{
    if (!(k > 1))
        throw domain_error("block_bound_23: k must exceed 1");
    if (detail::below(t, e3) || detail::below(t1, e3))
        throw domain_error("block_bound_23: requires t >= e^3 and t1 >= e^3");
    Block23Result r;
    r.C = block23_coefficients(k);
    if (t <= t1) {
        r.branch = Branch::crude;
        r.value = crude_block23(t1);
        return r;
    }
    r.branch = Branch::blocked;
    ShapeSum poly;
    for (std::size_t i = 0; i < r.C.size(); ++i)
        poly.add(r.C[i], c23_shapes[i].first, c23_shapes[i].second);
    r.value = poly(t);
    return r;
}

/// The same chain evaluated block by block with the true N_j, L_j, V_j, W_j
/// (no closed forms). Always <= the blocked branch of block_bound_23.
inline double block_bound_23_blockwise(double t, double k)
{
    const BlockScheme scheme = block_scheme(t, 2.0 / 3.0, k, 1.0);
    Accumulator<double> acc;
    for (const Block& b : scheme.blocks) {
        const double first = static_cast<double>(b.N_lo) + 1.0;
        const double V = 2.0 * pi * b.X_lo * b.X_lo / t;
        const double W = 2.0 * pi * b.X_hi * b.X_hi / t;
        acc.add(std::log(first) / std::sqrt(first)
                * vdc_second_derivative_bound({static_cast<double>(b.length()), V, W}));
    }
    return acc.value();
}

/// Exact M_1 and M_2(delta) sums over a block scheme, for checking the closed forms.
inline double block_log_sum_exact(const BlockScheme& scheme, double gamma)
{
    Accumulator<double> acc;
    for (const Block& b : scheme.blocks)
        acc.add(std::pow(b.X_lo, gamma) * std::log(b.X_lo));
    return acc.value();
}

// ---------------------------------------------------------------------------
// Range (t^{1/3}, t^{2/3}]: blocks X_j = tau^j t^{1/3}, Weyl differencing
// with M = q X / t^{1/3}, second-derivative test on the shifted sums.

/// c_1..c_6 for t > t2. With X = X_{j-1}, u = X / t^{1/3}, eps = t2^{-1/3}:
///   block sum   <= log X / X^{1/2} * S_j
///   S_j         <= sqrt((L+M)L/M) + sqrt(2(L+M)/M * sum_m (1-m/M) D_m)
///   D_m         <= (1/5)(P1 m^{1/2} + P2 m^{1/2} + P3 m^{-1/2} + P4 m + P5 m + 15)
/// with L + M <= tau X + 1 (M <= X because q <= t^{1/3}), the triangular
/// weight bounds, (q-1) u <= M <= q u for the integer M, and
/// sqrt(a + b + ...) <= sqrt(a) + sqrt(b) + .... Each resulting piece is a
/// constant times t^p * sum_j X^gamma log X.
inline ShapeSum block13_shape(const BoundParams& p, std::vector<TraceEntry>* trace = nullptr)
{
    p.validate();
    const double tau = p.tau;
    const double q = p.q;
    const double q_lo = q - 1.0;
    const double eps = 1.0 / std::cbrt(p.t2);
    const double sp = std::sqrt(pi);
    const double tp32 = std::pow(tau + 1.0, 1.5);
    const double te = tau + eps;

    const double k_T1 = std::sqrt(te * (tau - 1.0 + eps) / q_lo);
    const double k_a = 64.0 / 75.0 * te * (tau - 1.0) * tp32 * std::sqrt(q) / sp;
    const double k_b = 64.0 / 75.0 * te * tp32 * std::sqrt(q) / sp;
    const double k_c = 64.0 / 15.0 * sp * te * tp32 / std::sqrt(q_lo);
    const double k_d = te * (tau - 1.0) * q / pi;
    const double k_e = te * q / pi;
    const double k_f = 3.0 * te;

    auto G = [&](double gamma) { return geometric_log_sum_bound(1.0 / 3.0, 2.0 / 3.0, tau, gamma); };
    struct Piece {
        const char* name;
        double coef;
        double t_power;
        double gamma;
    };
    const std::array<Piece, 7> pieces = {{
        {"sqrt((L+M)L/M)", k_T1, 1.0 / 6, 0.0},
        {"Weyl: m^{1/2} (tau-1) t^{1/2}/X^{1/2} term", std::sqrt(k_a), 1.0 / 6, 0.0},
        {"Weyl: m^{1/2} t^{1/2}/X^{3/2} term", std::sqrt(k_b), 1.0 / 6, -0.5},
        {"Weyl: m^{-1/2} X^{3/2}/t^{1/2} term", std::sqrt(k_c), -1.0 / 6, 0.5},
        {"Weyl: m (tau-1) t/X^2 term", std::sqrt(k_d), 1.0 / 3, -0.5},
        {"Weyl: m t/X^3 term", std::sqrt(k_e), 1.0 / 3, -1.0},
        {"Weyl: constant 15 term (M cancels)", std::sqrt(k_f), 0.0, 0.0},
    }};
    ShapeSum total;
    for (const auto& pc : pieces) {
        const ShapeSum part = G(pc.gamma).scaled(pc.coef, pc.t_power);
        if (trace) {
            for (const auto& term : part.terms())
                for (std::size_t i = 0; i < q_shapes.size(); ++i)
                    if (same_shape(term.t_power, term.log_power, q_shapes[i].first, q_shapes[i].second))
                        trace->push_back({"c" + std::to_string(i + 1), std::string("block (t^{1/3},t^{2/3}]: ") + pc.name,
                                          term.coef, ""});
        }
        total += part;
    }
    return total;
}

inline std::array<double, 6> block13_coefficients(const BoundParams& p, std::vector<TraceEntry>* trace = nullptr)
{
    const ShapeSum s = block13_shape(p, trace);
    std::array<double, 6> c{};
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = s.coefficient(q_shapes[i].first, q_shapes[i].second);
    for (const auto& term : s.terms()) {
        bool known = false;
        for (const auto& sh : q_shapes)
            known = known || same_shape(term.t_power, term.log_power, sh.first, sh.second);
        if (!known)
            throw std::logic_error("block13_coefficients: unexpected shape in assembly");
    }
    return c;
}

inline double crude_block13(double t2) { return 2.0 * std::cbrt(t2) * (2.0 / 3.0 * std::log(t2) - 2.0) + 4.0; }

struct Block13Result {
    double value = 0;
    std::array<double, 6> c{};
    Branch branch = Branch::blocked;
};

inline double q_polynomial(const std::array<double, 6>& Q, double t)
{
    ShapeSum s;
    for (std::size_t i = 0; i < Q.size(); ++i)
        s.add(Q[i], q_shapes[i].first, q_shapes[i].second);
    return s(t);
}

inline Block13Result block_bound_13(double t, const BoundParams& p)
{
    p.validate();
    if (detail::below(t, e6))
        throw domain_error("block_bound_13: requires t >= e^6");
    Block13Result r;
    r.c = block13_coefficients(p);
    if (t <= p.t2) {
        r.branch = Branch::crude;
        r.value = crude_block13(p.t2);
        return r;
    }
    r.branch = Branch::blocked;
    r.value = q_polynomial(r.c, t);
    return r;
}

/// Integer Weyl shift used in the exact paths: floor(q X / t^{1/3}), at least 1.
inline std::int64_t weyl_shift(double q, double X, double t)
{
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(q * X / std::cbrt(t))));
}

/// The (t^{1/3}, t^{2/3}] chain evaluated block by block: true block
/// lengths, integer M, second-derivative bound for every shift m, exact
/// triangular weights. Always <= the blocked branch of block_bound_13.
inline double block_bound_13_blockwise(double t, const BoundParams& p)
{
    p.validate();
    const BlockScheme scheme = block_scheme(t, 1.0 / 3.0, p.tau, 2.0 / 3.0);
    const double tp3 = std::pow(p.tau + 1.0, 3);
    Accumulator<double> acc;
    for (const Block& b : scheme.blocks) {
        const double X = b.X_lo;
        const std::int64_t M = weyl_shift(p.q, X, t);
        std::vector<double> D;
        D.reserve(static_cast<std::size_t>(M - 1));
        for (std::int64_t m = 1; m < M; ++m) {
            const double V = pi * X * X * X / (static_cast<double>(m) * t);
            D.push_back(vdc_second_derivative_bound({static_cast<double>(b.length()), V, tp3 * V}));
        }
        const double Sj = std::sqrt(weyl_differencing_rhs(static_cast<double>(b.length()), M, D));
        const double first = static_cast<double>(b.N_lo) + 1.0;
        acc.add(std::log(first) / std::sqrt(first) * Sj);
    }
    return acc.value();
}

// ---------------------------------------------------------------------------
// Assembly of Q_1..Q_6

struct BoundCoefficients {
    std::array<double, 11> C{};
    std::array<double, 6> c{};
    std::array<double, 6> Q{};
    std::vector<TraceEntry> derivation_trace;

    [[nodiscard]] std::string trace_text() const { return format_trace(derivation_trace); }
};

inline BoundCoefficients theorem2_coeffs(const BoundParams& p)
{
    p.validate();
    BoundCoefficients out;
    auto& trace = out.derivation_trace;
    out.c = block13_coefficients(p, &trace);
    out.C = block23_coefficients(p.k, &trace);

    std::array<double, 6> Q{};
    auto add_q = [&](std::size_t idx, double v, std::string source, std::string note = {}) {
        Q[idx] += v;
        trace.push_back({"Q" + std::to_string(idx + 1), std::move(source), v, std::move(note)});
    };

    // head: 2 t^{1/6}((1/3) log t - 2)
    add_q(1, 2.0 / 3.0, "head sum n <= t^{1/3}");
    add_q(2, -4.0, "head sum n <= t^{1/3}");

    // (t^{1/3}, t^{2/3}]: c_i map one to one; the crude branch for t <= t2 is a constant.
    for (std::size_t i = 0; i < 6; ++i)
        add_q(i, out.c[i], "c" + std::to_string(i + 1));
    add_q(5, crude_block13(p.t2), "crude bound on (t^{1/3},t^{2/3}] for e^6 <= t <= t2",
          "depends on t2");

    // (t^{2/3}, t]: valid for t > t1, absorbed over t >= max(e^6, t1).
    const double L0 = std::log(std::max(e6, p.t1));
    for (std::size_t i = 0; i < out.C.size(); ++i) {
        const auto [tp, lp] = c23_shapes[i];
        const std::string name = "C" + std::to_string(i + 1);
        if (out.C[i] == 0)
            continue;
        bool placed = false;
        for (std::size_t j = 0; j < q_shapes.size(); ++j) {
            if (same_shape(tp, lp, q_shapes[j].first, q_shapes[j].second)) {
                add_q(j, out.C[i], name);
                placed = true;
            }
        }
        if (placed)
            continue;
        if (out.C[i] < 0) {
            trace.push_back({"-", name, out.C[i], "negative lower-order term dropped"});
            continue;
        }
        // Lower shape: absorb into the smallest dominating Q shape.
        for (std::size_t j = q_shapes.size(); j-- > 0;) {
            const double sup = shape_ratio_sup(tp - q_shapes[j].first, lp - q_shapes[j].second, L0);
            if (std::isfinite(sup)) {
                std::ostringstream note;
                note.precision(17);
                note << "absorbed: sup_{log t >= " << L0 << "} of shape ratio = " << sup;
                add_q(j, out.C[i] * sup, name, note.str());
                break;
            }
        }
    }
    if (!(p.t1 < e6))
        add_q(5, crude_block23(p.t1), "crude bound on (t^{2/3},t] for t <= t1", "depends on t1");
    else
        trace.push_back({"Q6", "crude bound on (t^{2/3},t]", 0.0, "not needed: t1 < e^6 (t1 dependence vanishes)"});

    add_q(4, 2.0, "mid tail (t, t^2]: 2 log t + 1.944");
    add_q(5, 1.944, "mid tail (t, t^2]: 2 log t + 1.944");
    add_q(4, 6.001, "remainder E(s) for t >= e^6: 4.008 + 6.001 log t");
    add_q(5, 4.008, "remainder E(s) for t >= e^6: 4.008 + 6.001 log t");

    for (std::size_t i = 0; i < Q.size(); ++i) {
        if (Q[i] < 0) {
            trace.push_back({"Q" + std::to_string(i + 1), "clamp", -Q[i], "negative total raised to 0"});
            Q[i] = 0;
        }
    }
    out.Q = Q;
    return out;
}

inline ShapeSum q_shape_sum(const std::array<double, 6>& Q)
{
    ShapeSum s;
    for (std::size_t i = 0; i < Q.size(); ++i)
        s.add(Q[i], q_shapes[i].first, q_shapes[i].second);
    return s;
}

/// Sum of the five part bounds at t (no shape absorption).
inline BoundCurve theorem2_parts(double t, const BoundParams& p)
{
    if (detail::below(t, e6))
        throw domain_error("theorem2_bound: requires t >= e^6");
    BoundCurve c;
    c.t = t;
    c.per_term = {{"head", head_sum_bound(t, 1.0 / 3.0)},
                  {"block_13", block_bound_13(t, p).value},
                  {"block_23", block_bound_23(t, p.k, p.t1).value},
                  {"mid_tail", mid_tail_sum_bound(t)},
                  {"remainder_E", tail_error_bound(t)}};
    Accumulator<double> acc;
    for (const auto& [n, v] : c.per_term)
        acc.add(v);
    c.total = acc.value();
    return c;
}

inline BoundCurve theorem2_bound(double t, const BoundParams& p, const BoundCoefficients& coeffs)
{
    BoundCurve c = theorem2_parts(t, p);
    const double parts = c.total;
    c.total = q_polynomial(coeffs.Q, t);
    c.per_term.emplace_back("absorption_slack", c.total - parts);
    return c;
}

inline BoundCurve theorem2_bound(double t, const BoundParams& p) { return theorem2_bound(t, p, theorem2_coeffs(p)); }

/// log of the Q polynomial at t = e^y.
inline double log_theorem2_bound(double y, const BoundCoefficients& coeffs)
{
    if (y < 6.0 - 1e-12)
        throw domain_error("log_theorem2_bound: requires log t >= 6");
    return q_shape_sum(coeffs.Q).log_value(y);
}

} // namespace zetabound
