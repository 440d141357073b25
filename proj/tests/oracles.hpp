#pragma once
// Independent reference computations used only by the tests.

#include <cmath>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using rational = boost::multiprecision::cpp_rational;

/// Exact rational value of a finite double.
inline rational exact(double x)
{
    int e = 0;
    const double m = std::frexp(x, &e); // x = m 2^e, 0.5 <= |m| < 1
    const auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
    rational r(mant);
    e -= 53;
    boost::multiprecision::cpp_int p = 1;
    p <<= std::abs(e);
    return e >= 0 ? r * rational(p) : r / rational(p);
}

/// Bernoulli numbers B_0..B_n by the Akiyama-Tanigawa algorithm (B_1 = +1/2).
inline std::vector<rational> bernoulli_akiyama_tanigawa(int n)
{
    std::vector<rational> out(static_cast<std::size_t>(n) + 1);
    std::vector<rational> a(static_cast<std::size_t>(n) + 1);
    for (int m = 0; m <= n; ++m) {
        a[m] = rational(1, m + 1);
        for (int j = m; j >= 1; --j)
            a[j - 1] = j * (a[j - 1] - a[j]);
        out[m] = a[0];
    }
    return out;
}

/// zeta'(2) = -sum log n / n^2. Direct sum to n_max, the tail enclosed
/// between the integrals over [n_max+1, inf) and [n_max, inf) of log x / x^2.
struct Enclosure {
    double mid;
    double radius;
};

inline Enclosure zeta_prime_2(std::int64_t n_max = 10'000'000)
{
    // Pairwise-free compensated sum, smallest terms first.
    double s = 0, c = 0;
    for (std::int64_t n = n_max; n >= 2; --n) {
        const double x = static_cast<double>(n);
        const double y = std::log(x) / (x * x) - c;
        const double u = s + y;
        c = (u - s) - y;
        s = u;
    }
    auto tail = [](double a) { return (std::log(a) + 1.0) / a; };
    const double lo = tail(static_cast<double>(n_max) + 1.0);
    const double hi = tail(static_cast<double>(n_max));
    return {-(s + 0.5 * (lo + hi)), 0.5 * (hi - lo) + 1e-15};
}

/// sum_{j>=0, X_j = r^j t^alpha, floor(X_j) < floor(t^beta)} X_j^gamma log X_j,
/// computed by walking the geometric sequence.
inline double geometric_block_sum(double t, double alpha, double beta, double r, double gamma)
{
    const double X0 = std::pow(t, alpha);
    const double top = std::floor(std::pow(t, beta));
    double s = 0;
    for (int j = 0;; ++j) {
        const double X = X0 * std::pow(r, j);
        if (!(std::floor(X) < top))
            break;
        s += std::pow(X, gamma) * std::log(X);
    }
    return s;
}

} // namespace oracle
