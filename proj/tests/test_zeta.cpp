#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "zetabound/zeta.hpp"

using namespace zetabound;

namespace {
const double zeta2 = pi * pi / 6;
const EvalPoint s2{0.0, 2.0};

const oracle::Enclosure& zp2()
{
    static const oracle::Enclosure e = oracle::zeta_prime_2();
    return e;
}
} // namespace

TEST(ZetaEM, ValueAtTwo)
{
    const auto z = zeta_em(s2, {50, 5, 1e-12});
    EXPECT_NEAR(z.value.real(), zeta2, 1e-12);
    EXPECT_EQ(z.value.imag(), 0.0);
    EXPECT_LE(std::abs(z.value - zeta2), z.error_bound);
    const auto eta = eta_oracle(s2, 60);
    EXPECT_NEAR(eta.value.real(), zeta2, 1e-12);
    EXPECT_LE(std::abs(z.value - eta.value), z.error_bound + eta.error_bound);
}

TEST(ZetaEM, FirstZero)
{
    const double gamma1 = 14.1347251417;
    const auto z = zeta_em({gamma1}, {200, 6, 1e-9});
    EXPECT_LT(std::abs(z.value), 1e-6);
    const auto o = eta_oracle({gamma1});
    EXPECT_LT(std::abs(o.value), 1e-6);
    // Both parts change sign across the zero under the oracle.
    const auto lo = eta_oracle({gamma1 - 1e-3});
    const auto hi = eta_oracle({gamma1 + 1e-3});
    EXPECT_LT(lo.value.real() * hi.value.real(), 0.0);
    EXPECT_LT(lo.value.imag() * hi.value.imag(), 0.0);
}

TEST(ZetaEM, ConjugateSymmetry)
{
    for (double t : {3.0, 50.0, 777.0}) {
        const EMConfig cfg = default_em_config({t});
        const auto a = zeta_em({t}, cfg);
        const auto b = zeta_em({-t}, cfg);
        EXPECT_NEAR(a.value.real(), b.value.real(), 1e-14 * (1 + std::abs(a.value)));
        EXPECT_NEAR(a.value.imag(), -b.value.imag(), 1e-14 * (1 + std::abs(a.value)));
        const auto da = zeta_prime_em({t}, cfg);
        const auto db = zeta_prime_em({-t}, cfg);
        EXPECT_NEAR(da.value.real(), db.value.real(), 1e-13 * (1 + std::abs(da.value)));
        EXPECT_NEAR(da.value.imag(), -db.value.imag(), 1e-13 * (1 + std::abs(da.value)));
    }
}

TEST(ZetaEM, InvalidConfig)
{
    EXPECT_THROW(zeta_em({10}, {1, 3, 1e-9}), domain_error);
    EXPECT_THROW(zeta_em({10}, {64, 16, 1e-9}), domain_error);
    EXPECT_THROW(zeta_em({0.0, 1.0}, {64, 3, 1e-9}), domain_error);
}

TEST(ZetaEM, FlagsMissedTolerance)
{
    const auto z = zeta_em({1000}, {64, 1, 1e-9});
    EXPECT_FALSE(z.converged);
    EXPECT_GT(z.error_bound, 1e-9);
}

TEST(RemainderBound, ClosedFormAtTwo)
{
    // (|2*3|/2!) * (1/6) * 10^{-3} / 3
    EXPECT_NEAR(em_remainder_bound(s2, 10, 1), 3.0 * (1.0 / 6.0) * 1e-3 / 3.0, 1e-18);
    EXPECT_NEAR(em_remainder_bound(s2, 10, 1), 1.667e-4, 1e-7);
}

TEST(RemainderBound, DoublingN)
{
    for (int v : {1, 3, 6}) {
        const EvalPoint p{25.0};
        const double factor = std::pow(2.0, p.sigma + 2 * v - 1);
        EXPECT_GE(em_remainder_bound(p, 100, v) / em_remainder_bound(p, 200, v), factor * (1 - 1e-12));
    }
}

TEST(RemainderBound, RequiresPositiveV)
{
    EXPECT_THROW(em_remainder_bound({5}, 10, 0), domain_error);
}

TEST(RemainderBound, MonotoneInNAndEventuallyInV)
{
    for (double t : {10.0, 100.0, 1000.0}) {
        const EvalPoint p{t};
        const auto N = static_cast<std::int64_t>(2 * t);
        double prev = INFINITY;
        for (std::int64_t n = N; n < 8 * N; n += N / 2) {
            const double r = em_remainder_bound(p, n, 4);
            EXPECT_LT(r, prev);
            prev = r;
        }
        // with t <= N, the bound decreases in v over the tabulated range
        prev = INFINITY;
        for (int v = 1; v <= 10; ++v) {
            const double r = em_remainder_bound(p, N, v);
            EXPECT_LT(r, prev) << "t=" << t << " v=" << v;
            prev = r;
        }
    }
}

TEST(ZetaPrimeEM, CalibrationAtTwo)
{
    const auto d = zeta_prime_em(s2, {50, 5, 1e-12});
    EXPECT_NEAR(d.value.real(), zp2().mid, 1e-10 + zp2().radius);
    EXPECT_NEAR(d.value.real(), -0.9375482543, 1e-10);
}

TEST(ZetaPrimeEM, MatchesOracleAtE2)
{
    const EvalPoint p{std::exp(2.0)};
    const auto d = zeta_prime_em(p, {10000, 6, 1e-9});
    const auto o = zeta_prime_oracle(p);
    ASSERT_TRUE(o.converged);
    EXPECT_LE(std::abs(d.value - o.value), d.error_bound + o.error_bound);
}

TEST(ZetaPrimeEM, DerivativeRemainderBoundHolds)
{
    // Truncation error at small N must stay below the derivative remainder bound.
    for (double t : {20.0, 60.0, 150.0}) {
        const EvalPoint p{t};
        const auto ref = zeta_prime_em(p, default_em_config(p, 1e-12, true));
        for (int v : {0, 1, 2, 4}) {
            for (std::int64_t N : {static_cast<std::int64_t>(t / 2), static_cast<std::int64_t>(t)}) {
                const auto d = zeta_prime_em(p, {N, v, 1e-9});
                EXPECT_LE(std::abs(d.value - ref.value), d.error_bound + ref.error_bound)
                    << "t=" << t << " v=" << v << " N=" << N;
            }
        }
    }
}

TEST(ZetaPrimeEM, AgreesWithFiniteDifferenceOfZetaEM)
{
    for (double t : {10.0, 100.0, 1000.0}) {
        const EvalPoint p{t};
        const EMConfig cfg = default_em_config(p, 1e-12);
        // Richardson on central differences along t: d/dt zeta = i zeta'.
        auto D = [&](double h) {
            return (zeta_em({t + h}, cfg).value - zeta_em({t - h}, cfg).value) / complex(0, 2 * h);
        };
        const double h = 1e-2;
        const complex d1 = D(h), d2 = D(h / 2), d3 = D(h / 4);
        const complex r12 = d2 + (d2 - d1) / 3.0, r23 = d3 + (d3 - d2) / 3.0;
        const complex fd = r23 + (r23 - r12) / 15.0;
        const double fd_err = std::abs(r23 - r12) + 1e-9;
        const auto an = zeta_prime_em(p, default_em_config(p, 1e-12, true));
        EXPECT_LE(std::abs(an.value - fd), an.error_bound + fd_err) << "t=" << t;
    }
}

TEST(ZetaPrimeEM, ConjugateOfDerivative)
{
    const auto a = zeta_prime_oracle({30.0});
    const auto b = zeta_prime_oracle({-30.0});
    EXPECT_LE(std::abs(a.value - std::conj(b.value)), a.error_bound + b.error_bound);
}

TEST(DefaultConfig, RuleOfEight)
{
    EXPECT_EQ(default_em_config({1.0}).N, 64);
    EXPECT_EQ(default_em_config({100.0}).N, 800);
    EXPECT_EQ(default_em_config({100.2}).N, 802);
    const auto c = default_em_config({1000.0}, 1e-9);
    EXPECT_LT(em_remainder_bound({1000.0}, c.N, c.v), 1e-9);
    if (c.v > 1)
        EXPECT_GE(em_remainder_bound({1000.0}, c.N, c.v - 1), 1e-9);
}

TEST(EtaOracle, HalfIsSelfConsistent)
{
    const EvalPoint half{0.0, 0.5};
    const auto a = eta_oracle(half, 60);
    const auto b = eta_oracle(half, 120);
    EXPECT_NEAR(a.value.real(), b.value.real(), 1e-13);
    EXPECT_NEAR(b.value.real(), -1.4603545088, 1e-10);
}

TEST(EtaOracle, CrossValidatesAtT100)
{
    const EvalPoint p{100.0};
    const auto o = eta_oracle(p, 200);
    const auto z = zeta_em(p, default_em_config(p));
    EXPECT_LE(std::abs(o.value - z.value), o.error_bound + z.error_bound);
}

TEST(EtaOracle, RandomPointsAgreeWithEM)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(0, std::log(1e4));
    for (int i = 0; i < 100; ++i) {
        const EvalPoint p{std::exp(U(rng))};
        const auto z = zeta_em(p, default_em_config(p));
        const auto o = eta_oracle(p);
        ASSERT_LE(std::abs(z.value - o.value), z.error_bound + o.error_bound) << "t=" << p.t;
    }
}

TEST(EtaOracle, DomainErrors)
{
    EXPECT_THROW(eta_oracle({5.0}, 9), domain_error);
    // 1 - 2^{1-s} = 0 at s = 1 + 2 pi i / log 2
    EXPECT_THROW(eta_oracle({2 * pi / std::log(2.0), 1.0}, 40), domain_error);
}

TEST(ZetaPrimeOracle, CalibrationAtTwo)
{
    const auto o = zeta_prime_oracle(s2);
    EXPECT_TRUE(o.converged);
    EXPECT_NEAR(o.value.real(), zp2().mid, 1e-8);
}

TEST(ZetaPrimeOracle, RejectsStencilNearPole)
{
    EXPECT_THROW(zeta_prime_oracle({0.3}), domain_error);
}
