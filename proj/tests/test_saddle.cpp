#include "oracles.hpp"

#include "smoothprog/errors.hpp"
#include "smoothprog/saddle.hpp"
#include "smoothprog/smooth.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

using namespace smoothprog;

namespace {

const PrimeTable& table()
{
    static const PrimeTable t(10'000);
    return t;
}

} // namespace

TEST(Xi, Examples)
{
    EXPECT_NEAR(solve_xi(std::numbers::e - 1.0), 1.0, 1e-12);
    EXPECT_LT(solve_xi(1.0 + 1e-6), 1e-2);
    EXPECT_GT(solve_xi(1.0 + 1e-6), 0.0);
    EXPECT_THROW(solve_xi(1.0), DomainError);
    EXPECT_THROW(solve_xi(0.5), DomainError);
}

TEST(Xi, FrozenAtTen)
{
    constexpr double kXi10 = 3.6149504270875306;  // root of e^z - 1 - 10 z, 30-digit arithmetic
    EXPECT_NEAR(oracle::xi(10.0), kXi10, 1e-11);
    const double xi = solve_xi(10.0);
    EXPECT_NEAR(xi, kXi10, 1e-11);
    EXPECT_LE(std::abs(std::exp(xi) - 1.0 - 10.0 * xi), 1e-12 * (1.0 + 10.0 * xi));
}

TEST(Xi, ResidualAcrossRange)
{
    for (double u : {1.001, 1.5, 2.0, 5.0, 20.0, 100.0, 1e4}) {
        const double xi = solve_xi(u);
        EXPECT_LE(std::abs(std::expm1(xi) - u * xi), 1e-12 * (1.0 + xi * u)) << u;
    }
}

TEST(Alpha, FrozenAtMillionThousand)
{
    constexpr double kAlpha = 0.81077222611698198;  // high-precision root of the saddle equation
    EXPECT_NEAR(oracle::alpha(1e6, 1e3), kAlpha, 1e-11);
    EXPECT_NEAR(solve_alpha(1e6, 1e3, table()), kAlpha, 1e-11);
}

TEST(Alpha, ResidualGrid)
{
    for (double x : {1e4, 1e6, 1e8})
        for (double y : {1e2, 1e3, 1e4}) {
            if (!(y < x))
                continue;
            const double a = solve_alpha(x, y, table());
            EXPECT_LE(std::abs(saddle_sum(a, y, table()) - std::log(x)), 1e-9 * std::log(x)) << x << " " << y;
            // strictly decreasing around the root
            EXPECT_GT(saddle_sum(a - 1e-3, y, table()), std::log(x));
            EXPECT_LT(saddle_sum(a + 1e-3, y, table()), std::log(x));
        }
}

TEST(Alpha, NearFirstOrderApproximation)
{
    const double x = 1e8, y = 1e3;
    const double u = std::log(x) / std::log(y);
    const double approx = 1.0 - solve_xi(u) / std::log(y);
    EXPECT_LE(std::abs(solve_alpha(x, y, table()) - approx), 10.0 / std::log(x));
}

TEST(Alpha, Errors)
{
    EXPECT_THROW(solve_alpha(1.0, 100, table()), DomainError);
    EXPECT_THROW(solve_alpha(100, 1.5, table()), DomainError);
    EXPECT_THROW(solve_alpha(1e6, 1e5, PrimeTable(100)), DomainError);
}

TEST(Alpha, Deterministic)
{
    const double a = solve_alpha(3.3e7, 271.5, table(), 12);
    const double b = solve_alpha(3.3e7, 271.5, table(), 12);
    EXPECT_EQ(std::memcmp(&a, &b, sizeof a), 0);
    const double c = solve_xi(7.25), d = solve_xi(7.25);
    EXPECT_EQ(std::memcmp(&c, &d, sizeof c), 0);
}

TEST(Alpha, CoprimeToModulusDropsPrimes)
{
    // q = 6 removes 2 and 3 from the saddle equation
    const double a6 = solve_alpha(1e6, 100, table(), 6);
    double s = 0;
    for (auto p : oracle::primes_up_to(100))
        if (p != 2 && p != 3)
            s += std::log(static_cast<double>(p)) / (std::pow(static_cast<double>(p), a6) - 1.0);
    EXPECT_NEAR(s, std::log(1e6), 1e-9 * std::log(1e6));
}

TEST(Phi2, FrozenAndPositive)
{
    constexpr double kPhi2 = 10.994376987789951;  // 25 primes <= 100 at alpha = 1
    EXPECT_NEAR(oracle::phi2(1.0, 100), kPhi2, 1e-12);
    EXPECT_NEAR(phi2(1.0, 100, 1, table()), kPhi2, 1e-12);
    EXPECT_GT(phi2(0.3, 10, 7, table()), 0.0);
}

TEST(Phi2, WindowAtDeskScale)
{
    const auto s = compute_saddle(1e6, 1e3, table());
    const double ratio = s.phi2 / (std::log(1e6) * std::log(1e3));
    EXPECT_GE(ratio, 0.05);
    EXPECT_LE(ratio, 20.0);
}

TEST(SaddleData, Invariants)
{
    const auto s = compute_saddle(1e7, 50, table(), 3);
    EXPECT_NEAR(s.u, std::log(1e7) / std::log(50.0), 1e-14);
    EXPECT_GT(s.u, 1.0);
    EXPECT_GT(s.phi2, 0.0);
    EXPECT_GT(s.log_L, 0.0);
    EXPECT_LE(std::abs(s.residual), 1e-9 * std::log(1e7));
    EXPECT_NEAR(s.xi, solve_xi(s.u), 0.0);
}

TEST(LogL, DeskScaleWindow)
{
    // log L(alpha, chi_0; y) ~ u; window [0.4, 1.6] over u in [5, 20] at y = 10^3
    for (double u : {5.0, 10.0, 20.0}) {
        const auto s = compute_saddle(std::pow(1e3, u), 1e3, table());
        const double ratio = s.log_L / u;
        EXPECT_GE(ratio, 0.4) << "u=" << u;
        EXPECT_LE(ratio, 1.6) << "u=" << u << " ratio=" << ratio;
    }
}

TEST(LTruncated, SingleFactor)
{
    const auto v = L_truncated({1.0, 0.0}, build_group(1).principal(), 2, table());
    EXPECT_NEAR(v.real(), 2.0, 1e-14);
    EXPECT_NEAR(v.imag(), 0.0, 1e-14);
}

TEST(LTruncated, MatchesSmoothSeries)
{
    // sum of n^-2 over 10-smooth n <= 10^6, plus a bound on the missing tail
    double series = 0;
    for (auto n : enumerate_smooth(1e6, 10))
        series += 1.0 / (static_cast<double>(n) * static_cast<double>(n));
    const auto v = L_truncated({2.0, 0.0}, build_group(1).principal(), 10, table());
    EXPECT_NEAR(v.real(), series, 1e-6);
    EXPECT_NEAR(v.real(), (4.0 / 3) * (9.0 / 8) * (25.0 / 24) * (49.0 / 48), 1e-13);
}

TEST(LTruncated, BoundedByPrincipalOnTheLine)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> t(-500, 500);
    const auto g = build_group(11);
    const auto chars = g.characters();
    std::uniform_int_distribution<std::size_t> pick(0, chars.size() - 1);
    const double alpha = 0.7;
    const double bound = std::exp(log_L_principal(alpha, 100, 11, table()));
    for (int i = 0; i < 100; ++i) {
        const auto v = L_truncated({alpha, t(rng)}, chars[pick(rng)], 100, table());
        EXPECT_LE(std::abs(v), bound * (1 + 1e-12));
    }
}

TEST(LTruncated, EulerProductAgreesWithDirect)
{
    const auto g = build_group(9);
    for (const auto& chi : g.characters()) {
        const EulerProduct e(chi, 50, 0.6, table());
        for (double t : {0.0, 1.5, -30.0}) {
            std::complex<double> direct = 1.0;
            for (auto p : oracle::primes_up_to(50))
                direct /= 1.0 - chi(static_cast<std::int64_t>(p)) *
                                    std::pow(static_cast<double>(p), std::complex<double>(-0.6, -t));
            EXPECT_LT(std::abs(e.value(t) - direct), 1e-12 * std::abs(direct));
        }
    }
}

TEST(HtEstimate, PositiveAndMonotone)
{
    const SmoothWeight w(WeightSide::lower, 0.05);
    double prev = 0;
    for (double x : {1e4, 1e5, 1e6}) {
        const double v = ht_estimate(x, 100, w, table());
        EXPECT_GT(v, prev);
        prev = v;
    }
}

TEST(HtEstimate, WithinTwentyPercentOfExact)
{
    const SmoothWeight w(WeightSide::lower, 0.05);
    const double ht = ht_estimate(1e6, 100, w, table());
    const double exact = psi_weighted_exact(1e6, 100, build_group(1).principal(), w, table()).real();
    EXPECT_LE(std::abs(ht / exact - 1.0), 0.2);
}
