#include "oracles.hpp"

#include "smoothprog/contour.hpp"
#include "smoothprog/errors.hpp"
#include "smoothprog/mellin.hpp"
#include "smoothprog/saddle.hpp"
#include "smoothprog/smooth.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <thread>

using namespace smoothprog;

TEST(Weight, Examples)
{
    const SmoothWeight w(WeightSide::lower, 0.1);
    EXPECT_EQ(weight_eval(w, 0.5), 1.0);
    EXPECT_EQ(weight_eval(w, 1.2), 0.0);
    const double mid = weight_eval(w, 0.95);
    EXPECT_GT(mid, 0.0);
    EXPECT_LT(mid, 1.0);
    EXPECT_THROW(weight_eval(w, -0.1), DomainError);
}

TEST(Weight, SupportAndMonotone)
{
    for (auto side : {WeightSide::lower, WeightSide::upper})
        for (double eps : {0.01, 0.1, 0.3}) {
            const SmoothWeight w(side, eps);
            const double a = w.transition_begin();
            EXPECT_EQ(w(0.0), 1.0);
            EXPECT_EQ(w(a), 1.0);
            EXPECT_EQ(w(a + eps), 0.0);
            if (side == WeightSide::lower) {
                EXPECT_EQ(w(1.0 - eps), 1.0);
                EXPECT_EQ(w(1.0), 0.0);
            } else {
                EXPECT_EQ(w(1.0), 1.0);
                EXPECT_EQ(w(1.0 + eps), 0.0);
            }
            double prev = 1.0;
            for (int i = 0; i <= 1000; ++i) {
                const double v = w(a + eps * i / 1000.0);
                EXPECT_GE(v, 0.0);
                EXPECT_LE(v, 1.0);
                EXPECT_LE(v, prev + 1e-15);
                prev = v;
            }
        }
}

TEST(Weight, RejectsBadParameters)
{
    EXPECT_THROW(SmoothWeight(WeightSide::lower, 0.0), DomainError);
    EXPECT_THROW(SmoothWeight(WeightSide::lower, 0.5), DomainError);
    EXPECT_THROW(SmoothWeight(WeightSide::upper, 0.1, 0), DomainError);
}

TEST(Weight, RampMatchesSimpsonOracle)
{
    const double C = oracle::simpson(oracle::bump, 0.0, 1.0, 20000);
    EXPECT_NEAR(bump::normalization(), C, 1e-15);
    EXPECT_NEAR(C, 0.0070298584066096562, 1e-16);
    for (double s : {0.05, 0.2, 0.5, 0.73, 0.99}) {
        const double r = oracle::simpson(oracle::bump, 0.0, s, 20000) / C;
        EXPECT_NEAR(bump::ramp(s), r, 1e-12) << s;
    }
    EXPECT_NEAR(bump::ramp(0.5), 0.5, 1e-14);
}

TEST(Weight, DerivativesMatchFiniteDifferences)
{
    const SmoothWeight w(WeightSide::upper, 0.2, 8);
    for (double t : {1.03, 1.1, 1.17}) {
        const double h = 1e-5;
        const double d1 = (w(t + h) - w(t - h)) / (2 * h);
        EXPECT_NEAR(w.derivative(1, t), d1, 1e-6 * std::abs(d1) + 1e-9);
        for (int k = 2; k <= 4; ++k) {
            const double h2 = 1e-5;
            const double fd = (w.derivative(k - 1, t + h2) - w.derivative(k - 1, t - h2)) / (2 * h2);
            EXPECT_NEAR(w.derivative(k, t), fd, 1e-6 * std::abs(fd) + 1e-6) << "k=" << k << " t=" << t;
        }
    }
    EXPECT_EQ(w.derivative(3, 0.5), 0.0);
    EXPECT_EQ(w.derivative(3, 1.5), 0.0);
}

TEST(Mellin, Examples)
{
    const MellinEvaluator ev(SmoothWeight(WeightSide::lower, 0.05));
    const auto at1 = mellin_transform(ev, 1.0);
    EXPECT_LE(std::abs(at1 - 1.0), 0.05);
    for (double a : {0.2, 0.7, 1.3}) {
        const auto v = mellin_transform(ev, a);
        EXPECT_GT(v.real(), 0.0);
        EXPECT_EQ(v.imag(), 0.0);
    }
    const std::complex<double> s(0.8, 5.0);
    EXPECT_LT(std::abs(mellin_transform(ev, std::conj(s)) - std::conj(mellin_transform(ev, s))), 1e-10);
    EXPECT_THROW(mellin_transform(ev, {0.0, 1.0}), DomainError);
    EXPECT_THROW(mellin_transform(ev, {-0.5, 0.0}), DomainError);
}

TEST(Mellin, MatchesDirectDefinition)
{
    // int_0^{1+eps} Phi(t) t^{s-1} dt by plain Simpson on the transition plus the closed plateau
    const SmoothWeight w(WeightSide::upper, 0.1);
    const MellinEvaluator ev(w);
    for (std::complex<double> s : {std::complex<double>(0.7, 0.0), {0.5, 3.0}, {1.1, -20.0}}) {
        const double a = w.transition_begin(), b = w.transition_end();
        auto re = [&](double t) { return (w(t) * std::pow(t, s - 1.0)).real(); };
        auto im = [&](double t) { return (w(t) * std::pow(t, s - 1.0)).imag(); };
        const std::complex<double> plateau = std::pow(a, s) / s;
        const std::complex<double> direct =
            plateau + std::complex<double>(oracle::simpson(re, a, b, 20000), oracle::simpson(im, a, b, 20000));
        EXPECT_LT(std::abs(mellin_transform(ev, s) - direct), 1e-10) << s;
    }
}

TEST(Mellin, SecondDerivativeNormFrozen)
{
    // int |Phi''(t)| t^{1.7} dt for the lower weight with eps = 0.1; 30-digit quadrature
    constexpr double kM2 = 47.7705890237854;
    const SmoothWeight w(WeightSide::lower, 0.1);
    const MellinEvaluator ev(w);
    EXPECT_NEAR(ev.derivative_norm(0.7, 2), kM2, 1e-8 * kM2);

    // Simpson on a central difference of the closed-form first derivative
    const double h = 1e-6;
    auto f = [&](double t) {
        const double d2 = (w.derivative(1, t + h) - w.derivative(1, t - h)) / (2 * h);
        return std::abs(d2) * std::pow(t, 1.7);
    };
    const double simpson = oracle::simpson(f, w.transition_begin(), w.transition_end(), 40000);
    EXPECT_NEAR(simpson, kM2, 1e-5 * kM2);
}

TEST(Mellin, DerivativeNormsCachedAndValidated)
{
    const MellinEvaluator ev(SmoothWeight(WeightSide::lower, 0.05, 4));
    const double m = ev.derivative_norm(0.9, 3);
    EXPECT_GE(m, 0.0);
    EXPECT_EQ(ev.derivative_norm(0.9, 3), m);
    EXPECT_THROW(ev.derivative_norm(0.9, 5), DomainError);
    EXPECT_THROW(ev.derivative_norm(0.9, 0), DomainError);
    EXPECT_THROW(decay_bound(ev, {0.9, 2.0}, 5), DomainError);
}

TEST(Mellin, ConcurrentDerivativeNorms)
{
    const MellinEvaluator ev(SmoothWeight(WeightSide::upper, 0.1));
    std::vector<double> results(8);
    std::vector<std::thread> threads;
    for (int i = 0; i < 8; ++i)
        threads.emplace_back([&, i] { results[static_cast<std::size_t>(i)] = ev.derivative_norm(0.6, 1 + i % 4); });
    for (auto& t : threads)
        t.join();
    for (int i = 0; i < 8; ++i)
        EXPECT_EQ(results[static_cast<std::size_t>(i)], ev.derivative_norm(0.6, 1 + i % 4));
}

TEST(Mellin, DecayBoundHolds)
{
    const MellinEvaluator ev(SmoothWeight(WeightSide::lower, 0.05));
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> sigma(0.3, 1.2), t(-1000.0, 1000.0);
    for (int i = 0; i < 20; ++i) {
        const std::complex<double> s(sigma(rng), t(rng));
        EXPECT_LE(std::abs(mellin_transform(ev, s)), decay_bound(ev, s, 1) * (1 + 1e-6)) << s;
    }
}

TEST(Mellin, DecayBoundScaling)
{
    const MellinEvaluator ev(SmoothWeight(WeightSide::lower, 0.05));
    const double b64 = decay_bound(ev, {0.7, 64.0}, 4);
    const double b128 = decay_bound(ev, {0.7, 128.0}, 4);
    EXPECT_LE(b128 / b64, 1.0 / 8.0);
}

namespace {

const PrimeTable& table()
{
    static const PrimeTable t(1000);
    return t;
}

} // namespace

TEST(Contour, MatchesExactWeightedCount)
{
    const SmoothWeight w(WeightSide::lower, 0.05);
    const MellinEvaluator ev(w);
    const auto chi0 = build_group(7).principal();
    const auto r = contour_psi(1e4, 30, chi0, ev, table());
    const double exact = psi_weighted_exact(1e4, 30, chi0, w, table()).real();
    EXPECT_LE(std::abs(r.value.real() / exact - 1.0), 1e-2);
    EXPECT_LE(r.tail_bound, 1e-3 * ht_estimate(1e4, 30, ev, table(), 7) * (1 + 1e-9));
    EXPECT_LE(std::abs(r.value.imag()), 1e-9 * std::abs(r.value));
}

TEST(Contour, EmptyRangeAndAdditivity)
{
    const MellinEvaluator ev(SmoothWeight(WeightSide::upper, 0.1));
    const auto chi = build_group(5).characters()[1];
    EXPECT_EQ(contour_psi(1e3, 10, chi, ev, 0.0, table()).value, std::complex<double>(0, 0));
    const auto whole = contour_integral(1e3, 10, chi, ev, -40, 40, table());
    const auto left = contour_integral(1e3, 10, chi, ev, -40, 7, table());
    const auto right = contour_integral(1e3, 10, chi, ev, 7, 40, table());
    EXPECT_LT(std::abs(whole.value - left.value - right.value),
              10 * (whole.quadrature_error + left.quadrature_error + right.quadrature_error) + 1e-9);
}

TEST(Contour, TailBoundDecreasesAndTruncationMeetsTarget)
{
    const MellinEvaluator ev(SmoothWeight(WeightSide::lower, 0.05));
    EXPECT_GT(contour_tail_bound(1e3, 10, 1, ev, 10, table()), contour_tail_bound(1e3, 10, 1, ev, 100, table()));
    const double T = default_truncation(1e3, 10, 1, ev, table());
    const double ht = ht_estimate(1e3, 10, ev, table());
    EXPECT_LE(contour_tail_bound(1e3, 10, 1, ev, T, table()), 1e-3 * ht * 1.0001);
}

TEST(CentralSegment, ConjugateSymmetryAndRange)
{
    const MellinEvaluator ev(SmoothWeight(WeightSide::lower, 0.05));
    const auto g = build_group(7);
    const double u = std::log(1e4) / std::log(30.0);
    const auto chi = g.characters()[1];
    const auto a = central_segment(1e4, 30, chi, ev, 1.3, table()).value;
    const auto b = central_segment(1e4, 30, chi.conj(), ev, 1.3, table()).value;
    EXPECT_LT(std::abs(a - std::conj(b)), 1e-9 * std::abs(a));
    EXPECT_THROW(central_segment(1e4, 30, chi, ev, 0.5, table()), DomainError);
    EXPECT_THROW(central_segment(1e4, 30, chi, ev, std::sqrt(u) + 0.1, table()), DomainError);
}

TEST(CentralSegment, PlusComplementReproducesTruncatedIntegral)
{
    const MellinEvaluator ev(SmoothWeight(WeightSide::lower, 0.05));
    const auto chi0 = build_group(7).principal();
    const double x = 1e4, y = 30;
    const double u = std::log(x) / std::log(y);
    const double U = std::sqrt(u);
    const double w = U / std::sqrt(std::log(x) * std::log(y));
    const double T = std::sqrt(7.0);
    const auto mid = central_segment(x, y, chi0, ev, U, table());
    const auto lo = contour_integral(x, y, chi0, ev, -T, -w, table());
    const auto hi = contour_integral(x, y, chi0, ev, w, T, table());
    const auto full = contour_psi(x, y, chi0, ev, T, table());
    const double err = mid.quadrature_error + lo.quadrature_error + hi.quadrature_error + full.quadrature_error;
    EXPECT_LE(std::abs(mid.value + lo.value + hi.value - full.value), 10 * err + 1e-9 * std::abs(full.value));
}

TEST(CentralSegment, WithinTenPercentOfContour)
{
    const MellinEvaluator ev(SmoothWeight(WeightSide::lower, 0.05));
    const auto chi0 = build_group(7).principal();
    const double u = std::log(1e4) / std::log(30.0);
    const auto mid = central_segment(1e4, 30, chi0, ev, std::sqrt(u), table());
    const auto full = contour_psi(1e4, 30, chi0, ev, table());
    EXPECT_LE(std::abs(mid.value.real() / full.value.real() - 1.0), 0.10)
        << "central " << mid.value.real() << " full " << full.value.real();
}
