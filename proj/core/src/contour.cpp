#include "smoothprog/contour.hpp"

#include "smoothprog/errors.hpp"
#include "smoothprog/saddle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace smoothprog {

namespace {

// Smallest over 2 <= k <= k_max of M_k / ((k - 1) T^(k-1)), i.e. int_T^inf of the
// decay bound with |s (s+1) ... (s+k-1)| >= |t|^k.
double tail_integral(const MellinEvaluator& ev, double sigma, double T)
{
    double best = std::numeric_limits<double>::infinity();
    for (int k = 2; k <= ev.weight().k_max(); ++k)
        best = std::min(best, ev.derivative_norm(sigma, k) / ((k - 1) * std::pow(T, k - 1)));
    return best;
}

ContourResult integrate_line(double x, double y, const Character& chi, const MellinEvaluator& ev, double t_lo,
                             double t_hi, const PrimeTable& table, const SaddleData& saddle)
{
    ContourResult out;
    out.alpha = saddle.alpha;
    out.T = std::max(std::abs(t_lo), std::abs(t_hi));
    if (!(t_hi > t_lo))
        return out;

    const double log_x = std::log(x);
    const EulerProduct euler(chi, y, saddle.alpha, table);
    // Integrand divided by x^alpha L(alpha, chi_0; y), which bounds its modulus.
    auto integrand = [&](double t) -> std::complex<double> {
        const std::complex<double> log_mod = euler.log_value(t) - saddle.log_L + std::complex<double>(0.0, t * log_x);
        return std::exp(log_mod) * ev.transform({saddle.alpha, t}).value / (2.0 * std::numbers::pi);
    };
    const double freq = log_x + std::log(y);
    const auto panels = static_cast<std::size_t>(std::ceil((t_hi - t_lo) * freq / (4.0 * std::numbers::pi))) + 1;
    const auto res = integrate(integrand, t_lo, t_hi, ev.settings(), panels);

    const double scale = std::exp(saddle.alpha * log_x + saddle.log_L);
    out.value = scale * res.value;
    out.quadrature_error = scale * res.error;
    return out;
}

} // namespace

ContourResult contour_integral(double x, double y, const Character& chi, const MellinEvaluator& ev, double t_lo,
                               double t_hi, const PrimeTable& table)
{
    const SaddleData saddle = compute_saddle(x, y, table, chi.group().modulus());
    return integrate_line(x, y, chi, ev, t_lo, t_hi, table, saddle);
}

double contour_tail_bound(double x, double y, std::uint64_t q, const MellinEvaluator& ev, double T,
                          const PrimeTable& table)
{
    const SaddleData saddle = compute_saddle(x, y, table, q);
    if (!(T > 0.0))
        return std::numeric_limits<double>::infinity();
    const double scale = std::exp(saddle.alpha * std::log(x) + saddle.log_L);
    return scale * tail_integral(ev, saddle.alpha, T) / std::numbers::pi;
}

double default_truncation(double x, double y, std::uint64_t q, const MellinEvaluator& ev, const PrimeTable& table,
                          double rel)
{
    const SaddleData saddle = compute_saddle(x, y, table, q);
    const double mellin = ev.transform(saddle.alpha).value.real();
    // tail <= rel * x^a L check Phi(a) / sqrt(2 pi phi2), per unit of x^a L / pi
    const double target = rel * std::numbers::pi * mellin / std::sqrt(2.0 * std::numbers::pi * saddle.phi2);
    double best = std::numeric_limits<double>::infinity();
    for (int k = 2; k <= ev.weight().k_max(); ++k) {
        const double mk = ev.derivative_norm(saddle.alpha, k);
        best = std::min(best, std::pow(mk / ((k - 1) * target), 1.0 / (k - 1)));
    }
    return best;
}

ContourResult contour_psi(double x, double y, const Character& chi, const MellinEvaluator& ev, double T,
                          const PrimeTable& table)
{
    if (!(T >= 0.0))
        throw DomainError("truncation height must be >= 0, got " + std::to_string(T));
    const std::uint64_t q = chi.group().modulus();
    const SaddleData saddle = compute_saddle(x, y, table, q);
    ContourResult out;
    out.alpha = saddle.alpha;
    if (T == 0.0)
        return out;
    // Mirrored halves: for real chi the integrand at -t is the conjugate of that at t.
    const auto left = integrate_line(x, y, chi, ev, -T, 0.0, table, saddle);
    const auto right = integrate_line(x, y, chi, ev, 0.0, T, table, saddle);
    out.value = left.value + right.value;
    out.quadrature_error = left.quadrature_error + right.quadrature_error;
    out.tail_bound = contour_tail_bound(x, y, q, ev, T, table);
    out.T = T;
    return out;
}

ContourResult contour_psi(double x, double y, const Character& chi, const MellinEvaluator& ev,
                          const PrimeTable& table)
{
    const double T = default_truncation(x, y, chi.group().modulus(), ev, table);
    return contour_psi(x, y, chi, ev, T, table);
}

ContourResult central_segment(double x, double y, const Character& chi, const MellinEvaluator& ev, double U,
                              const PrimeTable& table)
{
    if (!(x > 1.0) || !(y >= 2.0))
        throw DomainError("central segment needs x > 1 and y >= 2");
    const double log_x = std::log(x);
    const double log_y = std::log(y);
    const double u = log_x / log_y;
    if (!(U >= 1.0) || U > std::sqrt(u) * (1.0 + 1e-12))
        throw DomainError("central segment needs 1 <= U <= sqrt(u) = " + std::to_string(std::sqrt(u)) +
                          ", got U = " + std::to_string(U));
    const double half_width = U / std::sqrt(log_x * log_y);
    const SaddleData saddle = compute_saddle(x, y, table, chi.group().modulus());
    const auto left = integrate_line(x, y, chi, ev, -half_width, 0.0, table, saddle);
    const auto right = integrate_line(x, y, chi, ev, 0.0, half_width, table, saddle);
    ContourResult out;
    out.alpha = saddle.alpha;
    out.value = left.value + right.value;
    out.quadrature_error = left.quadrature_error + right.quadrature_error;
    out.T = half_width;
    return out;
}

} // namespace smoothprog
