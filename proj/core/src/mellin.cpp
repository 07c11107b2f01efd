#include "smoothprog/mellin.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace smoothprog {

namespace {

// Interior sign changes of b^(n) on (0, 1), located by a grid scan and bisection.
std::vector<double> bump_derivative_roots(int n)
{
    std::vector<double> roots;
    if (n == 0)
        return roots;
    constexpr int kGrid = 4096;
    auto f = [n](double s) { return bump::derivative(n, s); };
    double prev_s = 0.0;
    double prev_v = 0.0;
    for (int i = 1; i < kGrid; ++i) {
        const double s = static_cast<double>(i) / kGrid;
        const double v = f(s);
        if (v == 0.0)
            continue;
        if (prev_v != 0.0 && (v > 0.0) != (prev_v > 0.0)) {
            double lo = prev_s, hi = s;
            const bool lo_positive = prev_v > 0.0;
            for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = f(mid);
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                ((fm > 0.0) == lo_positive ? lo : hi) = mid;
            }
            roots.push_back(0.5 * (lo + hi));
        }
        prev_s = s;
        prev_v = v;
    }
    return roots;
}

void require_right_half_plane(std::complex<double> s)
{
    if (!(s.real() > 0.0))
        throw DomainError("Mellin transform needs Re(s) > 0, got Re(s) = " + std::to_string(s.real()));
}

} // namespace

MellinEvaluator::MellinEvaluator(SmoothWeight weight, QuadratureSettings settings)
    : weight_(weight), settings_(settings)
{
}

MellinEvaluator::MellinEvaluator(const MellinEvaluator& other)
    : weight_(other.weight_), settings_(other.settings_)
{
    std::lock_guard lock(other.mutex_);
    norm_cache_ = other.norm_cache_;
}

Integral<std::complex<double>> MellinEvaluator::transform(std::complex<double> s) const
{
    require_right_half_plane(s);
    const double a = weight_.transition_begin();
    const double b = weight_.transition_end();
    const double log_span = std::log(b / a);
    const auto panels = static_cast<std::size_t>(std::ceil(std::abs(s.imag()) * log_span / std::numbers::pi)) + 1;

    auto integrand = [&](double t) -> std::complex<double> {
        return weight_.derivative(1, t) * std::exp(s * std::log(t));
    };
    auto inner = integrate(integrand, a, b, settings_, panels);
    const std::complex<double> factor = -1.0 / s;
    return {factor * inner.value, std::abs(factor) * inner.error, std::abs(factor) * inner.l1};
}

double MellinEvaluator::derivative_norm(double sigma, int k) const
{
    if (k < 1 || k > weight_.k_max())
        throw DomainError("derivative order " + std::to_string(k) + " outside [1, " +
                          std::to_string(weight_.k_max()) + "]");
    if (!(sigma > 0.0))
        throw DomainError("derivative norm needs sigma > 0");
    const auto key = std::make_pair(sigma, k);
    {
        std::lock_guard lock(mutex_);
        if (auto it = norm_cache_.find(key); it != norm_cache_.end())
            return it->second;
    }
    const double a = weight_.transition_begin();
    const double b = weight_.transition_end();
    auto integrand = [&](double t) { return weight_.derivative(k, t) * std::pow(t, sigma + k - 1); };
    // Integrate between consecutive sign changes so |.| never meets a kink.
    std::vector<double> cuts{a};
    for (double r : bump_derivative_roots(k - 1))
        cuts.push_back(a + weight_.epsilon() * r);
    cuts.push_back(b);
    double norm = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const auto piece = integrate(integrand, cuts[i], cuts[i + 1], settings_);
        norm += std::abs(piece.value) + piece.error;
    }
    std::lock_guard lock(mutex_);
    norm_cache_.emplace(key, norm);
    return norm;
}

double MellinEvaluator::decay_bound(std::complex<double> s, int k) const
{
    require_right_half_plane(s);
    double denom = 1.0;
    for (int j = 0; j < k; ++j)
        denom *= std::abs(s + static_cast<double>(j));
    return derivative_norm(s.real(), k) / denom;
}

std::complex<double> mellin_transform(const MellinEvaluator& ev, std::complex<double> s)
{
    return ev.transform(s).value;
}

double decay_bound(const MellinEvaluator& ev, std::complex<double> s, int k)
{
    return ev.decay_bound(s, k);
}

} // namespace smoothprog
