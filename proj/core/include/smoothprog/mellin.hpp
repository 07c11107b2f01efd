#pragma once

#include "smoothprog/quadrature.hpp"
#include "smoothprog/weight.hpp"

#include <complex>
#include <map>
#include <mutex>
#include <utility>

namespace smoothprog {

/// Mellin transform of a SmoothWeight and the derivative norms behind its decay bound.
///
/// The transform is taken in integrated-by-parts form,
///     check Phi(s) = -(1/s) * int_a^{a+eps} Phi'(t) t^s dt,
/// which equals int_0^inf Phi(t) t^{s-1} dt for Re(s) > 0 and only needs the
/// closed-form derivative on the transition interval.
///
/// Derivative norms M_k(sigma) = int |Phi^(k)(t)| t^{sigma+k-1} dt are cached per
/// (sigma, k) under a mutex; safe for concurrent use.
class MellinEvaluator {
public:
    explicit MellinEvaluator(SmoothWeight weight, QuadratureSettings settings = {});

    MellinEvaluator(const MellinEvaluator& other);
    MellinEvaluator& operator=(const MellinEvaluator&) = delete;

    const SmoothWeight& weight() const noexcept { return weight_; }
    const QuadratureSettings& settings() const noexcept { return settings_; }

    Integral<std::complex<double>> transform(std::complex<double> s) const;

    /// M_k(sigma) inflated by its quadrature error so the bound stays an upper bound.
    double derivative_norm(double sigma, int k) const;

    /// M_k(Re s) / |s (s+1) ... (s+k-1)|, an upper bound for |check Phi(s)|.
    double decay_bound(std::complex<double> s, int k) const;

private:
    SmoothWeight weight_;
    QuadratureSettings settings_;
    mutable std::mutex mutex_;
    mutable std::map<std::pair<double, int>, double> norm_cache_;
};

std::complex<double> mellin_transform(const MellinEvaluator& ev, std::complex<double> s);
double decay_bound(const MellinEvaluator& ev, std::complex<double> s, int k);

} // namespace smoothprog
