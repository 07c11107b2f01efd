#pragma once

namespace smoothprog {

enum class WeightSide { lower, upper };

/// Smooth cutoff approximating the indicator of [0, 1].
///
/// lower: 1 on [0, 1-eps], 0 on [1, inf).  upper: 1 on [0, 1], 0 on [1+eps, inf).
/// On the transition interval [a, a+eps] the weight is 1 - R((t-a)/eps), where R
/// is the normalized integral of the bump b(s) = exp(-1/(s(1-s))) on (0, 1).
class SmoothWeight {
public:
    SmoothWeight(WeightSide side, double epsilon, int k_max = 8);

    WeightSide side() const noexcept { return side_; }
    double epsilon() const noexcept { return epsilon_; }
    int k_max() const noexcept { return k_max_; }

    double transition_begin() const noexcept { return side_ == WeightSide::lower ? 1.0 - epsilon_ : 1.0; }
    double transition_end() const noexcept { return transition_begin() + epsilon_; }

    /// Phi(t), t >= 0.
    double operator()(double t) const;
    /// k-th derivative Phi^(k)(t) for k >= 1; zero off the transition interval.
    double derivative(int k, double t) const;

private:
    WeightSide side_;
    double epsilon_;
    int k_max_;
};

double weight_eval(const SmoothWeight& w, double t);

namespace bump {
/// b(s) = exp(-1/(s(1-s))) on (0, 1), zero elsewhere.
double value(double s);
/// n-th derivative of b, exact recursion through derivatives of 1/s + 1/(1-s).
double derivative(int n, double s);
/// Integral of b over (0, 1).
double normalization();
/// R(s) = (1/C) * integral of b over (0, s), clamped to [0, 1].
double ramp(double s);
} // namespace bump

} // namespace smoothprog
