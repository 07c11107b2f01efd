#include "smoothprog/weight.hpp"

#include "smoothprog/errors.hpp"
#include "smoothprog/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace smoothprog {

namespace bump {

namespace {

constexpr QuadratureSettings kRampQuadrature{6, 1e-12, 1e-16};

// m-th derivative of g(s) = 1/s + 1/(1-s).
double g_derivative(int m, double s)
{
    double fact = 1.0;
    for (int i = 2; i <= m; ++i)
        fact *= i;
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    return sign * fact / std::pow(s, m + 1) + fact / std::pow(1.0 - s, m + 1);
}

} // namespace

double value(double s)
{
    if (!(s > 0.0 && s < 1.0))
        return 0.0;
    return std::exp(-1.0 / (s * (1.0 - s)));
}

double derivative(int n, double s)
{
    const double b = value(s);
    if (n == 0 || b == 0.0)
        return n == 0 ? b : 0.0;
    // b^(n) = -sum_{j<n} C(n-1, j) g^(j+1) b^(n-1-j)
    std::array<double, 64> d{};
    if (n >= static_cast<int>(d.size()))
        throw DomainError("bump derivative order too large: " + std::to_string(n));
    std::array<double, 64> g{};
    for (int m = 1; m <= n; ++m)
        g[m] = g_derivative(m, s);
    d[0] = b;
    for (int m = 1; m <= n; ++m) {
        double acc = 0.0;
        double binom = 1.0;  // C(m-1, j)
        for (int j = 0; j < m; ++j) {
            acc += binom * g[j + 1] * d[m - 1 - j];
            binom = binom * (m - 1 - j) / (j + 1);
        }
        d[m] = -acc;
    }
    return d[n];
}

namespace {

constexpr int kRampNodes = 256;

// Cumulative integrals of b at s_i = i / kRampNodes; short pieces keep every
// Gauss-Kronrod call well inside its convergence radius.
const std::array<double, kRampNodes + 1>& cumulative_table()
{
    static const auto table = [] {
        std::array<double, kRampNodes + 1> t{};
        auto b = [](double s) { return value(s); };
        for (int i = 0; i < kRampNodes; ++i) {
            const double lo = static_cast<double>(i) / kRampNodes;
            const double hi = static_cast<double>(i + 1) / kRampNodes;
            t[i + 1] = t[i] + integrate(b, lo, hi, kRampQuadrature).value;
        }
        return t;
    }();
    return table;
}

} // namespace

double normalization() { return cumulative_table()[kRampNodes]; }

double ramp(double s)
{
    if (s <= 0.0)
        return 0.0;
    if (s >= 1.0)
        return 1.0;
    const auto& table = cumulative_table();
    const int i = std::min(static_cast<int>(s * kRampNodes), kRampNodes - 1);
    const double node = static_cast<double>(i) / kRampNodes;
    auto b = [](double t) { return value(t); };
    const double partial = integrate(b, node, s, kRampQuadrature).value;
    return std::clamp((table[i] + partial) / table[kRampNodes], 0.0, 1.0);
}

} // namespace bump

SmoothWeight::SmoothWeight(WeightSide side, double epsilon, int k_max)
    : side_(side), epsilon_(epsilon), k_max_(k_max)
{
    if (!(epsilon > 0.0 && epsilon < 0.5))
        throw DomainError("weight epsilon must lie in (0, 1/2), got " + std::to_string(epsilon));
    if (k_max < 1 || k_max > 40)
        throw DomainError("weight k_max must lie in [1, 40], got " + std::to_string(k_max));
}

double SmoothWeight::operator()(double t) const
{
    if (t < 0.0 || std::isnan(t))
        throw DomainError("weight evaluated at negative t");
    const double a = transition_begin();
    if (t <= a)
        return 1.0;
    if (t >= a + epsilon_)
        return 0.0;
    return 1.0 - bump::ramp((t - a) / epsilon_);
}

double SmoothWeight::derivative(int k, double t) const
{
    if (k < 1)
        throw DomainError("derivative order must be >= 1");
    const double s = (t - transition_begin()) / epsilon_;
    return -bump::derivative(k - 1, s) / (bump::normalization() * std::pow(epsilon_, k));
}

double weight_eval(const SmoothWeight& w, double t) { return w(t); }

} // namespace smoothprog
