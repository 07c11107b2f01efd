#pragma once

#include "smoothprog/dirichlet.hpp"
#include "smoothprog/mellin.hpp"
#include "smoothprog/primes.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace smoothprog {

/// Saddle-point data for Psi(x, y) restricted to integers coprime to q.
struct SaddleData {
    double x = 0;
    double y = 0;
    std::uint64_t q = 1;
    double u = 0;      // log x / log y
    double alpha = 0;  // root of sum_{p <= y, p !| q} log p / (p^alpha - 1) = log x
    double xi = 0;     // root of e^xi = 1 + xi u (0 when u <= 1)
    double phi2 = 0;   // sum p^alpha log^2 p / (p^alpha - 1)^2
    double log_L = 0;  // log L(alpha, chi_0; y)
    double residual = 0;
};

/// Positive root of e^xi = 1 + xi u. Requires u > 1.
double solve_xi(double u);

/// sum over p <= y, p !| q of log p / (p^alpha - 1); strictly decreasing in alpha.
double saddle_sum(double alpha, double y, const PrimeTable& table, std::uint64_t q = 1);

/// Unique alpha > 0 with saddle_sum(alpha) = log x. Bracketed bisection with guarded Newton.
double solve_alpha(double x, double y, const PrimeTable& table, std::uint64_t q = 1);

double phi2(double alpha, double y, std::uint64_t q, const PrimeTable& table);

/// log L(sigma, chi_0; y) = -sum_{p <= y, p !| q} log(1 - p^-sigma).
double log_L_principal(double sigma, double y, std::uint64_t q, const PrimeTable& table);

SaddleData compute_saddle(double x, double y, const PrimeTable& table, std::uint64_t q = 1);

/// Truncated Euler product prod_{p <= y} (1 - chi(p) p^-s)^-1 along a vertical line.
///
/// The per-prime coefficients chi(p) p^-sigma are computed once; value(t) is the
/// product at s = sigma + i t, accumulated in log space.
class EulerProduct {
public:
    EulerProduct(const Character& chi, double y, double sigma, const PrimeTable& table);

    double sigma() const noexcept { return sigma_; }
    /// sum_p -log(1 - chi(p) p^-(sigma + i t)), principal branch per factor.
    std::complex<double> log_value(double t) const;
    std::complex<double> value(double t) const { return std::exp(log_value(t)); }

private:
    double sigma_;
    std::vector<double> log_p_;
    std::vector<std::complex<double>> coeff_;
};

std::complex<double> L_truncated(std::complex<double> s, const Character& chi, double y, const PrimeTable& table);

/// x^alpha L(alpha, chi_0; y) check Phi(alpha) / sqrt(2 pi phi2), combined in log space.
/// Primes dividing q are left out of L, phi2 and the saddle equation.
double ht_estimate(double x, double y, const MellinEvaluator& ev, const PrimeTable& table, std::uint64_t q = 1);
double ht_estimate(double x, double y, const SmoothWeight& weight, const PrimeTable& table, std::uint64_t q = 1);

} // namespace smoothprog
