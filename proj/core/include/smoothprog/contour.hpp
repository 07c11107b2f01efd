#pragma once

#include "smoothprog/dirichlet.hpp"
#include "smoothprog/mellin.hpp"
#include "smoothprog/primes.hpp"

#include <complex>

namespace smoothprog {

struct ContourResult {
    std::complex<double> value;
    double quadrature_error = 0;
    /// Bound on the part of the line integral outside the integrated range.
    double tail_bound = 0;
    /// Half-width of the integrated range.
    double T = 0;
    double alpha = 0;

    double error_estimate() const { return quadrature_error + tail_bound; }
};

/// (1/2pi) int_{t_lo}^{t_hi} L(alpha+it, chi; y) x^{alpha+it} check Phi(alpha+it) dt,
/// with alpha the saddle point for (x, y) over primes coprime to chi's modulus.
ContourResult contour_integral(double x, double y, const Character& chi, const MellinEvaluator& ev, double t_lo,
                               double t_hi, const PrimeTable& table);

/// Bound on (1/2pi) int_{|t| > T} |L x^s check Phi| dt from the derivative-norm decay,
/// using |L(alpha+it, chi; y)| <= L(alpha, chi_0; y).
double contour_tail_bound(double x, double y, std::uint64_t q, const MellinEvaluator& ev, double T,
                          const PrimeTable& table);

/// Smallest T whose tail bound is below rel * the saddle-point size of the integral.
double default_truncation(double x, double y, std::uint64_t q, const MellinEvaluator& ev, const PrimeTable& table,
                          double rel = 1e-3);

/// The truncated inversion integral over [-T, T]; T = 0 gives 0.
ContourResult contour_psi(double x, double y, const Character& chi, const MellinEvaluator& ev, double T,
                          const PrimeTable& table);
/// Same, with T = default_truncation(...).
ContourResult contour_psi(double x, double y, const Character& chi, const MellinEvaluator& ev,
                          const PrimeTable& table);

/// The integral over |t| <= U / sqrt(log x log y), for 1 <= U <= sqrt(u).
ContourResult central_segment(double x, double y, const Character& chi, const MellinEvaluator& ev, double U,
                              const PrimeTable& table);

} // namespace smoothprog
