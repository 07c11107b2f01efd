#include "smoothprog/saddle.hpp"

#include "smoothprog/errors.hpp"
#include "summation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace smoothprog {

namespace {

// log p for primes p <= y with p !| q.
std::vector<double> coprime_log_primes(double y, std::uint64_t q, const PrimeTable& table)
{
    if (!(y >= 2.0))
        throw DomainError("y must be >= 2, got " + std::to_string(y));
    if (static_cast<double>(table.limit()) < std::floor(y))
        throw DomainError("prime table limit " + std::to_string(table.limit()) + " below y = " +
                          std::to_string(y));
    std::vector<double> out;
    for (std::uint64_t p : table.primes_up_to(y))
        if (q % p != 0)
            out.push_back(std::log(static_cast<double>(p)));
    return out;
}

struct SaddleEquation {
    std::vector<double> log_p;
    double log_x;

    // F(alpha) = sum log p / (p^alpha - 1) - log x
    double value(double alpha) const
    {
        detail::CompensatedSum s;
        for (double l : log_p)
            s.add(l / std::expm1(alpha * l));
        s.add(-log_x);
        return s.value();
    }

    // F'(alpha) = -sum log^2 p p^alpha / (p^alpha - 1)^2
    double slope(double alpha) const
    {
        double s = 0.0;
        for (double l : log_p) {
            const double e = std::expm1(alpha * l);
            if (std::isfinite(e))
                s += l * l * (e + 1.0) / (e * e);
        }
        return -s;
    }
};

} // namespace

double solve_xi(double u)
{
    if (!(u > 1.0))
        throw DomainError("xi(u) needs u > 1, got " + std::to_string(u));
    // h(xi) = (e^xi - 1)/xi - u is increasing on (0, inf) with h(0+) = 1 - u < 0.
    auto h = [u](double xi) { return std::expm1(xi) / xi - u; };
    double lo = 0.0;
    double hi = 1.0;
    while (h(hi) <= 0.0) {
        lo = hi;
        hi *= 2.0;
    }
    for (int iter = 0; iter < 2000; ++iter) {
        const double mid = lo == 0.0 ? hi / 2.0 : lo + (hi - lo) / 2.0;
        if (mid <= lo || mid >= hi)
            break;
        (h(mid) > 0.0 ? hi : lo) = mid;
    }
    // Both ends bracket the root to the last ulp; take the better one.
    const double r_lo = lo > 0.0 ? std::abs(std::expm1(lo) - lo * u) : INFINITY;
    const double r_hi = std::abs(std::expm1(hi) - hi * u);
    const double xi = r_lo <= r_hi ? lo : hi;
    const double residual = std::min(r_lo, r_hi);
    if (residual > 1e-12 * (1.0 + xi * u))
        throw NumericError("xi(u) did not converge for u = " + std::to_string(u), residual);
    return xi;
}

double saddle_sum(double alpha, double y, const PrimeTable& table, std::uint64_t q)
{
    return SaddleEquation{coprime_log_primes(y, q, table), 0.0}.value(alpha);
}

double solve_alpha(double x, double y, const PrimeTable& table, std::uint64_t q)
{
    if (!(x > 1.0))
        throw DomainError("saddle point needs x > 1, got " + std::to_string(x));
    const SaddleEquation eq{coprime_log_primes(y, q, table), std::log(x)};
    if (eq.log_p.empty())
        throw DomainError("no primes p <= y coprime to q");

    double lo = 1e-3;
    double hi = 2.0;
    while (eq.value(lo) < 0.0) {
        lo /= 2.0;
        if (lo < 1e-300)
            throw NumericError("saddle point below representable range", eq.value(lo));
    }
    while (eq.value(hi) > 0.0)
        hi *= 2.0;

    const double u = eq.log_x / std::log(y);
    double alpha = 0.5 * (lo + hi);
    if (u > 1.0) {
        const double guess = 1.0 - solve_xi(u) / std::log(y);
        if (guess > lo && guess < hi)
            alpha = guess;
    }

    const double tol = 1e-13 * eq.log_x;
    for (int iter = 0; iter < 400; ++iter) {
        const double f = eq.value(alpha);
        if (std::abs(f) <= tol)
            break;
        (f > 0.0 ? lo : hi) = alpha;
        if (!(hi - lo > 2.0 * std::numeric_limits<double>::epsilon() * alpha))
            break;
        double next = alpha - f / eq.slope(alpha);
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        alpha = next;
    }
    const double residual = std::abs(eq.value(alpha));
    if (residual > 1e-9 * eq.log_x)
        throw NumericError("saddle point did not converge", residual);
    return alpha;
}

double phi2(double alpha, double y, std::uint64_t q, const PrimeTable& table)
{
    if (!(alpha > 0.0))
        throw DomainError("phi2 needs alpha > 0");
    const auto log_p = coprime_log_primes(y, q, table);
    detail::CompensatedSum s;
    for (double l : log_p) {
        const double e = std::expm1(alpha * l);
        if (std::isfinite(e))
            s.add(l * l * (e + 1.0) / (e * e));
    }
    return s.value();
}

double log_L_principal(double sigma, double y, std::uint64_t q, const PrimeTable& table)
{
    if (!(sigma > 0.0))
        throw DomainError("log L needs sigma > 0");
    detail::CompensatedSum s;
    for (double l : coprime_log_primes(y, q, table))
        s.add(-std::log1p(-std::exp(-sigma * l)));
    return s.value();
}

SaddleData compute_saddle(double x, double y, const PrimeTable& table, std::uint64_t q)
{
    SaddleData d;
    d.x = x;
    d.y = y;
    d.q = q;
    d.alpha = solve_alpha(x, y, table, q);
    d.u = std::log(x) / std::log(y);
    d.xi = d.u > 1.0 ? solve_xi(d.u) : 0.0;
    d.phi2 = phi2(d.alpha, y, q, table);
    d.log_L = log_L_principal(d.alpha, y, q, table);
    d.residual = std::abs(saddle_sum(d.alpha, y, table, q) - std::log(x));
    return d;
}

EulerProduct::EulerProduct(const Character& chi, double y, double sigma, const PrimeTable& table)
    : sigma_(sigma)
{
    if (!(sigma > 0.0))
        throw DomainError("Euler product needs Re(s) > 0, got " + std::to_string(sigma));
    if (!(y >= 2.0) || static_cast<double>(table.limit()) < std::floor(y))
        throw DomainError("prime table does not cover y = " + std::to_string(y));
    for (std::uint64_t p : table.primes_up_to(y)) {
        const auto v = chi(static_cast<std::int64_t>(p));
        if (v == std::complex<double>(0.0, 0.0))
            continue;
        const double l = std::log(static_cast<double>(p));
        log_p_.push_back(l);
        coeff_.push_back(v * std::exp(-sigma * l));
    }
}

std::complex<double> EulerProduct::log_value(double t) const
{
    detail::ComplexCompensatedSum s;
    for (std::size_t i = 0; i < log_p_.size(); ++i) {
        const std::complex<double> z = coeff_[i] * std::polar(1.0, -t * log_p_[i]);
        const std::complex<double> w = 1.0 - z;
        if (w == std::complex<double>(0.0, 0.0))
            throw PoleError("Euler factor vanishes");
        // log(1 - z) with log|1 - z| via log1p for small |z|.
        const double log_abs = 0.5 * std::log1p(-2.0 * z.real() + std::norm(z));
        s.add(-std::complex<double>(log_abs, std::arg(w)));
    }
    return s.value();
}

std::complex<double> L_truncated(std::complex<double> s, const Character& chi, double y, const PrimeTable& table)
{
    return EulerProduct(chi, y, s.real(), table).value(s.imag());
}

double ht_estimate(double x, double y, const MellinEvaluator& ev, const PrimeTable& table, std::uint64_t q)
{
    const SaddleData d = compute_saddle(x, y, table, q);
    const double mellin = ev.transform(d.alpha).value.real();
    const double log_est = d.alpha * std::log(x) + d.log_L + std::log(mellin) -
                           0.5 * std::log(2.0 * std::numbers::pi * d.phi2);
    return std::exp(log_est);
}

double ht_estimate(double x, double y, const SmoothWeight& weight, const PrimeTable& table, std::uint64_t q)
{
    return ht_estimate(x, y, MellinEvaluator(weight), table, q);
}

} // namespace smoothprog
