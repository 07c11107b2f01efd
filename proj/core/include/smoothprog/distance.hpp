#pragma once

#include "smoothprog/dirichlet.hpp"
#include "smoothprog/primes.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace smoothprog {

/// Values of a completely multiplicative function at primes, each in the unit disc.
class PrimeFunction {
public:
    PrimeFunction() = default;
    /// Throws DomainError if a value has modulus above 1 + 1e-12 or a prime repeats.
    explicit PrimeFunction(std::vector<std::pair<std::uint64_t, std::complex<double>>> values);

    /// The constant c on primes p <= y with p !| q.
    static PrimeFunction constant(std::complex<double> c, double y, std::uint64_t q, const PrimeTable& table);
    /// p -> chi(p) p^{-it} on primes p <= y with p !| q (t = 0 gives chi itself).
    static PrimeFunction twisted_character(const Character& chi, double t, double y, const PrimeTable& table);
    /// p -> p^{-it} on primes p <= y with p !| q.
    static PrimeFunction archimedean(double t, double y, std::uint64_t q, const PrimeTable& table);

    std::optional<std::complex<double>> at(std::uint64_t p) const;
    std::span<const std::uint64_t> primes() const noexcept { return primes_; }
    std::span<const std::complex<double>> values() const noexcept { return values_; }

    /// Pointwise product on the common domain.
    PrimeFunction operator*(const PrimeFunction& other) const;

private:
    std::vector<std::uint64_t> primes_;
    std::vector<std::complex<double>> values_;
};

/// D_alpha(f, g; y)^2 = sum_{p <= y, p !| q} (1 - Re(conj(f(p)) g(p))) / p^alpha.
/// Throws DomainError if f or g lacks a value at such a prime.
double distance_squared(const PrimeFunction& f, const PrimeFunction& g, double alpha, double y, std::uint64_t q,
                        const PrimeTable& table);
double distance(const PrimeFunction& f, const PrimeFunction& g, double alpha, double y, std::uint64_t q,
                const PrimeTable& table);

/// D_alpha(1, chi(p) p^{-it}; y) as a function of t, with the per-prime data
/// precomputed so that scanning many t is cheap.
class TwistedDistance {
public:
    TwistedDistance(const Character& chi, double alpha, double y, const PrimeTable& table);

    double squared(double t) const;

private:
    std::vector<double> weight_;  // p^-alpha
    std::vector<double> log_p_;
    std::vector<double> angle_;   // arg chi(p)
};

double dist_char_twist(const Character& chi, double t, double alpha, double y, const PrimeTable& table);

struct TwistMinimum {
    double t_min = 0;
    double d2_min = 0;
};

/// Minimum of D^2(1, chi(p) p^{-it}) over |t| <= t_max: scan of the grid
/// {0, +-step, ..., +-t_max}, then golden-section refinement to 1e-6 around the
/// best grid point. The returned value never exceeds the best grid value.
TwistMinimum min_dist_over_t(const Character& chi, double alpha, double y, double t_max, double grid_step,
                             const PrimeTable& table);

struct FlaggedCharacter {
    Character chi;
    std::uint64_t order = 1;
    double t_min = 0;
    double d2_min = 0;
};

/// Problem characters and the joint kernel H of their values.
struct ProblemSet {
    std::uint64_t q = 1;
    std::uint64_t B = 1;
    double threshold = 0;
    double t_max = 0;
    double grid_step = 0;
    std::vector<FlaggedCharacter> flagged;
    /// Sorted residues h with chi(h) = 1 for every flagged chi.
    std::vector<std::uint64_t> H;
    std::uint64_t index = 1;
    /// Cosets of H, each sorted, ordered by their minimal element.
    std::vector<std::vector<std::uint64_t>> cosets;

    /// Minimal element of the coset containing a; throws DomainError for non-units.
    std::uint64_t coset_representative(std::uint64_t a) const;
};

struct FlagOptions {
    double threshold_scale = 1.0;
    /// Replaces threshold_scale * sqrt(u) / (40 B^2) when set.
    std::optional<double> threshold;
    /// Replaces the default grid step 1 / (4 B log y) when set.
    std::optional<double> grid_step;
};

/// sqrt(u) / (40 B^2).
double default_threshold(double u, std::uint64_t B);

/// Flags every nonprincipal chi of order <= B whose minimal twisted distance over
/// |t| <= sqrt(q) / (2B) is at most the threshold, then builds H and its cosets.
ProblemSet flag_problem_characters(const CharacterGroup& group, double alpha, double y, double u, std::uint64_t B,
                                   const PrimeTable& table, const FlagOptions& opts = {});

/// Builds H, the cosets and the index for a given flagged list.
ProblemSet build_problem_set(const CharacterGroup& group, std::vector<FlaggedCharacter> flagged, std::uint64_t B,
                             double threshold);

/// phi(q) / |H|; throws InvariantViolation if |H| does not divide phi(q).
std::uint64_t subgroup_index(const ProblemSet& ps);

} // namespace smoothprog
