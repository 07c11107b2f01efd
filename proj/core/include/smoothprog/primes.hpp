#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace smoothprog {

struct PrimeTableOptions {
    /// Largest limit accepted at all.
    std::uint64_t max_limit = 1'000'000'000;
    /// Largest limit for which the smallest-prime-factor array is kept
    /// (4 bytes per integer).
    std::uint64_t spf_limit = 1u << 24;
};

/// All primes up to `limit`, plus smallest prime factors when they fit the budget.
/// Immutable after construction; safe for concurrent reads.
class PrimeTable {
public:
    explicit PrimeTable(std::uint64_t limit, const PrimeTableOptions& opts = {});

    std::uint64_t limit() const noexcept { return limit_; }
    std::span<const std::uint32_t> primes() const noexcept { return primes_; }

    /// Primes p <= bound (bound clipped to the table limit).
    std::span<const std::uint32_t> primes_up_to(double bound) const noexcept;

    bool has_spf() const noexcept { return !spf_.empty(); }
    std::uint64_t spf_limit() const noexcept { return has_spf() ? limit_ : 0; }
    /// Smallest prime factor of n, 2 <= n <= spf_limit().
    std::uint32_t spf(std::uint64_t n) const { return spf_[n]; }

    bool is_prime(std::uint64_t n) const;

private:
    std::uint64_t limit_;
    std::vector<std::uint32_t> primes_;
    std::vector<std::uint32_t> spf_;
};

PrimeTable build_prime_table(std::uint64_t limit, const PrimeTableOptions& opts = {});

/// floor(v) for a real bound, clamped at zero. Throws CapacityError above 2^63.
std::uint64_t floor_to_u64(double v);

} // namespace smoothprog
