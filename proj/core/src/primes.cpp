#include "smoothprog/primes.hpp"

#include "smoothprog/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace smoothprog {

namespace {

// Linear sieve: every composite is crossed out exactly once, by its smallest prime factor.
void linear_sieve(std::uint64_t limit, std::vector<std::uint32_t>& primes,
                  std::vector<std::uint32_t>& spf)
{
    spf.assign(limit + 1, 0);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (spf[i] == 0) {
            spf[i] = static_cast<std::uint32_t>(i);
            primes.push_back(static_cast<std::uint32_t>(i));
        }
        for (std::uint32_t p : primes) {
            if (p > spf[i] || i * p > limit)
                break;
            spf[i * p] = p;
        }
    }
}

// Odds-only Eratosthenes; index k stands for 2k+1.
void odd_sieve(std::uint64_t limit, std::vector<std::uint32_t>& primes)
{
    primes.push_back(2);
    const std::uint64_t half = (limit - 1) / 2 + 1;
    std::vector<bool> composite(half, false);
    for (std::uint64_t k = 1; k < half; ++k) {
        if (composite[k])
            continue;
        const std::uint64_t p = 2 * k + 1;
        if (p * p > limit)
            break;
        for (std::uint64_t j = p * p / 2; j < half; j += p)
            composite[j] = true;
    }
    primes.reserve(static_cast<std::size_t>(1.1 * limit / std::log(static_cast<double>(limit))) + 8);
    for (std::uint64_t k = 1; k < half; ++k)
        if (!composite[k])
            primes.push_back(static_cast<std::uint32_t>(2 * k + 1));
}

} // namespace

PrimeTable::PrimeTable(std::uint64_t limit, const PrimeTableOptions& opts) : limit_(limit)
{
    if (limit < 2)
        throw DomainError("prime table limit must be >= 2, got " + std::to_string(limit));
    if (limit > opts.max_limit || limit > 0xFFFFFFFFull)
        throw CapacityError("prime table limit " + std::to_string(limit) +
                            " exceeds budget " + std::to_string(opts.max_limit));
    if (limit <= opts.spf_limit)
        linear_sieve(limit, primes_, spf_);
    else
        odd_sieve(limit, primes_);
}

std::span<const std::uint32_t> PrimeTable::primes_up_to(double bound) const noexcept
{
    if (!(bound >= 2.0))
        return {};
    const auto cut = bound >= static_cast<double>(limit_) ? limit_
                                                          : static_cast<std::uint64_t>(bound);
    auto end = std::upper_bound(primes_.begin(), primes_.end(), cut);
    return {primes_.data(), static_cast<std::size_t>(end - primes_.begin())};
}

bool PrimeTable::is_prime(std::uint64_t n) const
{
    if (n < 2)
        return false;
    if (n <= limit_) {
        if (has_spf())
            return spf_[n] == n;
        return std::binary_search(primes_.begin(), primes_.end(), n);
    }
    for (std::uint64_t p : primes_) {
        if (p * p > n)
            return true;
        if (n % p == 0)
            return false;
    }
    if (limit_ * limit_ >= n)
        return true;
    throw CapacityError("primality of " + std::to_string(n) + " not decidable from table");
}

PrimeTable build_prime_table(std::uint64_t limit, const PrimeTableOptions& opts)
{
    return PrimeTable(limit, opts);
}

std::uint64_t floor_to_u64(double v)
{
    if (std::isnan(v))
        throw DomainError("bound is NaN");
    if (v < 0)
        return 0;
    if (v >= 9.2e18)
        throw CapacityError("bound exceeds 64-bit integer range");
    return static_cast<std::uint64_t>(std::floor(v));
}

} // namespace smoothprog
