#include "smoothprog/smooth.hpp"

#include "smoothprog/errors.hpp"
#include "summation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace smoothprog {

namespace {

void check_bounds(double x, double y)
{
    if (!(x >= 1.0))
        throw DomainError("smooth enumeration needs x >= 1, got " + std::to_string(x));
    if (!(y >= 2.0))
        throw DomainError("smooth enumeration needs y >= 2, got " + std::to_string(y));
}

// Primes usable as factors of a y-smooth n <= limit.
std::span<const std::uint32_t> factor_base(std::uint64_t limit, double y, const PrimeTable& table)
{
    const double bound = std::min(y, static_cast<double>(limit));
    if (bound >= 2.0 && static_cast<double>(table.limit()) < std::floor(bound))
        throw DomainError("prime table limit " + std::to_string(table.limit()) +
                          " does not cover primes up to " + std::to_string(std::floor(bound)));
    return table.primes_up_to(bound);
}

template <class Visit>
void visit_smooth(std::uint64_t limit, double y, const PrimeTable& table, const EnumerationOptions& opts,
                  Visit&& visit)
{
    const auto primes = factor_base(limit, y, table);
    std::uint64_t visits = 0;
    for_each_smooth(limit, primes, [&](std::uint64_t n) {
        if (++visits > opts.max_visits)
            throw CapacityError("smooth enumeration exceeded visit budget of " +
                                std::to_string(opts.max_visits));
        visit(n);
    });
}

} // namespace

std::uint64_t SmoothCounts::count(std::uint64_t a) const
{
    auto it = per_residue.find(a % q);
    return it == per_residue.end() ? 0 : it->second;
}

PrimeTable table_for(double x, double y, const PrimeTableOptions& opts)
{
    const double bound = std::max(2.0, std::min(x, y));
    return PrimeTable(floor_to_u64(bound), opts);
}

bool is_smooth(std::int64_t n, double y, const PrimeTable& table)
{
    if (n <= 0)
        throw DomainError("smoothness test needs n >= 1, got " + std::to_string(n));
    auto r = static_cast<std::uint64_t>(n);
    if (r == 1 || static_cast<double>(r) <= y)
        return true;
    if (r <= table.spf_limit()) {
        while (r > 1) {
            const std::uint32_t p = table.spf(r);
            if (static_cast<double>(p) > y)
                return false;
            r /= p;
        }
        return true;
    }
    for (std::uint64_t p : table.primes_up_to(y)) {
        if (p * p > r)
            return static_cast<double>(r) <= y;  // r is 1 or prime
        while (r % p == 0)
            r /= p;
        if (r == 1)
            return true;
    }
    // r has no prime factor <= min(y, limit).
    if (static_cast<double>(table.limit()) >= std::floor(y))
        return false;
    if (static_cast<double>(r) <= y)
        return true;
    const std::uint64_t lim = table.limit();
    if (r <= lim * lim)
        return false;  // r is a prime above y
    throw CapacityError("prime table too small to test smoothness of " + std::to_string(n));
}

std::vector<std::uint64_t> enumerate_smooth(double x, double y, const PrimeTable& table,
                                            const EnumerationOptions& opts)
{
    check_bounds(x, y);
    const std::uint64_t limit = floor_to_u64(x);
    std::vector<std::uint64_t> out;
    visit_smooth(limit, y, table, opts, [&](std::uint64_t n) {
        if (out.size() >= opts.max_materialized)
            throw CapacityError("smooth list exceeds materialization budget of " +
                                std::to_string(opts.max_materialized));
        out.push_back(n);
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::uint64_t> enumerate_smooth(double x, double y)
{
    check_bounds(x, y);
    return enumerate_smooth(x, y, table_for(x, y));
}

std::uint64_t psi_exact(double x, double y, const PrimeTable& table, const EnumerationOptions& opts)
{
    check_bounds(x, y);
    std::uint64_t count = 0;
    visit_smooth(floor_to_u64(x), y, table, opts, [&](std::uint64_t) { ++count; });
    return count;
}

std::uint64_t psi_exact(double x, double y)
{
    check_bounds(x, y);
    return psi_exact(x, y, table_for(x, y));
}

SmoothCounts psi_progression_exact(double x, double y, std::uint64_t q, const PrimeTable& table,
                                   const EnumerationOptions& opts)
{
    check_bounds(x, y);
    if (q < 1)
        throw DomainError("modulus must be >= 1");
    const CharacterGroup group(q, GroupOptions{std::max<std::uint64_t>(q, 1)});
    std::vector<std::uint64_t> by_class(q, 0);
    visit_smooth(floor_to_u64(x), y, table, opts, [&](std::uint64_t n) { ++by_class[n % q]; });

    SmoothCounts out;
    out.x = x;
    out.y = y;
    out.q = q;
    for (std::uint64_t a : group.reduced_residues()) {
        out.per_residue.emplace(a, by_class[a]);
        out.psi_q += by_class[a];
    }
    return out;
}

std::complex<double> psi_character_exact(double x, double y, const Character& chi, const PrimeTable& table,
                                         const EnumerationOptions& opts)
{
    check_bounds(x, y);
    const auto values = chi.value_table();
    const std::uint64_t q = chi.group().modulus();
    detail::ComplexCompensatedSum sum;
    visit_smooth(floor_to_u64(x), y, table, opts, [&](std::uint64_t n) { sum.add(values[n % q]); });
    return sum.value();
}

std::complex<double> psi_character_from_counts(const SmoothCounts& counts, const Character& chi)
{
    if (chi.group().modulus() != counts.q)
        throw DomainError("character modulus does not match the counts");
    detail::ComplexCompensatedSum sum;
    for (auto [a, c] : counts.per_residue)
        sum.add(static_cast<double>(c) * chi(static_cast<std::int64_t>(a)));
    return sum.value();
}

std::complex<double> psi_weighted_exact(double x, double y, const Character& chi, const SmoothWeight& weight,
                                        const PrimeTable& table, const EnumerationOptions& opts)
{
    check_bounds(x, y);
    const auto values = chi.value_table();
    const std::uint64_t q = chi.group().modulus();
    const double plateau = x * weight.transition_begin();
    detail::ComplexCompensatedSum sum;
    visit_smooth(floor_to_u64(x * weight.transition_end()), y, table, opts, [&](std::uint64_t n) {
        const auto v = values[n % q];
        const double nd = static_cast<double>(n);
        if (nd <= plateau)
            sum.add(v);
        else
            sum.add(v * weight(nd / x));
    });
    return sum.value();
}

} // namespace smoothprog
