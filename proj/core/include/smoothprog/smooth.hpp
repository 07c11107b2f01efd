#pragma once

#include "smoothprog/dirichlet.hpp"
#include "smoothprog/primes.hpp"
#include "smoothprog/weight.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace smoothprog {

struct EnumerationOptions {
    /// Largest list enumerate_smooth will materialize.
    std::uint64_t max_materialized = 50'000'000;
    /// Largest number of smooth integers any streaming pass will visit.
    std::uint64_t max_visits = 4'000'000'000;
};

/// Exact smooth counts in every reduced class mod q.
struct SmoothCounts {
    double x = 0;
    double y = 0;
    std::uint64_t q = 1;
    std::map<std::uint64_t, std::uint64_t> per_residue;
    std::uint64_t psi_q = 0;

    std::uint64_t count(std::uint64_t a) const;
};

/// Visits every integer n in [1, limit] whose prime factors all lie in `primes`
/// (ascending), by depth-first products with nondecreasing prime index. Each
/// such n is visited exactly once; the visiting order is deterministic.
template <class Visit>
void for_each_smooth(std::uint64_t limit, std::span<const std::uint32_t> primes, Visit&& visit)
{
    if (limit == 0)
        return;
    visit(std::uint64_t{1});
    struct Frame {
        std::uint64_t n;
        std::size_t next;
    };
    std::vector<Frame> stack;
    stack.reserve(72);
    stack.push_back({1, 0});
    while (!stack.empty()) {
        Frame& top = stack.back();
        if (top.next >= primes.size() || primes[top.next] > limit / top.n) {
            stack.pop_back();
            continue;
        }
        const std::size_t i = top.next++;
        const std::uint64_t m = top.n * primes[i];
        visit(m);
        stack.push_back({m, i});
    }
}

/// Prime table large enough for enumeration with bounds (x, y).
PrimeTable table_for(double x, double y, const PrimeTableOptions& opts = {});

bool is_smooth(std::int64_t n, double y, const PrimeTable& table);

std::vector<std::uint64_t> enumerate_smooth(double x, double y, const PrimeTable& table,
                                            const EnumerationOptions& opts = {});
std::vector<std::uint64_t> enumerate_smooth(double x, double y);

std::uint64_t psi_exact(double x, double y, const PrimeTable& table, const EnumerationOptions& opts = {});
std::uint64_t psi_exact(double x, double y);

SmoothCounts psi_progression_exact(double x, double y, std::uint64_t q, const PrimeTable& table,
                                   const EnumerationOptions& opts = {});

/// sum of chi(n) over y-smooth n <= x, by enumeration.
std::complex<double> psi_character_exact(double x, double y, const Character& chi, const PrimeTable& table,
                                         const EnumerationOptions& opts = {});

/// sum of chi(a) * count(a) over reduced residues; equals psi_character_exact
/// for the same (x, y) since chi is periodic.
std::complex<double> psi_character_from_counts(const SmoothCounts& counts, const Character& chi);

/// sum of chi(n) Phi(n/x) over y-smooth n; the support of Phi bounds the range.
std::complex<double> psi_weighted_exact(double x, double y, const Character& chi, const SmoothWeight& weight,
                                        const PrimeTable& table, const EnumerationOptions& opts = {});

} // namespace smoothprog
