#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace smoothprog::detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m)
{
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1)
            result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

/// Modular inverse of a mod m, assuming gcd(a, m) = 1.
inline std::uint64_t invmod(std::uint64_t a, std::uint64_t m)
{
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
    while (new_r != 0) {
        const std::int64_t quo = r / new_r;
        t = std::exchange(new_t, t - quo * new_t);
        r = std::exchange(new_r, r - quo * new_r);
    }
    if (t < 0)
        t += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(t) % m;
}

/// Trial-division factorization; fine for desk-scale moduli.
inline std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n)
{
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0)
            continue;
        unsigned k = 0;
        while (n % p == 0) {
            n /= p;
            ++k;
        }
        out.emplace_back(p, k);
    }
    if (n > 1)
        out.emplace_back(n, 1u);
    return out;
}

inline std::int64_t reduce_mod(std::int64_t n, std::uint64_t q)
{
    const auto m = static_cast<std::int64_t>(q);
    std::int64_t r = n % m;
    return r < 0 ? r + m : r;
}

} // namespace smoothprog::detail
