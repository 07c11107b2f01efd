#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace smoothprog {

namespace detail {
struct GroupData;
}

struct GroupOptions {
    std::uint64_t max_modulus = 1'000'000;
};

/// One cyclic factor of (Z/qZ)*: a generator (lifted to a residue mod q) and its order.
struct UnitGenerator {
    std::uint64_t prime;        // p of the prime-power component it belongs to
    std::uint64_t prime_power;  // p^k
    std::uint64_t local;        // generator as a residue mod p^k
    std::uint64_t residue;      // CRT lift: == local mod p^k, == 1 mod q/p^k
    std::uint64_t order;
};

class Character;

/// The dual group of (Z/qZ)*, presented by a fixed generator basis.
///
/// Odd prime powers use their smallest primitive root; 2^k for k >= 3 uses
/// {-1, 5}; 4 uses {-1}; 2 and 1 contribute nothing. A reduced residue is
/// identified with its exponent vector against this basis and a character with
/// a vector of coefficients, so chi(a) = e(sum_i c_i e_i(a) / ord_i).
///
/// Cheap to copy (shared immutable state); safe for concurrent reads.
class CharacterGroup {
public:
    explicit CharacterGroup(std::uint64_t q, const GroupOptions& opts = {});

    std::uint64_t modulus() const noexcept;
    std::uint64_t phi() const noexcept;
    /// Exponent of the group: lcm of the generator orders.
    std::uint64_t exponent() const noexcept;
    std::span<const UnitGenerator> generators() const noexcept;
    /// Prime factorization of q as (p, k) pairs, ascending in p.
    std::span<const std::pair<std::uint64_t, unsigned>> factorization() const noexcept;

    bool is_unit(std::int64_t n) const noexcept;
    /// Exponent vector of n against the generator basis; nullopt if gcd(n, q) > 1.
    std::optional<std::vector<std::uint64_t>> discrete_log(std::int64_t n) const;
    /// Reduced residues in [1, q) (or {0} for q = 1), ascending.
    std::vector<std::uint64_t> reduced_residues() const;

    /// e(k / exponent()) with exact values at the quarter points.
    std::complex<double> root_of_unity(std::uint64_t k) const noexcept;

    Character principal() const;
    /// Character with the given coefficients (reduced modulo the generator orders).
    Character character(std::vector<std::uint64_t> coefficients) const;
    /// All phi(q) characters; principal first, then lexicographic in coefficients.
    std::vector<Character> characters() const;

    bool operator==(const CharacterGroup& other) const noexcept;

private:
    friend class Character;
    std::shared_ptr<const detail::GroupData> data_;
};

/// A Dirichlet character mod q, addressed by its coefficient vector.
class Character {
public:
    const CharacterGroup& group() const noexcept { return group_; }
    std::span<const std::uint64_t> coefficients() const noexcept { return coeffs_; }

    /// chi(n) = e(phase(n) / exponent); nullopt when gcd(n, q) > 1.
    std::optional<std::uint64_t> phase(std::int64_t n) const;
    std::complex<double> operator()(std::int64_t n) const;

    /// Values chi(0), ..., chi(q-1) for fast periodic lookup.
    std::vector<std::complex<double>> value_table() const;

    std::uint64_t order() const;
    bool is_principal() const noexcept;
    /// Real-valued (order <= 2).
    bool is_real() const;

    Character conj() const;
    Character pow(std::int64_t k) const;
    Character operator*(const Character& other) const;

    /// Comma-separated coefficient list; empty for the trivial groups q = 1, 2.
    std::string id() const;

    bool operator==(const Character& other) const noexcept;

private:
    friend class CharacterGroup;
    Character(CharacterGroup group, std::vector<std::uint64_t> coeffs)
        : group_(std::move(group)), coeffs_(std::move(coeffs)) {}

    CharacterGroup group_;
    std::vector<std::uint64_t> coeffs_;
};

CharacterGroup build_group(std::uint64_t q, const GroupOptions& opts = {});
std::vector<Character> enumerate_characters(const CharacterGroup& group);
std::complex<double> evaluate(const Character& chi, std::int64_t n);
std::uint64_t order(const Character& chi);
/// Inverse of Character::id(). Throws DomainError on malformed input.
Character parse_character(const CharacterGroup& group, std::string_view id);

std::uint64_t euler_phi(std::uint64_t n);

} // namespace smoothprog
