#include "smoothprog/dirichlet.hpp"

#include "modarith.hpp"
#include "smoothprog/errors.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

namespace smoothprog {

namespace detail {

inline constexpr std::uint32_t kNotUnit = std::numeric_limits<std::uint32_t>::max();

struct Component {
    std::uint64_t p;
    unsigned k;
    std::uint64_t pk;
    std::size_t first_gen;
    std::size_t gen_count;
    // Packed discrete log of every residue mod p^k; kNotUnit for multiples of p.
    // For 2^k (k >= 3) the packing is a * ord(5) + b for r = (-1)^a 5^b.
    std::vector<std::uint32_t> table;
};

struct GroupData {
    std::uint64_t q = 1;
    std::uint64_t phi = 1;
    std::uint64_t exponent = 1;
    std::vector<std::pair<std::uint64_t, unsigned>> factors;
    std::vector<UnitGenerator> gens;
    std::vector<std::uint64_t> phase_weight;  // exponent / ord_i
    std::vector<Component> comps;
    std::vector<std::complex<double>> roots;
};

} // namespace detail

namespace {

using detail::Component;
using detail::GroupData;
using detail::kNotUnit;

bool is_primitive_root_mod_p(std::uint64_t g, std::uint64_t p,
                             const std::vector<std::pair<std::uint64_t, unsigned>>& pm1_factors)
{
    if (g % p == 0)
        return false;
    for (auto [r, e] : pm1_factors)
        if (detail::powmod(g, (p - 1) / r, p) == 1)
            return false;
    return true;
}

// Smallest primitive root mod p^k for odd p. For k >= 2, g works iff it is a
// primitive root mod p and g^(p-1) != 1 mod p^2.
std::uint64_t smallest_primitive_root(std::uint64_t p, unsigned k)
{
    const auto pm1_factors = detail::factorize(p - 1);
    const std::uint64_t p2 = p * p;
    for (std::uint64_t g = 2;; ++g) {
        if (!is_primitive_root_mod_p(g % p, p, pm1_factors))
            continue;
        if (k >= 2 && detail::powmod(g, p - 1, p2) == 1)
            continue;
        return g;
    }
}

std::uint64_t crt_lift(std::uint64_t local, std::uint64_t pk, std::uint64_t q)
{
    const std::uint64_t rest = q / pk;
    if (rest == 1)
        return local % q;
    // 1 + (local - 1) * rest * rest^{-1 mod pk}, reduced mod q.
    const std::uint64_t m = detail::mulmod(rest, detail::invmod(rest % pk, pk), q);
    const std::uint64_t step = detail::mulmod((local + pk - 1) % pk, m, q);
    return (1 + step) % q;
}

void add_component(GroupData& g, std::uint64_t p, unsigned k)
{
    std::uint64_t pk = 1;
    for (unsigned i = 0; i < k; ++i)
        pk *= p;

    Component comp{p, k, pk, g.gens.size(), 0, std::vector<std::uint32_t>(pk, kNotUnit)};
    auto add_gen = [&](std::uint64_t local, std::uint64_t ord) {
        g.gens.push_back({p, pk, local, crt_lift(local, pk, g.q), ord});
        ++comp.gen_count;
    };

    if (p == 2) {
        if (k == 1) {
            comp.table[1] = 0;
        } else if (k == 2) {
            comp.table[1] = 0;
            comp.table[3] = 1;
            add_gen(3, 2);
        } else {
            const std::uint64_t ord5 = pk / 4;
            add_gen(pk - 1, 2);
            add_gen(5, ord5);
            std::uint64_t r = 1;
            for (std::uint64_t b = 0; b < ord5; ++b) {
                comp.table[r] = static_cast<std::uint32_t>(b);
                comp.table[pk - r] = static_cast<std::uint32_t>(ord5 + b);
                r = r * 5 % pk;
            }
        }
    } else {
        const std::uint64_t root = smallest_primitive_root(p, k);
        const std::uint64_t ord = pk / p * (p - 1);
        add_gen(root, ord);
        std::uint64_t r = 1;
        for (std::uint64_t e = 0; e < ord; ++e) {
            comp.table[r] = static_cast<std::uint32_t>(e);
            r = detail::mulmod(r, root, pk);
        }
    }
    g.comps.push_back(std::move(comp));
}

// Writes the exponents of residue r into out[first_gen ...]; false if not a unit.
bool component_log(const Component& c, const std::vector<UnitGenerator>& gens, std::uint64_t r,
                   std::vector<std::uint64_t>& out)
{
    const std::uint32_t packed = c.table[r % c.pk];
    if (packed == kNotUnit)
        return false;
    if (c.gen_count == 1) {
        out[c.first_gen] = packed;
    } else if (c.gen_count == 2) {
        const std::uint64_t ord5 = gens[c.first_gen + 1].order;
        out[c.first_gen] = packed / ord5;
        out[c.first_gen + 1] = packed % ord5;
    }
    return true;
}

} // namespace

CharacterGroup::CharacterGroup(std::uint64_t q, const GroupOptions& opts)
{
    if (q < 1 || q > opts.max_modulus)
        throw DomainError("modulus " + std::to_string(q) + " outside [1, " +
                          std::to_string(opts.max_modulus) + "]");
    auto data = std::make_shared<GroupData>();
    data->q = q;
    data->factors = detail::factorize(q);
    for (auto [p, k] : data->factors)
        add_component(*data, p, k);

    data->phi = 1;
    data->exponent = 1;
    for (const auto& gen : data->gens) {
        data->phi *= gen.order;
        data->exponent = std::lcm(data->exponent, gen.order);
    }
    for (const auto& gen : data->gens)
        data->phase_weight.push_back(data->exponent / gen.order);

    const std::uint64_t n = data->exponent;
    data->roots.resize(n);
    for (std::uint64_t j = 0; j < n; ++j) {
        if ((4 * j) % n == 0) {
            static constexpr std::complex<double> quarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
            data->roots[j] = quarter[4 * j / n];
        } else {
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
            data->roots[j] = {std::cos(angle), std::sin(angle)};
        }
    }
    data_ = std::move(data);
}

std::uint64_t CharacterGroup::modulus() const noexcept { return data_->q; }
std::uint64_t CharacterGroup::phi() const noexcept { return data_->phi; }
std::uint64_t CharacterGroup::exponent() const noexcept { return data_->exponent; }

std::span<const UnitGenerator> CharacterGroup::generators() const noexcept { return data_->gens; }

std::span<const std::pair<std::uint64_t, unsigned>> CharacterGroup::factorization() const noexcept
{
    return data_->factors;
}

bool CharacterGroup::is_unit(std::int64_t n) const noexcept
{
    const auto r = static_cast<std::uint64_t>(detail::reduce_mod(n, data_->q));
    for (const auto& c : data_->comps)
        if (r % c.p == 0)
            return false;
    return true;
}

std::optional<std::vector<std::uint64_t>> CharacterGroup::discrete_log(std::int64_t n) const
{
    const auto r = static_cast<std::uint64_t>(detail::reduce_mod(n, data_->q));
    std::vector<std::uint64_t> out(data_->gens.size(), 0);
    for (const auto& c : data_->comps)
        if (!component_log(c, data_->gens, r, out))
            return std::nullopt;
    return out;
}

std::vector<std::uint64_t> CharacterGroup::reduced_residues() const
{
    std::vector<std::uint64_t> out;
    out.reserve(data_->phi);
    if (data_->q == 1) {
        out.push_back(0);
        return out;
    }
    for (std::uint64_t a = 1; a < data_->q; ++a)
        if (is_unit(static_cast<std::int64_t>(a)))
            out.push_back(a);
    return out;
}

std::complex<double> CharacterGroup::root_of_unity(std::uint64_t k) const noexcept
{
    return data_->roots[k % data_->exponent];
}

Character CharacterGroup::principal() const
{
    return Character(*this, std::vector<std::uint64_t>(data_->gens.size(), 0));
}

Character CharacterGroup::character(std::vector<std::uint64_t> coefficients) const
{
    if (coefficients.size() != data_->gens.size())
        throw DomainError("character needs " + std::to_string(data_->gens.size()) +
                          " coefficients, got " + std::to_string(coefficients.size()));
    for (std::size_t i = 0; i < coefficients.size(); ++i)
        coefficients[i] %= data_->gens[i].order;
    return Character(*this, std::move(coefficients));
}

std::vector<Character> CharacterGroup::characters() const
{
    std::vector<Character> out;
    out.reserve(data_->phi);
    const std::size_t r = data_->gens.size();
    std::vector<std::uint64_t> c(r, 0);
    for (std::uint64_t count = 0; count < data_->phi; ++count) {
        out.push_back(Character(*this, c));
        for (std::size_t i = r; i-- > 0;) {
            if (++c[i] < data_->gens[i].order)
                break;
            c[i] = 0;
        }
    }
    return out;
}

bool CharacterGroup::operator==(const CharacterGroup& other) const noexcept
{
    return data_ == other.data_ || data_->q == other.data_->q;
}

std::optional<std::uint64_t> Character::phase(std::int64_t n) const
{
    const GroupData& g = *group_.data_;
    const auto r = static_cast<std::uint64_t>(detail::reduce_mod(n, g.q));
    std::uint64_t total = 0;
    std::vector<std::uint64_t> exps(g.gens.size(), 0);
    for (const auto& c : g.comps)
        if (!component_log(c, g.gens, r, exps))
            return std::nullopt;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        const std::uint64_t term = detail::mulmod(coeffs_[i] * exps[i] % g.gens[i].order,
                                                  g.phase_weight[i], g.exponent);
        total = (total + term) % g.exponent;
    }
    return total;
}

std::complex<double> Character::operator()(std::int64_t n) const
{
    const auto ph = phase(n);
    if (!ph)
        return {0.0, 0.0};
    return group_.root_of_unity(*ph);
}

std::vector<std::complex<double>> Character::value_table() const
{
    const std::uint64_t q = group_.modulus();
    std::vector<std::complex<double>> out(q);
    for (std::uint64_t r = 0; r < q; ++r)
        out[r] = (*this)(static_cast<std::int64_t>(r));
    return out;
}

std::uint64_t Character::order() const
{
    const auto gens = group_.generators();
    std::uint64_t ord = 1;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        ord = std::lcm(ord, gens[i].order / std::gcd(coeffs_[i], gens[i].order));
    return ord;
}

bool Character::is_principal() const noexcept
{
    for (auto c : coeffs_)
        if (c != 0)
            return false;
    return true;
}

bool Character::is_real() const { return order() <= 2; }

Character Character::conj() const { return pow(-1); }

Character Character::pow(std::int64_t k) const
{
    const auto gens = group_.generators();
    std::vector<std::uint64_t> c(coeffs_.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto ord = gens[i].order;
        const auto kk = static_cast<std::uint64_t>(detail::reduce_mod(k, ord));
        c[i] = detail::mulmod(coeffs_[i], kk, ord);
    }
    return Character(group_, std::move(c));
}

Character Character::operator*(const Character& other) const
{
    if (!(group_ == other.group_))
        throw DomainError("cannot multiply characters of different moduli");
    const auto gens = group_.generators();
    std::vector<std::uint64_t> c(coeffs_.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = (coeffs_[i] + other.coeffs_[i]) % gens[i].order;
    return Character(group_, std::move(c));
}

std::string Character::id() const
{
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(coeffs_[i]);
    }
    return out;
}

bool Character::operator==(const Character& other) const noexcept
{
    return group_ == other.group_ && coeffs_ == other.coeffs_;
}

CharacterGroup build_group(std::uint64_t q, const GroupOptions& opts) { return CharacterGroup(q, opts); }

std::vector<Character> enumerate_characters(const CharacterGroup& group) { return group.characters(); }

std::complex<double> evaluate(const Character& chi, std::int64_t n) { return chi(n); }

std::uint64_t order(const Character& chi) { return chi.order(); }

Character parse_character(const CharacterGroup& group, std::string_view id)
{
    std::vector<std::uint64_t> coeffs;
    if (!id.empty()) {
        std::size_t pos = 0;
        while (true) {
            const auto comma = id.find(',', pos);
            const auto field = id.substr(pos, comma == std::string_view::npos ? id.size() - pos : comma - pos);
            std::uint64_t v = 0;
            const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
            if (ec != std::errc() || ptr != field.data() + field.size() || field.empty())
                throw DomainError("malformed character id '" + std::string(id) + "'");
            coeffs.push_back(v);
            if (comma == std::string_view::npos)
                break;
            pos = comma + 1;
        }
    }
    const auto gens = group.generators();
    if (coeffs.size() != gens.size())
        throw DomainError("character id '" + std::string(id) + "' has wrong length for modulus " +
                          std::to_string(group.modulus()));
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i] >= gens[i].order)
            throw DomainError("character coefficient out of range in '" + std::string(id) + "'");
    return group.character(std::move(coeffs));
}

std::uint64_t euler_phi(std::uint64_t n)
{
    std::uint64_t result = n;
    for (auto [p, k] : detail::factorize(n))
        result = result / p * (p - 1);
    return result;
}

} // namespace smoothprog
