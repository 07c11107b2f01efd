#include "smoothprog/distance.hpp"

#include "smoothprog/errors.hpp"
#include "summation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace smoothprog {

namespace {

void check_alpha(double alpha)
{
    if (!(alpha > 0.0))
        throw DomainError("distance needs alpha > 0, got " + std::to_string(alpha));
}

std::vector<std::uint64_t> coprime_primes(double y, std::uint64_t q, const PrimeTable& table)
{
    if (!(y >= 2.0) || static_cast<double>(table.limit()) < std::floor(y))
        throw DomainError("prime table does not cover y = " + std::to_string(y));
    std::vector<std::uint64_t> out;
    for (std::uint64_t p : table.primes_up_to(y))
        if (q % p != 0)
            out.push_back(p);
    return out;
}

// 1 - cos(x) without cancellation near 0.
double one_minus_cos(double x)
{
    const double s = std::sin(0.5 * x);
    return 2.0 * s * s;
}

} // namespace

PrimeFunction::PrimeFunction(std::vector<std::pair<std::uint64_t, std::complex<double>>> values)
{
    std::sort(values.begin(), values.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    primes_.reserve(values.size());
    values_.reserve(values.size());
    for (const auto& [p, v] : values) {
        if (!(std::abs(v) <= 1.0 + 1e-12))
            throw DomainError("prime function value at " + std::to_string(p) + " lies outside the unit disc");
        if (!primes_.empty() && primes_.back() == p)
            throw DomainError("prime " + std::to_string(p) + " given twice");
        primes_.push_back(p);
        values_.push_back(v);
    }
}

PrimeFunction PrimeFunction::constant(std::complex<double> c, double y, std::uint64_t q, const PrimeTable& table)
{
    std::vector<std::pair<std::uint64_t, std::complex<double>>> v;
    for (std::uint64_t p : coprime_primes(y, q, table))
        v.emplace_back(p, c);
    return PrimeFunction(std::move(v));
}

PrimeFunction PrimeFunction::twisted_character(const Character& chi, double t, double y, const PrimeTable& table)
{
    std::vector<std::pair<std::uint64_t, std::complex<double>>> v;
    for (std::uint64_t p : coprime_primes(y, chi.group().modulus(), table)) {
        const double l = std::log(static_cast<double>(p));
        v.emplace_back(p, chi(static_cast<std::int64_t>(p)) * std::polar(1.0, -t * l));
    }
    return PrimeFunction(std::move(v));
}

PrimeFunction PrimeFunction::archimedean(double t, double y, std::uint64_t q, const PrimeTable& table)
{
    std::vector<std::pair<std::uint64_t, std::complex<double>>> v;
    for (std::uint64_t p : coprime_primes(y, q, table))
        v.emplace_back(p, std::polar(1.0, -t * std::log(static_cast<double>(p))));
    return PrimeFunction(std::move(v));
}

std::optional<std::complex<double>> PrimeFunction::at(std::uint64_t p) const
{
    auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
    if (it == primes_.end() || *it != p)
        return std::nullopt;
    return values_[static_cast<std::size_t>(it - primes_.begin())];
}

PrimeFunction PrimeFunction::operator*(const PrimeFunction& other) const
{
    std::vector<std::pair<std::uint64_t, std::complex<double>>> v;
    for (std::size_t i = 0; i < primes_.size(); ++i)
        if (auto w = other.at(primes_[i]))
            v.emplace_back(primes_[i], values_[i] * *w);
    return PrimeFunction(std::move(v));
}

double distance_squared(const PrimeFunction& f, const PrimeFunction& g, double alpha, double y, std::uint64_t q,
                        const PrimeTable& table)
{
    check_alpha(alpha);
    detail::CompensatedSum sum;
    for (std::uint64_t p : coprime_primes(y, q, table)) {
        const auto fp = f.at(p);
        const auto gp = g.at(p);
        if (!fp || !gp)
            throw DomainError("prime function has no value at p = " + std::to_string(p));
        const double term = 1.0 - (std::conj(*fp) * *gp).real();
        sum.add(std::max(term, 0.0) * std::exp(-alpha * std::log(static_cast<double>(p))));
    }
    return std::max(sum.value(), 0.0);
}

double distance(const PrimeFunction& f, const PrimeFunction& g, double alpha, double y, std::uint64_t q,
                const PrimeTable& table)
{
    return std::sqrt(distance_squared(f, g, alpha, y, q, table));
}

TwistedDistance::TwistedDistance(const Character& chi, double alpha, double y, const PrimeTable& table)
{
    check_alpha(alpha);
    const auto& group = chi.group();
    const double unit = 2.0 * std::numbers::pi / static_cast<double>(group.exponent());
    for (std::uint64_t p : coprime_primes(y, group.modulus(), table)) {
        const double l = std::log(static_cast<double>(p));
        weight_.push_back(std::exp(-alpha * l));
        log_p_.push_back(l);
        angle_.push_back(unit * static_cast<double>(*chi.phase(static_cast<std::int64_t>(p))));
    }
}

double TwistedDistance::squared(double t) const
{
    detail::CompensatedSum sum;
    for (std::size_t i = 0; i < weight_.size(); ++i)
        sum.add(weight_[i] * one_minus_cos(angle_[i] - t * log_p_[i]));
    return sum.value();
}

double dist_char_twist(const Character& chi, double t, double alpha, double y, const PrimeTable& table)
{
    return std::sqrt(TwistedDistance(chi, alpha, y, table).squared(t));
}

TwistMinimum min_dist_over_t(const Character& chi, double alpha, double y, double t_max, double grid_step,
                             const PrimeTable& table)
{
    if (!(t_max > 0.0) || !(grid_step > 0.0))
        throw DomainError("twist minimization needs t_max > 0 and grid_step > 0");
    const TwistedDistance dist(chi, alpha, y, table);

    TwistMinimum best{0.0, dist.squared(0.0)};
    auto consider = [&](double t) {
        const double d2 = dist.squared(t);
        if (d2 < best.d2_min)
            best = {t, d2};
    };
    const auto steps = static_cast<std::int64_t>(std::floor(t_max / grid_step));
    for (std::int64_t j = 1; j <= steps; ++j) {
        consider(static_cast<double>(j) * grid_step);
        consider(-static_cast<double>(j) * grid_step);
    }
    if (static_cast<double>(steps) * grid_step < t_max) {
        consider(t_max);
        consider(-t_max);
    }

    // Golden-section search on the bracket around the grid minimum.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = std::max(-t_max, best.t_min - grid_step);
    double hi = std::min(t_max, best.t_min + grid_step);
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = dist.squared(c);
    double fd = dist.squared(d);
    while (hi - lo > 1e-6) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = dist.squared(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = dist.squared(d);
        }
    }
    const double t_ref = 0.5 * (lo + hi);
    const double d_ref = dist.squared(t_ref);
    if (d_ref < best.d2_min)
        best = {t_ref, d_ref};
    return best;
}

std::uint64_t ProblemSet::coset_representative(std::uint64_t a) const
{
    const std::uint64_t r = q == 1 ? 0 : a % q;
    for (const auto& coset : cosets)
        if (std::binary_search(coset.begin(), coset.end(), r))
            return coset.front();
    throw DomainError("residue " + std::to_string(a) + " is not a unit mod " + std::to_string(q));
}

double default_threshold(double u, std::uint64_t B)
{
    const double b = static_cast<double>(B);
    return std::sqrt(std::max(u, 0.0)) / (40.0 * b * b);
}

ProblemSet flag_problem_characters(const CharacterGroup& group, double alpha, double y, double u, std::uint64_t B,
                                   const PrimeTable& table, const FlagOptions& opts)
{
    if (B < 1)
        throw DomainError("order bound B must be >= 1");
    const double b = static_cast<double>(B);
    const double threshold = opts.threshold.value_or(opts.threshold_scale * default_threshold(u, B));
    const double t_max = std::sqrt(static_cast<double>(group.modulus())) / (2.0 * b);
    const double step = opts.grid_step.value_or(1.0 / (4.0 * std::log(y) * b));

    std::vector<FlaggedCharacter> flagged;
    for (const auto& chi : group.characters()) {
        if (chi.is_principal())
            continue;
        const std::uint64_t ord = chi.order();
        if (ord > B)
            continue;
        const auto m = min_dist_over_t(chi, alpha, y, t_max, step, table);
        if (m.d2_min <= threshold)
            flagged.push_back({chi, ord, m.t_min, m.d2_min});
    }
    auto ps = build_problem_set(group, std::move(flagged), B, threshold);
    ps.t_max = t_max;
    ps.grid_step = step;
    return ps;
}

ProblemSet build_problem_set(const CharacterGroup& group, std::vector<FlaggedCharacter> flagged, std::uint64_t B,
                             double threshold)
{
    ProblemSet ps;
    ps.q = group.modulus();
    ps.B = B;
    ps.threshold = threshold;
    ps.flagged = std::move(flagged);

    const auto residues = group.reduced_residues();
    for (std::uint64_t h : residues) {
        const bool in_kernel = std::all_of(ps.flagged.begin(), ps.flagged.end(), [&](const FlaggedCharacter& f) {
            return f.chi.phase(static_cast<std::int64_t>(h)) == std::uint64_t{0};
        });
        if (in_kernel)
            ps.H.push_back(h);
    }

    const std::uint64_t q = ps.q;
    std::vector<bool> assigned(q, false);
    for (std::uint64_t r : residues) {
        if (assigned[r])
            continue;
        std::vector<std::uint64_t> coset;
        coset.reserve(ps.H.size());
        for (std::uint64_t h : ps.H) {
            const std::uint64_t m = q == 1 ? 0 : static_cast<std::uint64_t>(static_cast<unsigned __int128>(r) * h % q);
            coset.push_back(m);
            assigned[m] = true;
        }
        std::sort(coset.begin(), coset.end());
        ps.cosets.push_back(std::move(coset));
    }
    ps.index = subgroup_index(ps);
    return ps;
}

std::uint64_t subgroup_index(const ProblemSet& ps)
{
    const std::uint64_t phi = euler_phi(ps.q);
    const std::uint64_t h = ps.H.size();
    if (h == 0 || phi % h != 0)
        throw InvariantViolation("|H| = " + std::to_string(h) + " does not divide phi(q) = " + std::to_string(phi));
    return phi / h;
}

} // namespace smoothprog
