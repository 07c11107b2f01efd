#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

namespace smoothprog::report {

using nlohmann::json;

namespace {

constexpr double kReconstructionTolerance = 1e-6;

struct NamedCommand {
    Command command;
    std::string_view name;
};

constexpr NamedCommand kCommands[] = {
    {Command::psi, "psi"},           {Command::saddle, "saddle"},     {Command::spectrum, "spectrum"},
    {Command::equidist, "equidist"}, {Command::subgroup, "subgroup"}, {Command::contour, "contour"},
};

json complex_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json config_json(const RunConfig& c)
{
    return {
        {"command", std::string(command_name(c.command))},
        {"x", c.x},
        {"y", c.y},
        {"q", c.q},
        {"epsilon", c.epsilon},
        {"side", c.side == WeightSide::lower ? "lower" : "upper"},
        {"B", c.B},
        {"threshold_scale", c.threshold_scale},
        {"U", c.U ? json(*c.U) : json(nullptr)},
        {"format", c.format == Format::json ? "json" : "csv"},
        {"seed", c.seed},
    };
}

// Where (x, y, q) sits against the ranges in which the equidistribution
// theorems are proven. Compared in log space; nothing here gates computation.
json range_json(const RunConfig& c)
{
    const double log_x = std::log(c.x);
    const double log_y = std::log(c.y);
    const double loglog_y = std::log(log_y);
    const double log_x_lower = std::pow(loglog_y, 4) * log_y;
    const double log_x_upper = std::pow(c.y, 1.0 - c.epsilon);
    const double log_q_upper = (4.0 * std::sqrt(std::numbers::e) - c.epsilon) * log_y;
    const double log_q = std::log(static_cast<double>(c.q));
    const bool x_ok = log_x >= log_x_lower && log_x <= log_x_upper;
    const bool q_ok = log_q <= log_q_upper;
    return {
        {"log_x", log_x},
        {"log_x_lower", log_x_lower},
        {"log_x_upper", log_x_upper},
        {"x_in_range", x_ok},
        {"log_q", log_q},
        {"log_q_upper", log_q_upper},
        {"q_in_range", q_ok},
        {"q_below_sqrt_y", log_q <= 0.5 * log_y},
        {"inside", x_ok && q_ok},
    };
}

double clamp_U(const RunConfig& c, double u)
{
    const double requested = c.U.value_or(1.0 / std::sqrt(c.epsilon));
    return std::clamp(requested, 1.0, std::max(1.0, std::sqrt(u)));
}

struct Pipeline {
    const RunConfig& config;
    PrimeTable table;
    CharacterGroup group;
    SmoothWeight weight;
    MellinEvaluator ev;
    std::optional<SaddleData> saddle;
    std::optional<SmoothCounts> counts;
    std::optional<std::vector<std::complex<double>>> char_sums;  // indexed like group.characters()
    std::string char_sum_method;

    explicit Pipeline(const RunConfig& c)
        : config(c),
          table(floor_to_u64(c.y)),
          group(c.q),
          weight(c.side, c.epsilon),
          ev(weight)
    {
    }

    const SaddleData& saddle_data()
    {
        if (!saddle)
            saddle = compute_saddle(config.x, config.y, table, config.q);
        return *saddle;
    }

    const SmoothCounts& smooth_counts()
    {
        if (!counts)
            counts = psi_progression_exact(config.x, config.y, config.q, table);
        return *counts;
    }

    const std::vector<std::complex<double>>& character_sums()
    {
        if (char_sums)
            return *char_sums;
        const auto& sc = smooth_counts();
        const auto chars = group.characters();
        std::vector<std::complex<double>> sums;
        sums.reserve(chars.size());
        const double work = static_cast<double>(group.phi()) * static_cast<double>(sc.psi_q);
        if (work <= kSpectrumEnumerationBudget) {
            char_sum_method = "enumeration";
            for (const auto& chi : chars)
                sums.push_back(psi_character_exact(config.x, config.y, chi, table));
        } else {
            char_sum_method = "counts";
            for (const auto& chi : chars)
                sums.push_back(psi_character_from_counts(sc, chi));
        }
        char_sums = std::move(sums);
        return *char_sums;
    }
};

json saddle_json(Pipeline& p)
{
    const auto& s = p.saddle_data();
    return {
        {"u", s.u},
        {"alpha", s.alpha},
        {"xi", s.xi},
        {"phi2", s.phi2},
        {"log_L", s.log_L},
        {"residual", s.residual},
        {"ht_estimate", ht_estimate(p.config.x, p.config.y, p.ev, p.table, p.config.q)},
        {"mellin_at_alpha", mellin_transform(p.ev, s.alpha).real()},
        {"asymptotic_range", range_json(p.config)},
    };
}

json contour_json(Pipeline& p)
{
    const auto& s = p.saddle_data();
    const auto chi0 = p.group.principal();
    const auto full = contour_psi(p.config.x, p.config.y, chi0, p.ev, p.table);
    json out = {
        {"value", complex_json(full.value)},
        {"T", full.T},
        {"quadrature_error", full.quadrature_error},
        {"tail_bound", full.tail_bound},
        {"error_estimate", full.error_estimate()},
        {"central_segment", nullptr},
        {"weighted_exact", nullptr},
    };
    if (s.u >= 1.0) {
        const double U = clamp_U(p.config, s.u);
        const auto central = central_segment(p.config.x, p.config.y, chi0, p.ev, U, p.table);
        out["central_segment"] = {{"U", U}, {"value", complex_json(central.value)}};
    }
    if (p.config.x <= kWeightedExactLimit)
        out["weighted_exact"] = psi_weighted_exact(p.config.x, p.config.y, chi0, p.weight, p.table).real();
    return out;
}

json counts_json(Pipeline& p)
{
    const auto& sc = p.smooth_counts();
    const double phi = static_cast<double>(p.group.phi());
    json rows = json::array();
    for (const auto& [a, n] : sc.per_residue) {
        const double normalized = static_cast<double>(n) * phi / static_cast<double>(sc.psi_q);
        rows.push_back({{"residue", a}, {"count", n}, {"normalized", normalized}, {"deviation", normalized - 1.0}});
    }
    return {
        {"psi", psi_exact(p.config.x, p.config.y, p.table)},
        {"psi_q", sc.psi_q},
        {"phi", p.group.phi()},
        {"per_residue", rows},
        {"discrepancy", discrepancy(sc)},
    };
}

json spectrum_json(Pipeline& p)
{
    const auto& sums = p.character_sums();
    const auto chars = p.group.characters();
    const double psi_q = static_cast<double>(p.smooth_counts().psi_q);
    struct Row {
        std::string id;
        std::uint64_t order;
        double ratio;
        bool principal;
    };
    std::vector<Row> rows;
    for (std::size_t i = 0; i < chars.size(); ++i)
        rows.push_back({chars[i].id(), chars[i].order(), chars[i].is_principal() ? 1.0 : std::abs(sums[i]) / psi_q,
                        chars[i].is_principal()});
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.principal != b.principal)
            return a.principal;
        return a.ratio > b.ratio;
    });
    json out = json::array();
    for (const auto& r : rows)
        out.push_back({{"char_id", r.id}, {"order", r.order}, {"ratio", r.ratio}});
    return out;
}

// Main term of the coset decomposition: (1/phi) sum over chi trivial on H of
// conj(chi(a)) times the central segment of the contour integral for chi.
std::vector<double> coset_predictions(Pipeline& p, const ProblemSet& ps, double U)
{
    std::vector<std::pair<Character, std::complex<double>>> terms;
    for (const auto& chi : p.group.characters()) {
        const bool trivial_on_H =
            std::all_of(ps.H.begin(), ps.H.end(), [&](std::uint64_t h) { return chi.phase(h) == 0u; });
        if (trivial_on_H)
            terms.emplace_back(chi, central_segment(p.config.x, p.config.y, chi, p.ev, U, p.table).value);
    }
    std::vector<double> out;
    const double phi = static_cast<double>(p.group.phi());
    for (const auto& coset : ps.cosets) {
        std::complex<double> sum;
        for (const auto& [chi, value] : terms)
            sum += std::conj(chi(static_cast<std::int64_t>(coset.front()))) * value;
        out.push_back(sum.real() / phi);
    }
    return out;
}

json problem_set_json(Pipeline& p)
{
    const auto& s = p.saddle_data();
    FlagOptions opts;
    opts.threshold_scale = p.config.threshold_scale;
    const auto ps = flag_problem_characters(p.group, s.alpha, p.config.y, s.u, p.config.B, p.table, opts);
    const auto& sc = p.smooth_counts();

    json flagged = json::array();
    for (const auto& f : ps.flagged)
        flagged.push_back({{"char_id", f.chi.id()}, {"order", f.order}, {"t_min", f.t_min}, {"d2_min", f.d2_min}});

    std::optional<std::vector<double>> predicted;
    double U = 0;
    if (s.u >= 1.0) {
        U = clamp_U(p.config, s.u);
        predicted = coset_predictions(p, ps, U);
    }

    json cosets = json::array();
    for (std::size_t i = 0; i < ps.cosets.size(); ++i) {
        const auto& coset = ps.cosets[i];
        double mean = 0;
        for (auto a : coset)
            mean += static_cast<double>(sc.count(a));
        mean /= static_cast<double>(coset.size());
        double spread = 0;
        json residues = json::array();
        for (auto a : coset) {
            const double dev = static_cast<double>(sc.count(a)) - mean;
            spread = std::max(spread, std::abs(dev));
            residues.push_back({{"residue", a}, {"count", sc.count(a)}, {"deviation_from_coset_mean", dev}});
        }
        cosets.push_back({
            {"representative", coset.front()},
            {"size", coset.size()},
            {"mean", mean},
            {"max_deviation", spread},
            {"predicted_mean", predicted ? json((*predicted)[i] / static_cast<double>(coset.size())) : json(nullptr)},
            {"residues", residues},
        });
    }
    return {
        {"method", "distance surrogate"},
        {"B", ps.B},
        {"threshold", ps.threshold},
        {"t_max", ps.t_max},
        {"grid_step", ps.grid_step},
        {"flagged", flagged},
        {"H", ps.H},
        {"index", subgroup_index(ps)},
        {"U", predicted ? json(U) : json(nullptr)},
        {"cosets", cosets},
    };
}

// Reconstruction of every class count from the character sums, plus a seeded
// multiplicativity spot check of the character table.
json checks_json(Pipeline& p)
{
    json out = json::object();
    if (p.counts) {
        const auto& sc = *p.counts;
        std::uint64_t total = 0;
        for (const auto& [a, n] : sc.per_residue)
            total += n;
        out["partition"] = total == sc.psi_q;

        const auto& sums = p.character_sums();
        const auto chars = p.group.characters();
        double worst = 0;
        for (const auto& [a, n] : sc.per_residue) {
            std::complex<double> acc;
            for (std::size_t i = 0; i < chars.size(); ++i)
                acc += std::conj(chars[i](static_cast<std::int64_t>(a))) * sums[i];
            acc /= static_cast<double>(p.group.phi());
            worst = std::max(worst, std::abs(acc - static_cast<double>(n)));
        }
        const bool ok = worst <= kReconstructionTolerance;
        out["reconstruction"] = {
            {"method", p.char_sum_method},
            {"max_error", worst},
            {"tolerance", kReconstructionTolerance},
            {"passed", ok},
        };
        if (!ok)
            throw ReconstructionFailure("character reconstruction of the class counts failed", worst);

        double norm_sum = 0;
        for (const auto& [a, n] : sc.per_residue)
            norm_sum += static_cast<double>(n) * static_cast<double>(p.group.phi()) / static_cast<double>(sc.psi_q);
        out["normalization_sum"] = norm_sum;
    }

    std::mt19937_64 rng(p.config.seed);
    std::uniform_int_distribution<std::int64_t> pick(1, static_cast<std::int64_t>(10 * p.config.q + 100));
    const auto chars = p.group.characters();
    std::uniform_int_distribution<std::size_t> which(0, chars.size() - 1);
    double worst = 0;
    constexpr int kPairs = 200;
    for (int i = 0; i < kPairs; ++i) {
        const auto& chi = chars[which(rng)];
        const std::int64_t m = pick(rng), n = pick(rng);
        worst = std::max(worst, std::abs(chi(m * n) - chi(m) * chi(n)));
    }
    out["multiplicativity"] = {{"pairs", kPairs}, {"max_error", worst}};
    return out;
}

} // namespace

std::optional<Command> parse_command(std::string_view name)
{
    for (const auto& c : kCommands)
        if (c.name == name)
            return c.command;
    return std::nullopt;
}

std::string_view command_name(Command c)
{
    for (const auto& e : kCommands)
        if (e.command == c)
            return e.name;
    return "unknown";
}

void validate(const RunConfig& c)
{
    if (!(c.x > 1.0) || !std::isfinite(c.x))
        throw DomainError("x must be a finite number > 1");
    if (!(c.y >= 2.0) || !std::isfinite(c.y))
        throw DomainError("y must be a finite number >= 2");
    if (c.q < 1)
        throw DomainError("q must be >= 1");
    if (!(c.epsilon > 0.0 && c.epsilon < 0.5))
        throw DomainError("epsilon must lie in (0, 1/2)");
    if (c.B < 1)
        throw DomainError("B must be >= 1");
    if (!(c.threshold_scale > 0.0))
        throw DomainError("threshold scale must be > 0");
    if (c.U && !(*c.U > 0.0))
        throw DomainError("U must be > 0");
}

double discrepancy(const SmoothCounts& counts)
{
    if (counts.psi_q == 0)
        return 0.0;
    const double phi = static_cast<double>(counts.per_residue.size());
    double worst = 0;
    for (const auto& [a, n] : counts.per_residue)
        worst = std::max(worst, std::abs(static_cast<double>(n) * phi / static_cast<double>(counts.psi_q) - 1.0));
    return worst;
}

json build_report(const RunConfig& config)
{
    validate(config);
    Pipeline p(config);
    json report = {
        {"config", config_json(config)}, {"saddle", nullptr},      {"counts", nullptr},
        {"spectrum", nullptr},           {"problem_set", nullptr}, {"checks", nullptr},
    };
    const Command c = config.command;
    const bool wants_saddle = c == Command::saddle || c == Command::equidist || c == Command::subgroup ||
                              c == Command::contour;
    const bool wants_counts = c != Command::saddle && c != Command::contour;

    if (wants_saddle)
        report["saddle"] = saddle_json(p);
    if (c == Command::contour || c == Command::equidist)
        report["saddle"]["contour"] = contour_json(p);
    if (wants_counts)
        report["counts"] = counts_json(p);
    if (c == Command::spectrum || c == Command::equidist)
        report["spectrum"] = spectrum_json(p);
    if (c == Command::subgroup || c == Command::equidist)
        report["problem_set"] = problem_set_json(p);
    report["checks"] = checks_json(p);
    return report;
}

} // namespace smoothprog::report
