#pragma once

#include "smoothprog/smoothprog.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace smoothprog::report {

enum class Command { psi, saddle, spectrum, equidist, subgroup, contour };
enum class Format { json, csv };

struct RunConfig {
    Command command = Command::equidist;
    double x = 0;
    double y = 0;
    std::uint64_t q = 1;
    double epsilon = 0.05;
    WeightSide side = WeightSide::lower;
    std::uint64_t B = 10;
    double threshold_scale = 1.0;
    /// Central-segment width; 1/sqrt(epsilon) when unset, clamped to [1, sqrt(u)].
    std::optional<double> U;
    Format format = Format::json;
    std::uint64_t seed = 0;
};

std::optional<Command> parse_command(std::string_view name);
std::string_view command_name(Command c);

/// Throws DomainError when the config is outside x > 1, y >= 2, q >= 1,
/// 0 < epsilon < 1/2, B >= 1, threshold_scale > 0, U > 0.
void validate(const RunConfig& config);

/// Raised when a report fails the character reconstruction check; a bug, not bad input.
class ReconstructionFailure : public std::runtime_error {
public:
    ReconstructionFailure(const std::string& what, double max_error)
        : std::runtime_error(what), max_error_(max_error) {}
    double max_error() const noexcept { return max_error_; }

private:
    double max_error_;
};

/// Budget on phi(q) * Psi for computing the spectrum by one enumeration per character.
inline constexpr double kSpectrumEnumerationBudget = 1e8;
/// Largest x for which the contour section also carries the exact weighted count.
inline constexpr double kWeightedExactLimit = 1e8;

/// max_a |Psi(x,y;q,a) phi(q) / Psi_q - 1|.
double discrepancy(const SmoothCounts& counts);

/// Runs the pipeline for config.command. The result always has the keys
/// config, saddle, counts, spectrum, problem_set and checks; sections the
/// command does not compute are null.
nlohmann::json build_report(const RunConfig& config);

/// 12 significant digits; scientific outside [1e-4, 1e6); "0" for zero; null for non-finite.
std::string format_number(double v);

/// Canonical JSON text: sorted keys, two-space indent, format_number for floats.
std::string to_canonical_json(const nlohmann::json& j);

/// CSV view of a report: the table matching its command, or key,value rows.
std::string to_csv(const nlohmann::json& report);

/// Writes via a sibling temp file and rename.
void write_atomic(const std::filesystem::path& path, const std::string& text);

} // namespace smoothprog::report
