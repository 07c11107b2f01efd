#include "report.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

enum ExitCode { ok = 0, runtime_error = 1, invalid_config = 2, capacity = 3, reconstruction = 4 };

using smoothprog::report::Command;
using smoothprog::report::Format;
using smoothprog::report::RunConfig;

void add_run_options(CLI::App* sub, RunConfig& cfg, std::string& side, std::string& format, std::string& out,
                     std::optional<double>& U)
{
    sub->add_option("--x", cfg.x, "cutoff x (> 1)")->required();
    sub->add_option("--y", cfg.y, "smoothness bound y (>= 2)")->required();
    sub->add_option("--q", cfg.q, "modulus")->capture_default_str();
    sub->add_option("--epsilon", cfg.epsilon, "weight transition width")->capture_default_str();
    sub->add_option("--side", side, "weight side")->check(CLI::IsMember({"lower", "upper"}))->capture_default_str();
    sub->add_option("--B", cfg.B, "order bound for problem characters")->capture_default_str();
    sub->add_option("--threshold-scale", cfg.threshold_scale, "multiplier on the distance threshold")
        ->capture_default_str();
    sub->add_option("--U", U, "central segment width (default 1/sqrt(epsilon))");
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    sub->add_option("--out", out, "write to this file instead of stdout");
    sub->add_option("--seed", cfg.seed, "seed for randomized checks")->capture_default_str();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Smooth numbers in arithmetic progressions: counts, saddle point, contour and subgroup reports"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string side = "lower";
    std::string format = "json";
    std::string out;
    std::optional<double> U;

    const std::pair<Command, const char*> commands[] = {
        {Command::psi, "exact counts Psi(x,y;q,a) per reduced class"},
        {Command::saddle, "saddle point data and the saddle-point estimate"},
        {Command::spectrum, "|Psi(x,y;chi)| / Psi_q for every character mod q"},
        {Command::equidist, "full equidistribution report"},
        {Command::subgroup, "problem characters, the subgroup H and its coset table"},
        {Command::contour, "truncated Mellin inversion integral for the principal character"},
    };
    for (const auto& [command, help] : commands) {
        auto* sub = app.add_subcommand(std::string(smoothprog::report::command_name(command)), help);
        add_run_options(sub, cfg, side, format, out, U);
        sub->callback([&cfg, command = command] { cfg.command = command; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return invalid_config;
    }

    cfg.side = side == "upper" ? smoothprog::WeightSide::upper : smoothprog::WeightSide::lower;
    cfg.format = format == "csv" ? Format::csv : Format::json;
    cfg.U = U;

    try {
        const auto report = smoothprog::report::build_report(cfg);
        const std::string text = cfg.format == Format::json ? smoothprog::report::to_canonical_json(report)
                                                            : smoothprog::report::to_csv(report);
        if (out.empty())
            std::cout << text;
        else
            smoothprog::report::write_atomic(out, text);
    } catch (const smoothprog::DomainError& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return invalid_config;
    } catch (const smoothprog::CapacityError& e) {
        std::cerr << "capacity exceeded: " << e.what() << "\n";
        return capacity;
    } catch (const smoothprog::report::ReconstructionFailure& e) {
        std::cerr << "internal error: " << e.what() << " (max error " << e.max_error() << ")\n";
        return reconstruction;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return runtime_error;
    }
    return ok;
}
