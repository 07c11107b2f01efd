#include "report.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace smoothprog;
using namespace smoothprog::report;

namespace {

RunConfig config(Command c, double x, double y, std::uint64_t q)
{
    RunConfig cfg;
    cfg.command = c;
    cfg.x = x;
    cfg.y = y;
    cfg.q = q;
    return cfg;
}

} // namespace

TEST(Format, Numbers)
{
    EXPECT_EQ(format_number(0.0), "0");
    EXPECT_EQ(format_number(-0.0), "0");
    EXPECT_EQ(format_number(1.0), "1");
    EXPECT_EQ(format_number(0.1), "0.1");
    EXPECT_EQ(format_number(1.0 / 3), "0.333333333333");
    EXPECT_EQ(format_number(123456.75), "123456.75");
    EXPECT_EQ(format_number(1e6), "1.00000000000e+06");
    EXPECT_EQ(format_number(-2.5e-5), "-2.50000000000e-05");
    EXPECT_EQ(format_number(std::nan("")), "null");
}

TEST(Format, RoundTripIsByteIdentical)
{
    for (auto c : {Command::equidist, Command::subgroup, Command::spectrum}) {
        auto cfg = config(c, 5000, 30, 12);
        const auto text = to_canonical_json(build_report(cfg));
        const auto again = to_canonical_json(nlohmann::json::parse(text));
        EXPECT_EQ(text, again) << command_name(c);
    }
}

TEST(Report, TopLevelKeysAlwaysPresent)
{
    const auto r = build_report(config(Command::saddle, 1e6, 100, 1));
    for (const char* key : {"config", "saddle", "counts", "spectrum", "problem_set", "checks"})
        EXPECT_TRUE(r.contains(key)) << key;
    EXPECT_TRUE(r["counts"].is_null());
    EXPECT_TRUE(r["spectrum"].is_null());
    EXPECT_FALSE(r["saddle"].is_null());
    EXPECT_EQ(r.size(), 6u);
}

TEST(Report, Deterministic)
{
    auto cfg = config(Command::equidist, 3000, 20, 9);
    cfg.seed = 42;
    EXPECT_EQ(to_canonical_json(build_report(cfg)), to_canonical_json(build_report(cfg)));
}

TEST(Report, EquidistMatchesCountsAndNormalizes)
{
    const auto r = build_report(config(Command::equidist, 1e4, 30, 7));
    const auto counts = psi_progression_exact(1e4, 30, 7, PrimeTable(30));
    double sum = 0;
    for (const auto& row : r["counts"]["per_residue"]) {
        EXPECT_EQ(row["count"].get<std::uint64_t>(), counts.count(row["residue"].get<std::uint64_t>()));
        sum += row["deviation"].get<double>() + 1.0;
    }
    EXPECT_NEAR(sum, 6.0, 6e-9);
    EXPECT_GE(r["counts"]["discrepancy"].get<double>(), 0.0);
    EXPECT_TRUE(r["checks"]["reconstruction"]["passed"].get<bool>());
    EXPECT_TRUE(r["checks"]["partition"].get<bool>());
    EXPECT_FALSE(r["saddle"]["contour"].is_null());
}

TEST(Report, ObstructionCountsAndSpectrum)
{
    const auto r = build_report(config(Command::equidist, 1e4, 2, 7));
    for (const auto& row : r["counts"]["per_residue"]) {
        const auto a = row["residue"].get<int>();
        if (a == 3 || a == 5 || a == 6) {
            EXPECT_EQ(row["count"].get<int>(), 0);
        }
    }
    const auto& spectrum = r["spectrum"];
    EXPECT_EQ(spectrum[0]["ratio"].get<double>(), 1.0);
    EXPECT_EQ(spectrum[0]["order"].get<int>(), 1);
    bool found = false;
    for (const auto& row : spectrum) {
        EXPECT_LE(row["ratio"].get<double>(), 1.0 + 1e-12);
        if (row["char_id"] == "3") {
            EXPECT_NEAR(row["ratio"].get<double>(), 1.0, 1e-12);
            found = true;
        }
    }
    EXPECT_TRUE(found);
}

TEST(Report, SpectrumSortedDescending)
{
    const auto r = build_report(config(Command::spectrum, 2e4, 50, 11));
    const auto& spectrum = r["spectrum"];
    ASSERT_EQ(spectrum.size(), 10u);
    for (std::size_t i = 2; i < spectrum.size(); ++i)
        EXPECT_GE(spectrum[i - 1]["ratio"].get<double>(), spectrum[i]["ratio"].get<double>());
}

TEST(Report, SubgroupCosetTable)
{
    auto cfg = config(Command::subgroup, 1048576, 2, 7);
    cfg.B = 2;
    const auto r = build_report(cfg);
    const auto& ps = r["problem_set"];
    EXPECT_EQ(ps["H"], nlohmann::json({1, 2, 4}));
    EXPECT_EQ(ps["index"].get<int>(), 2);
    ASSERT_EQ(ps["cosets"].size(), 2u);
    EXPECT_EQ(ps["cosets"][1]["representative"].get<int>(), 3);
    EXPECT_EQ(ps["cosets"][1]["mean"].get<double>(), 0.0);
    std::vector<int> qr;
    for (const auto& row : ps["cosets"][0]["residues"])
        qr.push_back(row["count"].get<int>());
    EXPECT_LE(*std::max_element(qr.begin(), qr.end()) - *std::min_element(qr.begin(), qr.end()), 1);
    EXPECT_EQ(ps["method"], "distance surrogate");
}

TEST(Report, NoFlagsCollapsesToOneCoset)
{
    const auto r = build_report(config(Command::subgroup, 1e5, 100, 5));
    const auto& ps = r["problem_set"];
    EXPECT_TRUE(ps["flagged"].empty());
    ASSERT_EQ(ps["cosets"].size(), 1u);
    EXPECT_EQ(ps["cosets"][0]["residues"].size(), 4u);
    EXPECT_EQ(ps["index"].get<int>(), 1);
}

TEST(Report, CsvSchemas)
{
    auto first_line = [](const std::string& s) { return s.substr(0, s.find('\n')); };
    EXPECT_EQ(first_line(to_csv(build_report(config(Command::equidist, 1e3, 10, 5)))),
              "residue,count,normalized,deviation");
    EXPECT_EQ(first_line(to_csv(build_report(config(Command::spectrum, 1e3, 10, 5)))), "char_id,order,ratio");
    EXPECT_EQ(first_line(to_csv(build_report(config(Command::subgroup, 1e3, 10, 5)))),
              "coset_rep,residue,count,deviation_from_coset_mean");
    EXPECT_EQ(first_line(to_csv(build_report(config(Command::saddle, 1e3, 10, 5)))), "key,value");
}

TEST(Report, ValidationAndDiscrepancy)
{
    EXPECT_THROW(build_report(config(Command::psi, 1.0, 10, 5)), DomainError);
    EXPECT_THROW(build_report(config(Command::psi, 100, 1.0, 5)), DomainError);
    EXPECT_THROW(build_report(config(Command::psi, 100, 10, 0)), DomainError);
    auto cfg = config(Command::psi, 100, 10, 5);
    cfg.epsilon = 0.5;
    EXPECT_THROW(build_report(cfg), DomainError);

    const auto c = psi_progression_exact(1e4, 30, 7, PrimeTable(30));
    double worst = 0;
    for (const auto& [a, n] : c.per_residue)
        worst = std::max(worst, std::abs(static_cast<double>(n) * 6 / static_cast<double>(c.psi_q) - 1.0));
    EXPECT_EQ(discrepancy(c), worst);
}

TEST(Report, AtomicWrite)
{
    const auto dir = std::filesystem::temp_directory_path() / "smoothprog_report_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "out.json";
    write_atomic(path, "first\n");
    write_atomic(path, "second\n");
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), "second\n");
    EXPECT_FALSE(std::filesystem::exists(dir / "out.json.tmp"));
    std::filesystem::remove_all(dir);
}

#ifdef SMOOTHPROG_CLI_PATH
namespace {

int run_cli(const std::string& args)
{
    const std::string cmd = std::string(SMOOTHPROG_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run_cli("psi --x 1000 --y 10 --q 7"), 0);
    EXPECT_EQ(run_cli("psi --x 1000 --y 10 --q 7 --format csv"), 0);
    EXPECT_EQ(run_cli("psi --x 0.5 --y 10"), 2);
    EXPECT_EQ(run_cli("psi --x 1000 --y 10 --epsilon 0.7"), 2);
    EXPECT_EQ(run_cli("psi --x 1000"), 2);
    EXPECT_EQ(run_cli("bogus --x 1000 --y 10"), 2);
    EXPECT_EQ(run_cli("psi --x 1e30 --y 10"), 3);
}

TEST(Cli, OutFileMatchesStdoutReport)
{
    const auto dir = std::filesystem::temp_directory_path() / "smoothprog_cli_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "r.json";
    ASSERT_EQ(run_cli("equidist --x 2000 --y 15 --q 8 --seed 3 --out " + path.string()), 0);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    auto cfg = config(Command::equidist, 2000, 15, 8);
    cfg.seed = 3;
    EXPECT_EQ(ss.str(), to_canonical_json(build_report(cfg)));
    std::filesystem::remove_all(dir);
}
#endif
