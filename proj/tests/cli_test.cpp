#include "commands.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "support/test_support.hpp"
#include "txlife/pipeline_io.hpp"

using namespace txlife;
using namespace txlife::cli;
using txlife::testing::slurp;
using txlife::testing::TempDir;

namespace {

struct Captured {
    int code = -1;
    std::string out;
    std::string err;
};

template <typename Options, typename Command>
Captured invoke(Command command, const Options& options) {
    std::ostringstream out, err;
    Captured c;
    c.code = run_guarded([&] { return command(options, out, err); }, err);
    c.out = out.str();
    c.err = err.str();
    return c;
}

SynthOptions synth_opts(const std::filesystem::path& out, int case_id, std::uint64_t seed) {
    SynthOptions o;
    o.common.out = out;
    o.common.seed = seed;
    o.case_id = case_id;
    o.case_given = true;
    return o;
}

RunOptions run_opts(const std::filesystem::path& input, const std::filesystem::path& out) {
    RunOptions o;
    o.input = input;
    o.common.out = out;
    o.quiet = true;
    return o;
}

}  // namespace

TEST(CliSynth, WritesDeterministicScenario) {
    TempDir dir;
    auto r1 = invoke(cmd_synth, synth_opts(dir / "a", 1, 42));
    auto r2 = invoke(cmd_synth, synth_opts(dir / "b", 1, 42));
    ASSERT_EQ(r1.code, exit_ok) << r1.err;
    ASSERT_EQ(r2.code, exit_ok);
    const auto a = slurp(dir / "a/scenario_case1.csv");
    EXPECT_EQ(a, slurp(dir / "b/scenario_case1.csv"));
    EXPECT_EQ(read_scenario_csv(dir / "a/scenario_case1.csv").size(), 8760u);
    EXPECT_NE(r1.out.find("mean_ambient_c"), std::string::npos);
    EXPECT_NE(r1.out.find("overload_hours 0"), std::string::npos);
}

TEST(CliSynth, CaseThreeDiffersFromCaseTwoInSixtyHours) {
    TempDir dir;
    ASSERT_EQ(invoke(cmd_synth, synth_opts(dir.path(), 2, 42)).code, exit_ok);
    const auto r3 = invoke(cmd_synth, synth_opts(dir.path(), 3, 42));
    ASSERT_EQ(r3.code, exit_ok);
    EXPECT_NE(r3.out.find("overload_hours 60"), std::string::npos);
    const auto two = read_scenario_csv(dir / "scenario_case2.csv");
    const auto three = read_scenario_csv(dir / "scenario_case3.csv");
    ASSERT_EQ(two.size(), three.size());
    std::size_t differ = 0;
    for (std::size_t h = 0; h < two.size(); ++h) {
        differ += two[h].interval.load_ratio_ultimate != three[h].interval.load_ratio_ultimate;
        EXPECT_EQ(two[h].interval.ambient_temp, three[h].interval.ambient_temp);
    }
    EXPECT_EQ(differ, 60u);
}

TEST(CliSynth, BadConfigIsUsageError) {
    TempDir dir;
    auto o = synth_opts(dir.path(), 1, 1);
    o.common.config = dir.write("c.json", R"({"scenario": {"climate": {"noise": 1}}})");
    const auto r = invoke(cmd_synth, o);
    EXPECT_EQ(r.code, exit_usage);
    EXPECT_NE(r.err.find("scenario.climate.noise"), std::string::npos);
}

TEST(CliRun, RatedSensorInputFullYear) {
    TempDir dir;
    std::string csv = "hour,theta_h_c\n";
    for (int h = 0; h < 8760; ++h) csv += std::to_string(h) + ",110\n";
    const auto r = invoke(cmd_run, run_opts(dir.write("s.csv", csv), dir / "out"));
    ASSERT_EQ(r.code, exit_ok) << r.err;
    const auto report = read_report(dir / "out/report.json");
    EXPECT_EQ(report.samples_processed, 8760u);
    EXPECT_NEAR(report.final_estimate_years, 21.547945205479452, 1e-9);
    EXPECT_EQ(report.convergence_step, std::optional<std::uint64_t>(25));
    EXPECT_EQ(read_run_csv(dir / "out/run.csv").size(), 8760u);
    EXPECT_EQ(report.config.at("input_schema"), "sensor");
}

TEST(CliRun, EmptyInputLeavesNoOutput) {
    TempDir dir;
    const auto r = invoke(cmd_run, run_opts(dir.write("s.csv", "hour,theta_h_c\n"), dir / "out"));
    EXPECT_EQ(r.code, exit_usage);
    EXPECT_FALSE(std::filesystem::exists(dir / "out"));
}

TEST(CliRun, InvalidInputReportsLine) {
    TempDir dir;
    const auto r = invoke(cmd_run, run_opts(dir.write("s.csv", "hour,theta_h_c\n0,100\n1,x\n"), dir / "out"));
    EXPECT_EQ(r.code, exit_usage);
    EXPECT_NE(r.err.find("line 3"), std::string::npos);
    EXPECT_FALSE(std::filesystem::exists(dir / "out"));
}

TEST(CliRun, MissingInputIsIoError) {
    TempDir dir;
    EXPECT_EQ(invoke(cmd_run, run_opts(dir / "nope.csv", dir / "out")).code, exit_io);
}

TEST(CliRun, StopAtConvergenceTruncatesRows) {
    TempDir dir;
    std::string csv = "hour,theta_h_c\n";
    for (int h = 0; h < 200; ++h) csv += std::to_string(h) + ",95\n";
    auto o = run_opts(dir.write("s.csv", csv), dir / "out");
    o.overrides.stop_at_convergence = true;
    ASSERT_EQ(invoke(cmd_run, o).code, exit_ok);
    const auto rows = read_run_csv(dir / "out/run.csv");
    EXPECT_EQ(rows.size(), 25u);
    EXPECT_TRUE(rows.back().converged);
}

TEST(CliRun, SnapshotAndResumeViaFiles) {
    TempDir dir;
    ASSERT_EQ(invoke(cmd_synth, synth_opts(dir.path(), 2, 5)).code, exit_ok);
    const auto input = dir / "scenario_case2.csv";

    ASSERT_EQ(invoke(cmd_run, run_opts(input, dir / "whole")).code, exit_ok);
    auto first = run_opts(input, dir / "first");
    first.snapshot_at = 4000;
    ASSERT_EQ(invoke(cmd_run, first).code, exit_ok);
    auto second = run_opts(input, dir / "second");
    second.resume = dir / "first/snapshot.json";
    ASSERT_EQ(invoke(cmd_run, second).code, exit_ok);

    const auto whole = read_run_csv(dir / "whole/run.csv");
    const auto tail = read_run_csv(dir / "second/run.csv");
    ASSERT_EQ(tail.size(), 8760u - 4000u);
    EXPECT_TRUE(std::equal(tail.begin(), tail.end(), whole.begin() + 4000));
    EXPECT_EQ(read_report(dir / "second/report.json").samples_processed, 8760u);
}

TEST(CliRun, ReportsAreIdenticalApartFromTimestamp) {
    TempDir dir;
    ASSERT_EQ(invoke(cmd_synth, synth_opts(dir.path(), 1, 42)).code, exit_ok);
    for (const char* name : {"a", "b"}) {
        ASSERT_EQ(invoke(cmd_run, run_opts(dir / "scenario_case1.csv", dir / name)).code, exit_ok);
    }
    EXPECT_EQ(slurp(dir / "a/run.csv"), slurp(dir / "b/run.csv"));
    auto ja = nlohmann::json::parse(slurp(dir / "a/report.json"));
    auto jb = nlohmann::json::parse(slurp(dir / "b/report.json"));
    ja.erase("generated_at");
    jb.erase("generated_at");
    EXPECT_EQ(ja.dump(), jb.dump());
}

TEST(CliCompare, NeedsTwoReports) {
    CompareOptions o;
    o.reports = {"one.json"};
    EXPECT_EQ(invoke(cmd_compare, o).code, exit_usage);
}

TEST(CliCompare, UnreadableReportNamed) {
    TempDir dir;
    CompareOptions o;
    o.reports = {dir.write("a.json", "{}"), dir / "missing.json"};
    const auto r = invoke(cmd_compare, o);
    EXPECT_NE(r.code, exit_ok);
    EXPECT_NE(r.err.find("a.json"), std::string::npos);
}

TEST(CliCompare, OrderingChecks) {
    TempDir dir;
    auto report = [&](const std::string& name, const std::string& label, double years) {
        RunSummary s;
        s.case_label = label;
        s.final_estimate_years = years;
        s.convergence_step = 8000;
        const auto p = dir / (name + ".json");
        write_report(s, p);
        return p;
    };
    CompareOptions good;
    good.reports = {report("m", "mild", 37.3), report("w", "warm", 23.5), report("o", "warm_overload", 21.7)};
    good.out = dir / "cmp";
    auto r = invoke(cmd_compare, good);
    EXPECT_EQ(r.code, exit_ok);
    EXPECT_NE(r.out.find("holds"), std::string::npos);
    const auto csv = slurp(dir / "cmp/comparison.csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "case,convergence_step,lifetime_years,report");

    CompareOptions same;
    same.reports = {good.reports[0], good.reports[0]};
    EXPECT_EQ(invoke(cmd_compare, same).code, exit_ok);

    CompareOptions bad;
    bad.reports = {report("m2", "mild", 20.0), report("w2", "warm", 23.5)};
    r = invoke(cmd_compare, bad);
    EXPECT_EQ(r.code, exit_ordering);
    EXPECT_NE(r.out.find("violated"), std::string::npos);
}
