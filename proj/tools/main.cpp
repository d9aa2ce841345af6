#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

void add_common(CLI::App& cmd, txlife::cli::CommonOptions& common) {
    cmd.add_option("--config", common.config, "JSON config file")->check(CLI::ExistingFile);
    cmd.add_option("--seed", common.seed, "Seed for every random generator");
    cmd.add_option("--out", common.out, "Output directory")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    using namespace txlife::cli;

    CLI::App app{"Transformer insulation aging and streaming lifetime estimation"};
    app.require_subcommand(1);

    SynthOptions synth;
    auto* synth_cmd = app.add_subcommand("synth", "Synthesize an hourly ambient + load scenario");
    add_common(*synth_cmd, synth.common);
    synth_cmd->add_option("--case", synth.case_id, "1 mild, 2 warm, 3 warm with overload")
        ->check(CLI::Range(1, 3));
    synth_cmd->add_option("--horizon", synth.horizon_hours, "Number of hourly rows (default 8760)");
    synth_cmd->add_option("--file", synth.file_name, "Output file name inside --out");

    RunOptions run;
    std::string mode;
    auto* run_cmd = app.add_subcommand("run", "Estimate lifetime from a sensor or scenario CSV");
    add_common(*run_cmd, run.common);
    run_cmd->add_option("--input", run.input, "hour,theta_h_c or hour,ambient_c,k_i,k_u CSV")
        ->required();
    run_cmd->add_option("--mode", mode, "Thermal initialization: paper|continuity")
        ->check(CLI::IsMember({"paper", "continuity"}));
    run_cmd->add_option("--tolerance", run.overrides.tolerance, "Relative change threshold");
    run_cmd->add_option("--window", run.overrides.window, "Consecutive steps below tolerance");
    run_cmd->add_option("--interval-hours", run.overrides.interval_hours, "Interval length in hours");
    run_cmd->add_flag("--stop-at-convergence", run.overrides.stop_at_convergence,
                      "Stop at the convergence step");
    run_cmd->add_option("--label", run.overrides.label, "Case label recorded in the report");
    run_cmd->add_option("--snapshot-at", run.snapshot_at,
                        "Write snapshot.json after this many intervals");
    run_cmd->add_option("--resume", run.resume, "Continue from a snapshot JSON")
        ->check(CLI::ExistingFile);
    run_cmd->add_flag("--quiet", run.quiet, "No progress lines");

    CompareOptions compare;
    auto* compare_cmd = app.add_subcommand("compare", "Tabulate and order lifetime reports");
    compare_cmd->add_option("reports", compare.reports, "Report JSON files")->required();
    compare_cmd->add_option("--out", compare.out, "Directory for comparison.csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    if (*synth_cmd) {
        synth.case_given = synth_cmd->count("--case") > 0;
        return run_guarded([&] { return cmd_synth(synth, std::cout, std::cerr); }, std::cerr);
    }
    if (*run_cmd) {
        if (!mode.empty()) run.overrides.mode = txlife::mode_from_string(mode);
        return run_guarded([&] { return cmd_run(run, std::cout, std::cerr); }, std::cerr);
    }
    return run_guarded([&] { return cmd_compare(compare, std::cout, std::cerr); }, std::cerr);
}
