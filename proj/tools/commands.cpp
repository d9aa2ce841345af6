#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>

#include "txlife/errors.hpp"
#include "txlife/lifetime_run.hpp"
#include "txlife/pipeline_io.hpp"
#include "txlife/scenario_synthesis.hpp"

namespace txlife::cli {

namespace fs = std::filesystem;

namespace {

void ensure_directory(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

double mean(std::span<const double> xs) {
    return xs.empty() ? 0.0 : std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

int ordering_rank(const std::string& label) {
    if (label == "mild") return 0;
    if (label == "warm") return 1;
    if (label == "warm_overload") return 2;
    return -1;
}

}  // namespace

RunConfig load_config(const CommonOptions& common, ConfigOverrides overrides) {
    overrides.seed = common.seed;
    if (common.config) {
        const auto doc = load_json_file(*common.config);
        return resolve_config(&doc, overrides);
    }
    return resolve_config(nullptr, overrides);
}

int cmd_synth(const SynthOptions& options, std::ostream& out, std::ostream& log) {
    ConfigOverrides ov;
    if (options.case_given) ov.case_id = options.case_id;
    auto config = load_config(options.common, ov);
    if (options.horizon_hours) {
        config.scenario.horizon_hours = *options.horizon_hours;
        config.scenario.validate();
    }

    const auto scenario = synthesize(config.scenario);
    ensure_directory(options.common.out);
    const auto path = options.common.out /
                      options.file_name.value_or("scenario_case" +
                                                 std::to_string(config.scenario.case_id) + ".csv");
    write_scenario_csv(scenario, path);

    std::vector<double> k(scenario.load.size());
    std::transform(scenario.load.begin(), scenario.load.end(), k.begin(),
                   [](const LoadRatios& r) { return r.ultimate; });
    out << "case " << config.scenario.case_id << " (" << case_label(config.scenario.case_id) << ")\n"
        << "hours " << scenario.ambient.size() << '\n'
        << "mean_ambient_c " << format_number(mean(scenario.ambient)) << '\n'
        << "mean_k " << format_number(mean(k)) << '\n'
        << "overload_hours " << scenario.overload_hours.size() << '\n'
        << "wrote " << path.string() << '\n';
    log << "[synth] seed " << config.seed << '\n';
    return exit_ok;
}

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& log) {
    const auto config = load_config(options.common, options.overrides);

    // Validate all input before any output file exists.
    const auto schema = detect_schema(options.input);
    std::vector<SensorSample> samples;
    std::vector<ScenarioRow> rows;
    if (schema == InputSchema::sensor) {
        samples = read_sensor_csv(options.input);
    } else {
        rows = read_scenario_csv(options.input, config.run.interval_hours);
    }
    const std::size_t input_rows = schema == InputSchema::sensor ? samples.size() : rows.size();
    if (input_rows == 0) throw UsageError("input " + options.input.string() + " has no data rows");

    std::optional<LifetimeRun> run;
    if (options.resume) {
        run.emplace(LifetimeRun::resume(config.run, read_snapshot(*options.resume)));
    } else {
        run.emplace(config.run);
    }

    DriveOptions drive_opts;
    drive_opts.stop_at_convergence = config.stop_at_convergence;
    if (!options.quiet) {
        drive_opts.progress = [&log](const LifetimeRun& r) {
            log << "[run] " << r.cma().count << " intervals, cma " << format_number(r.cma().cma)
                << " pu, estimate " << format_number(r.last_estimate()->total_years) << " years"
                << (r.converged_at() ? ", converged" : "") << '\n';
        };
    }

    std::optional<RunSnapshot> snapshot;
    std::vector<RunRecord> records;
    auto feed = [&](auto span) {
        if (options.snapshot_at) {
            // Split the input at the requested count of processed intervals.
            const auto done = run->cma().count;
            const auto split = *options.snapshot_at > done ? *options.snapshot_at - done : 0;
            auto first = drive(*run, span.first(std::min<std::size_t>(split, span.size())), drive_opts);
            records.insert(records.end(), first.begin(), first.end());
            if (run->cma().count == *options.snapshot_at) snapshot = run->snapshot();
            if (!(drive_opts.stop_at_convergence && run->converged_at()) && split < span.size()) {
                auto rest = drive(*run, span.subspan(split), drive_opts);
                records.insert(records.end(), rest.begin(), rest.end());
            }
        } else {
            records = drive(*run, span, drive_opts);
        }
    };
    if (schema == InputSchema::sensor) {
        feed(std::span<const SensorSample>(samples));
    } else {
        feed(std::span<const ScenarioRow>(rows));
    }
    if (records.empty()) throw UsageError("no input rows after the resume point");
    if (options.snapshot_at && !snapshot) {
        throw UsageError("run ended before snapshot point " + std::to_string(*options.snapshot_at));
    }

    const auto& estimate = *run->last_estimate();
    RunSummary summary;
    summary.samples_processed = run->cma().count;
    summary.convergence_step = run->converged_at();
    summary.final_estimate_years = estimate.total_years;
    summary.final_remaining_years = estimate.remaining_years;
    summary.final_elapsed_years = estimate.elapsed_years;
    summary.final_cma_pu = run->cma().cma;
    summary.case_label = config.label;
    summary.config = config_to_json(config);
    summary.config["input_schema"] = schema == InputSchema::sensor ? "sensor" : "scenario";
    summary.generated_at = utc_timestamp_now();

    ensure_directory(options.common.out);
    const auto run_path = options.common.out / "run.csv";
    const auto report_path = options.common.out / "report.json";
    write_run_csv(records, run_path);
    write_report(summary, report_path);
    if (snapshot) write_snapshot(*snapshot, options.common.out / "snapshot.json");

    out << "samples " << summary.samples_processed << '\n'
        << "convergence_step "
        << (summary.convergence_step ? std::to_string(*summary.convergence_step) : "none") << '\n'
        << "lifetime_years " << format_number(summary.final_estimate_years) << '\n'
        << "wrote " << run_path.string() << ", " << report_path.string() << '\n';
    return exit_ok;
}

int cmd_compare(const CompareOptions& options, std::ostream& out, std::ostream& log) {
    if (options.reports.size() < 2) throw UsageError("compare needs at least 2 reports");

    struct Row {
        std::string label;
        std::optional<std::uint64_t> step;
        double years;
        std::string file;
    };
    std::vector<Row> rows;
    for (const auto& p : options.reports) {
        const auto s = read_report(p);
        rows.push_back({s.case_label.value_or(p.stem().string()), s.convergence_step,
                        s.final_estimate_years, p.string()});
    }

    out << std::left << std::setw(16) << "case" << std::setw(18) << "convergence_step"
        << "lifetime_years\n";
    for (const auto& r : rows) {
        out << std::setw(16) << r.label << std::setw(18)
            << (r.step ? std::to_string(*r.step) : "none") << format_number(r.years) << '\n';
    }

    if (options.out) {
        std::ostringstream csv;
        csv << "case,convergence_step,lifetime_years,report\n";
        for (const auto& r : rows) {
            csv << r.label << ',' << (r.step ? std::to_string(*r.step) : "") << ','
                << format_number(r.years) << ',' << r.file << '\n';
        }
        ensure_directory(*options.out);
        const auto path = *options.out / "comparison.csv";
        std::ofstream f(path, std::ios::binary);
        if (!(f << csv.str())) throw IoError("cannot write " + path.string());
    }

    std::map<int, std::vector<double>> by_rank;
    for (const auto& r : rows) {
        const int rank = ordering_rank(r.label);
        if (rank >= 0) by_rank[rank].push_back(r.years);
    }
    if (by_rank.size() < 2) {
        out << "ordering: not checked (fewer than two distinct case labels)\n";
        return exit_ok;
    }
    bool holds = true;
    for (auto a = by_rank.begin(); a != by_rank.end(); ++a) {
        for (auto b = std::next(a); b != by_rank.end(); ++b) {
            const double lowest_a = *std::min_element(a->second.begin(), a->second.end());
            const double highest_b = *std::max_element(b->second.begin(), b->second.end());
            if (!(lowest_a > highest_b)) holds = false;
        }
    }
    out << "ordering mild > warm > warm_overload: " << (holds ? "holds" : "violated") << '\n';
    if (!holds) log << "error: lifetime ordering violated\n";
    return holds ? exit_ok : exit_ordering;
}

}  // namespace txlife::cli
