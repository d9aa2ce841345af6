#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "txlife/errors.hpp"
#include "txlife/run_config.hpp"

namespace txlife::cli {

/// Stable process exit codes.
enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,     // validation, usage, parse and domain errors
    exit_io = 2,        // file system failures
    exit_ordering = 3,  // compare: mild > warm > warm_overload violated
};

struct CommonOptions {
    std::optional<std::filesystem::path> config;
    std::optional<std::uint64_t> seed;
    std::filesystem::path out = ".";
};

struct SynthOptions {
    CommonOptions common;
    int case_id = 1;
    bool case_given = false;
    std::optional<std::size_t> horizon_hours;
    /// Output file name inside `out`; default scenario_case<N>.csv.
    std::optional<std::string> file_name;
};

struct RunOptions {
    CommonOptions common;
    std::filesystem::path input;
    ConfigOverrides overrides;
    std::optional<std::uint64_t> snapshot_at;
    std::optional<std::filesystem::path> resume;
    bool quiet = false;
};

struct CompareOptions {
    std::vector<std::filesystem::path> reports;
    std::optional<std::filesystem::path> out;
};

/// Each command writes data files, prints a short summary to `out` and
/// progress to `log`, and returns an ExitCode. Errors are thrown as
/// txlife::Error subclasses; run_guarded maps them to exit codes.
int cmd_synth(const SynthOptions& options, std::ostream& out, std::ostream& log);
int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& log);
int cmd_compare(const CompareOptions& options, std::ostream& out, std::ostream& log);

template <typename F>
int run_guarded(F&& command, std::ostream& log) {
    try {
        return command();
    } catch (const IoError& e) {
        log << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const Error& e) {
        log << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

/// Config file (when given) plus command-line overrides.
RunConfig load_config(const CommonOptions& common, ConfigOverrides overrides);

}  // namespace txlife::cli
