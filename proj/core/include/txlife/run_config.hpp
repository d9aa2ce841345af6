#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "txlife/lifetime_run.hpp"
#include "txlife/scenario_synthesis.hpp"

namespace txlife {

inline constexpr std::uint64_t default_seed = 42;

/// Fully resolved settings of one CLI invocation.
struct RunConfig {
    RunSettings run;
    ScenarioSpec scenario = ScenarioSpec::for_case(1, default_seed);
    std::uint64_t seed = default_seed;
    bool stop_at_convergence = false;
    std::optional<std::string> label;
};

/// Values given on the command line; each one that is set wins over the
/// config file.
struct ConfigOverrides {
    std::optional<int> case_id;
    std::optional<std::uint64_t> seed;
    std::optional<InitializationMode> mode;
    std::optional<double> tolerance;
    std::optional<std::size_t> window;
    std::optional<double> interval_hours;
    std::optional<std::string> label;
    bool stop_at_convergence = false;
};

/// Builds a config from an optional JSON document plus overrides. Unknown
/// keys and violated invariants raise ValidationError naming the key path
/// (e.g. "transformer.loss_ratio").
RunConfig resolve_config(const nlohmann::json* file, const ConfigOverrides& overrides);

nlohmann::json load_json_file(const std::filesystem::path& path);

/// Echo written into reports. Parsing it back with resolve_config yields an
/// equivalent config.
nlohmann::json config_to_json(const RunConfig& config);

InitializationMode mode_from_string(std::string_view name);
std::string_view to_string(InitializationMode mode);

}  // namespace txlife
