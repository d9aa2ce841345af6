#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "txlife/lifetime_run.hpp"
#include "txlife/scenario_synthesis.hpp"
#include "txlife/thermal_model.hpp"

namespace txlife {

/// One measured hottest-spot temperature (sensor CSV row).
using SensorSample = HourlyHotspot;
/// One ambient + load row (scenario CSV row); duration comes from the run.
using ScenarioRow = HourlyInterval;

inline constexpr std::string_view sensor_csv_header = "hour,theta_h_c";
inline constexpr std::string_view scenario_csv_header = "hour,ambient_c,k_i,k_u";
inline constexpr std::string_view run_csv_header =
    "hour,theta_h_c,f_aa,lol_pu,cma_pu,estimate_years,converged";

enum class InputSchema { sensor, scenario };

/// Decides the ingestion route from the header line.
InputSchema detect_schema(const std::filesystem::path& path);

std::vector<SensorSample> read_sensor_csv(const std::filesystem::path& path);
std::vector<ScenarioRow> read_scenario_csv(const std::filesystem::path& path,
                                           double interval_hours = 1.0);
std::vector<RunRecord> read_run_csv(const std::filesystem::path& path);

void write_scenario_csv(const Scenario& scenario, const std::filesystem::path& path);
void write_sensor_csv(const std::vector<SensorSample>& samples, const std::filesystem::path& path);
void write_run_csv(const std::vector<RunRecord>& records, const std::filesystem::path& path);

/// 12 significant digits, '.' separator, shortest of fixed/scientific.
std::string format_number(double value);

struct RunSummary {
    std::uint64_t samples_processed = 0;
    std::optional<std::uint64_t> convergence_step;
    double final_estimate_years = 0.0;
    double final_remaining_years = 0.0;
    double final_elapsed_years = 0.0;
    double final_cma_pu = 0.0;
    std::optional<std::string> case_label;
    nlohmann::json config;  // echo of every setting that shaped the run
    std::string generated_at;  // ISO 8601 UTC; the only nondeterministic field
};

nlohmann::json report_to_json(const RunSummary& summary);
RunSummary report_from_json(const nlohmann::json& doc);
void write_report(const RunSummary& summary, const std::filesystem::path& path);
RunSummary read_report(const std::filesystem::path& path);

nlohmann::json snapshot_to_json(const RunSnapshot& snapshot);
RunSnapshot snapshot_from_json(const nlohmann::json& doc);
void write_snapshot(const RunSnapshot& snapshot, const std::filesystem::path& path);
RunSnapshot read_snapshot(const std::filesystem::path& path);

std::string utc_timestamp_now();

}  // namespace txlife
