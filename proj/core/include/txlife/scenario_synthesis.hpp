#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "txlife/thermal_model.hpp"

namespace txlife {

inline constexpr std::size_t hours_per_day = 24;
inline constexpr std::size_t default_horizon_hours = 8760;
/// Ambient temperature at which the load model returns base_ratio.
inline constexpr double load_reference_temp = 20.0;

enum class ClimateClass { mild, warm };

std::string_view to_string(ClimateClass c);
ClimateClass climate_class_from_string(std::string_view name);

/// Hourly ambient temperature model:
///   annual_mean - annual_swing cos(2 pi (day - 15) / 365)      coldest mid-January
///             + diurnal_swing cos(2 pi (hour_of_day - 15) / 24) warmest 15:00
///             + N(0, noise_std)
/// with day = h / 24 (fractional). Swings are amplitudes, not peak-to-peak.
struct ClimateSpec {
    ClimateClass climate_class = ClimateClass::mild;
    double annual_mean = 12.0;
    double annual_swing = 10.0;
    double diurnal_swing = 6.0;
    double noise_std = 2.0;
    std::uint64_t seed = 0;

    static ClimateSpec defaults(ClimateClass c, std::uint64_t seed = 0);
    void validate() const;
};

struct LoadSpec {
    double base_ratio = 0.7;
    double temp_sensitivity = 0.015;  // per degC
    double noise_std = 0.05;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Overload blocks of `hours_per_day` consecutive hours starting at
/// `start_hour` (local time) on `days` distinct days drawn without
/// replacement.
struct OverloadSpec {
    double magnitude = 1.2;
    std::size_t hours_per_day = 3;
    std::size_t days = 20;
    std::size_t start_hour = 14;
    std::uint64_t seed = 0;

    void validate() const;
};

struct LoadRatios {
    double initial = 0.0;   // K_i
    double ultimate = 0.0;  // K_U
};

struct OverloadResult {
    std::vector<LoadRatios> load;
    /// Hours whose K_U was scaled, ascending.
    std::vector<std::size_t> overload_hours;
};

std::vector<double> synth_ambient(const ClimateSpec& spec,
                                  std::size_t horizon_hours = default_horizon_hours);

/// K_U[h] = max(0, base + sensitivity (ambient[h] - 20) + noise);
/// K_i[h] = K_U[h-1], K_i[0] = K_U[0].
std::vector<LoadRatios> synth_load(std::span<const double> ambient, const LoadSpec& spec);

/// Scales K_U on the selected hours, then re-links K_i[h] = K_U[h-1] on the
/// hour following each scaled hour. Throws UsageError when the series does
/// not contain `days` whole days.
OverloadResult apply_overload(std::span<const LoadRatios> load, const OverloadSpec& spec);

/// Ambient and load zipped into unit-duration operating intervals.
std::vector<OperatingInterval> make_intervals(std::span<const double> ambient,
                                              std::span<const LoadRatios> load,
                                              double interval_hours = 1.0);

/// The three studied cases: 1 mild, 2 warm, 3 warm with overload.
struct ScenarioSpec {
    int case_id = 1;
    ClimateSpec climate;
    LoadSpec load;
    OverloadSpec overload;
    bool overload_enabled = false;
    std::size_t horizon_hours = default_horizon_hours;

    /// Shipped defaults for a case, with generator seeds derived from `seed`.
    static ScenarioSpec for_case(int case_id, std::uint64_t seed);
    void validate() const;
};

struct Scenario {
    std::vector<double> ambient;
    std::vector<LoadRatios> load;
    std::vector<std::size_t> overload_hours;

    std::vector<OperatingInterval> intervals(double interval_hours = 1.0) const {
        return make_intervals(ambient, load, interval_hours);
    }
};

Scenario synthesize(const ScenarioSpec& spec);

std::string_view case_label(int case_id);

}  // namespace txlife
