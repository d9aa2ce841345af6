#include "txlife/scenario_synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "txlife/errors.hpp"
#include "txlife/random.hpp"

namespace txlife {

namespace {

constexpr double days_per_year = 365.0;
constexpr double coldest_day = 15.0;
constexpr double warmest_hour = 15.0;

// Seed streams derived from the one user-facing seed.
enum SeedStream : std::uint64_t { climate_stream = 0, load_stream = 1, overload_stream = 2 };

}  // namespace

std::string_view to_string(ClimateClass c) {
    return c == ClimateClass::mild ? "mild" : "warm";
}

ClimateClass climate_class_from_string(std::string_view name) {
    if (name == "mild") return ClimateClass::mild;
    if (name == "warm") return ClimateClass::warm;
    throw ValidationError("unknown climate class '" + std::string(name) + "'");
}

ClimateSpec ClimateSpec::defaults(ClimateClass c, std::uint64_t seed) {
    ClimateSpec s;
    s.climate_class = c;
    s.seed = seed;
    if (c == ClimateClass::warm) {
        s.annual_mean = 24.0;
        s.diurnal_swing = 8.0;
    }
    return s;
}

void ClimateSpec::validate() const {
    if (!(annual_swing >= 0.0) || !(diurnal_swing >= 0.0)) {
        throw ValidationError("climate swings must be >= 0");
    }
    if (!(noise_std >= 0.0)) throw ValidationError("climate noise_std must be >= 0");
    if (!std::isfinite(annual_mean)) throw ValidationError("climate annual_mean must be finite");
}

void LoadSpec::validate() const {
    if (!(base_ratio >= 0.0)) throw ValidationError("load base_ratio must be >= 0");
    if (!(noise_std >= 0.0)) throw ValidationError("load noise_std must be >= 0");
    if (!std::isfinite(temp_sensitivity)) throw ValidationError("load temp_sensitivity must be finite");
}

void OverloadSpec::validate() const {
    if (!(magnitude >= 1.0)) throw ValidationError("overload magnitude must be >= 1");
    if (hours_per_day < 1 || hours_per_day > txlife::hours_per_day) {
        throw ValidationError("overload hours_per_day must be in [1, 24]");
    }
    if (start_hour + hours_per_day > txlife::hours_per_day) {
        throw ValidationError("overload block must end within the day");
    }
}

std::vector<double> synth_ambient(const ClimateSpec& spec, std::size_t horizon_hours) {
    spec.validate();
    PortableRng rng(spec.seed);
    std::vector<double> out(horizon_hours);
    const double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t h = 0; h < horizon_hours; ++h) {
        const double day = static_cast<double>(h) / static_cast<double>(txlife::hours_per_day);
        const double hour_of_day = static_cast<double>(h % txlife::hours_per_day);
        double t = spec.annual_mean;
        t -= spec.annual_swing * std::cos(two_pi * (day - coldest_day) / days_per_year);
        t += spec.diurnal_swing * std::cos(two_pi * (hour_of_day - warmest_hour) /
                                           static_cast<double>(txlife::hours_per_day));
        // Noise is drawn even at zero spread so the stream position never
        // depends on the spread value.
        t += spec.noise_std * rng.normal();
        out[h] = t;
    }
    return out;
}

std::vector<LoadRatios> synth_load(std::span<const double> ambient, const LoadSpec& spec) {
    spec.validate();
    if (ambient.empty()) throw UsageError("load synthesis needs a nonempty ambient series");
    PortableRng rng(spec.seed);
    std::vector<LoadRatios> out(ambient.size());
    for (std::size_t h = 0; h < ambient.size(); ++h) {
        const double k = spec.base_ratio + spec.temp_sensitivity * (ambient[h] - load_reference_temp) +
                         spec.noise_std * rng.normal();
        out[h].ultimate = std::max(k, 0.0);
        out[h].initial = h == 0 ? out[h].ultimate : out[h - 1].ultimate;
    }
    return out;
}

OverloadResult apply_overload(std::span<const LoadRatios> load, const OverloadSpec& spec) {
    spec.validate();
    const std::size_t whole_days = load.size() / txlife::hours_per_day;
    if (whole_days < spec.days) {
        throw UsageError("overload needs " + std::to_string(spec.days) + " whole days, series has " +
                         std::to_string(whole_days));
    }

    // Partial Fisher-Yates: the first `days` slots are the draw.
    std::vector<std::size_t> days(whole_days);
    std::iota(days.begin(), days.end(), std::size_t{0});
    PortableRng rng(spec.seed);
    for (std::size_t i = 0; i < spec.days; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.below(whole_days - i));
        std::swap(days[i], days[j]);
    }
    days.resize(spec.days);
    std::sort(days.begin(), days.end());

    OverloadResult result;
    result.load.assign(load.begin(), load.end());
    for (std::size_t d : days) {
        for (std::size_t k = 0; k < spec.hours_per_day; ++k) {
            const std::size_t h = d * txlife::hours_per_day + spec.start_hour + k;
            result.load[h].ultimate *= spec.magnitude;
            if (h + 1 < result.load.size()) result.load[h + 1].initial = result.load[h].ultimate;
            result.overload_hours.push_back(h);
        }
    }
    return result;
}

std::vector<OperatingInterval> make_intervals(std::span<const double> ambient,
                                              std::span<const LoadRatios> load,
                                              double interval_hours) {
    if (ambient.size() != load.size()) throw UsageError("ambient and load series differ in length");
    std::vector<OperatingInterval> out(ambient.size());
    for (std::size_t h = 0; h < ambient.size(); ++h) {
        out[h] = {ambient[h], load[h].initial, load[h].ultimate, interval_hours};
    }
    return out;
}

ScenarioSpec ScenarioSpec::for_case(int case_id, std::uint64_t seed) {
    if (case_id < 1 || case_id > 3) {
        throw ValidationError("case must be 1, 2 or 3, got " + std::to_string(case_id));
    }
    ScenarioSpec s;
    s.case_id = case_id;
    const auto climate = case_id == 1 ? ClimateClass::mild : ClimateClass::warm;
    s.climate = ClimateSpec::defaults(climate, derive_seed(seed, climate_stream));
    s.load.seed = derive_seed(seed, load_stream);
    s.overload.seed = derive_seed(seed, overload_stream);
    s.overload_enabled = case_id == 3;
    return s;
}

void ScenarioSpec::validate() const {
    if (horizon_hours < 1) throw ValidationError("horizon_hours must be >= 1");
    climate.validate();
    load.validate();
    if (overload_enabled) overload.validate();
}

Scenario synthesize(const ScenarioSpec& spec) {
    spec.validate();
    Scenario s;
    s.ambient = synth_ambient(spec.climate, spec.horizon_hours);
    s.load = synth_load(s.ambient, spec.load);
    if (spec.overload_enabled) {
        auto r = apply_overload(s.load, spec.overload);
        s.load = std::move(r.load);
        s.overload_hours = std::move(r.overload_hours);
    }
    return s;
}

std::string_view case_label(int case_id) {
    switch (case_id) {
        case 1: return "mild";
        case 2: return "warm";
        case 3: return "warm_overload";
        default: throw ValidationError("case must be 1, 2 or 3");
    }
}

}  // namespace txlife
