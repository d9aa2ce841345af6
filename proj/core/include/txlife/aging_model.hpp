#pragma once

#include <span>

namespace txlife {

/// Arrhenius constants of the insulation life curve. The defaults put one
/// per-unit life at 110 degC (383 K).
struct AgingConstants {
    double per_unit_constant = 9.8e-18;  // A
    double aging_rate = 15000.0;         // B, K
    double reference_temp = 383.0;       // K

    void validate() const;
};

struct AgingRecord {
    double hotspot_temp = 0.0;  // degC
    double aging_factor = 0.0;  // F_AA
    double duration = 0.0;      // h
    double loss_of_life = 0.0;  // per-unit of normal insulation life
};

/// Aging factor and its weighting duration, for equivalent_aging_factor.
struct WeightedAging {
    double aging_factor = 0.0;
    double duration = 0.0;
};

inline constexpr double kelvin_offset = 273.0;

double per_unit_life(double hotspot_temp, const AgingConstants& constants = {});

double aging_acceleration_factor(double hotspot_temp, const AgingConstants& constants = {});

/// Duration-weighted mean of aging factors.
double equivalent_aging_factor(std::span<const WeightedAging> records);

/// Fraction of normal life consumed by one interval. Multiply by 100 for percent.
double interval_loss_of_life(double aging_factor, double duration, double normal_life);

/// F_AA and loss of life for one interval at the given hottest-spot temperature.
AgingRecord age_interval(double hotspot_temp, double duration, double normal_life,
                         const AgingConstants& constants = {});

}  // namespace txlife
