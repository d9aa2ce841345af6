#pragma once

#include <optional>

namespace txlife {

/// Rated thermal constants of one transformer. Defaults are the distribution
/// transformer studied in the case scenarios (934 A, R = 7.43, m = n = 0.8).
struct TransformerCharacteristics {
    double rated_current = 934.0;        // A, informational
    double loss_ratio = 7.43;            // R
    double oil_exponent = 0.8;           // n
    double winding_exponent = 0.8;       // m
    double rated_hotspot_rise = 17.6;    // degC over top oil
    double rated_topoil_rise = 53.9;     // degC over ambient
    double topoil_time_constant = 6.8;   // h
    double winding_time_constant = 0.0833;  // h
    double normal_insulation_life = 180000.0;  // h

    /// Throws DomainError naming the first violated invariant.
    void validate() const;
};

struct OperatingInterval {
    double ambient_temp = 0.0;         // degC
    double load_ratio_initial = 0.0;   // K_i, per-unit
    double load_ratio_ultimate = 0.0;  // K_U, per-unit
    double duration = 1.0;             // h

    void validate() const;
};

struct ThermalState {
    double topoil_rise = 0.0;   // degC
    double hotspot_rise = 0.0;  // degC
    double hotspot_temp = 0.0;  // degC

    friend bool operator==(const ThermalState&, const ThermalState&) = default;
};

enum class InitializationMode {
    /// Initial rises re-derived from K_i every interval.
    paper,
    /// Initial rises carried over from the previous interval's final rises.
    continuity,
};

/// Steady-state top-oil rise over ambient at load ratio K:
/// rated_topoil_rise * ((K^2 R + 1) / (R + 1))^n.
double topoil_rise_boundary(const TransformerCharacteristics& chars, double load_ratio);

/// Steady-state hottest-spot rise over top oil at load ratio K:
/// rated_hotspot_rise * K^(2m).
double hotspot_rise_boundary(const TransformerCharacteristics& chars, double load_ratio);

/// First-order exponential approach from `initial` towards `ultimate`.
double transient_rise(double initial, double ultimate, double time_constant, double elapsed);

inline double hotspot_temperature(double ambient, double topoil_rise, double hotspot_rise) {
    return ambient + topoil_rise + hotspot_rise;
}

/// Thermal state at the end of one interval. Continuity mode requires `prev`
/// (throws UsageError otherwise); a run's first interval has no predecessor
/// and is simulated in paper mode by the caller.
ThermalState simulate_interval(const TransformerCharacteristics& chars,
                               const OperatingInterval& interval,
                               InitializationMode mode,
                               const std::optional<ThermalState>& prev);

}  // namespace txlife
