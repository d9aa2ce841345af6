#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "txlife/aging_model.hpp"
#include "txlife/lifetime_estimator.hpp"
#include "txlife/thermal_model.hpp"

namespace txlife {

/// One processed interval, as emitted to the run CSV.
struct RunRecord {
    std::uint64_t hour_index = 0;
    double hotspot_temp = 0.0;
    double aging_factor = 0.0;
    double interval_loss = 0.0;  // per-unit
    double cma = 0.0;            // per-unit
    double estimate_total_years = 0.0;
    bool converged = false;

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

struct RunSettings {
    TransformerCharacteristics transformer;
    AgingConstants aging;
    double tolerance = ConvergenceMonitor::default_tolerance;
    std::size_t window = ConvergenceMonitor::default_window;
    InitializationMode mode = InitializationMode::paper;
    double interval_hours = 1.0;

    void validate() const;
};

/// Everything needed to continue a run bit-exactly.
struct RunSnapshot {
    CmaState cma;
    std::vector<double> window;  // recent total-years estimates, oldest first
    double tolerance = ConvergenceMonitor::default_tolerance;
    std::size_t window_len = ConvergenceMonitor::default_window;
    std::optional<std::uint64_t> next_hour;
    std::optional<std::uint64_t> converged_at;
    std::optional<ThermalState> thermal;  // continuity mode only
};

/// The per-interval estimation loop: hottest-spot temperature (measured or
/// simulated) -> F_AA -> loss of life -> CMA -> lifetime -> convergence.
/// Single owner; not safe for concurrent mutation.
class LifetimeRun {
public:
    explicit LifetimeRun(RunSettings settings);

    /// Resumes from a snapshot taken under compatible settings.
    static LifetimeRun resume(RunSettings settings, const RunSnapshot& snapshot);

    /// Sensor route: the hottest-spot temperature was measured.
    RunRecord step_hotspot(std::uint64_t hour_index, double hotspot_temp);

    /// Scenario route: ambient and load go through the thermal model.
    RunRecord step_interval(std::uint64_t hour_index, const OperatingInterval& interval);

    RunSnapshot snapshot() const;

    const RunSettings& settings() const noexcept { return settings_; }
    const CmaState& cma() const noexcept { return cma_; }
    const ConvergenceMonitor& monitor() const noexcept { return monitor_; }
    std::optional<std::uint64_t> converged_at() const noexcept { return monitor_.converged_at(); }
    std::optional<std::uint64_t> next_hour() const noexcept { return next_hour_; }
    const std::optional<LifetimeEstimate>& last_estimate() const noexcept { return last_estimate_; }

private:
    void check_hour(std::uint64_t hour_index) const;

    RunSettings settings_;
    CmaState cma_;
    ConvergenceMonitor monitor_;
    std::optional<std::uint64_t> next_hour_;
    std::optional<ThermalState> thermal_;
    std::optional<LifetimeEstimate> last_estimate_;
};

/// Hour-indexed input for the batch drivers below.
struct HourlyInterval {
    std::uint64_t hour_index = 0;
    OperatingInterval interval;
};

struct HourlyHotspot {
    std::uint64_t hour_index = 0;
    double hotspot_temp = 0.0;
};

struct DriveOptions {
    bool stop_at_convergence = false;
    /// Called every `progress_every` processed intervals when set.
    std::function<void(const LifetimeRun&)> progress;
    std::size_t progress_every = 1000;
};

/// Feeds every input through `run`, returning one record per processed
/// interval. Inputs whose hour precedes run.next_hour() are skipped, so a
/// resumed run can be handed the full original input.
std::vector<RunRecord> drive(LifetimeRun& run, std::span<const HourlyInterval> input,
                             const DriveOptions& options = {});
std::vector<RunRecord> drive(LifetimeRun& run, std::span<const HourlyHotspot> input,
                             const DriveOptions& options = {});

/// Hour-indexed intervals 0..n-1 for an in-memory series.
std::vector<HourlyInterval> number_hours(std::span<const OperatingInterval> intervals);

}  // namespace txlife
