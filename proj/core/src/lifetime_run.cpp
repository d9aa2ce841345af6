#include "txlife/lifetime_run.hpp"

#include <string>

#include "txlife/errors.hpp"

namespace txlife {

void RunSettings::validate() const {
    transformer.validate();
    aging.validate();
    if (!(tolerance > 0.0)) throw ValidationError("tolerance must be > 0");
    if (window < 1) throw ValidationError("window must be >= 1");
    if (!(interval_hours > 0.0)) throw ValidationError("interval_hours must be > 0");
}

LifetimeRun::LifetimeRun(RunSettings settings)
    : settings_(std::move(settings)), monitor_(settings_.tolerance, settings_.window) {
    settings_.validate();
}

LifetimeRun LifetimeRun::resume(RunSettings settings, const RunSnapshot& snapshot) {
    LifetimeRun run(std::move(settings));
    if (snapshot.tolerance != run.settings_.tolerance || snapshot.window_len != run.settings_.window) {
        throw UsageError("snapshot convergence settings differ from the run settings");
    }
    if (snapshot.cma.count > 0 && snapshot.window.empty()) {
        throw UsageError("snapshot has samples but no estimate history");
    }
    run.cma_ = snapshot.cma;
    std::optional<std::uint64_t> last_step;
    if (snapshot.cma.count > 0) last_step = snapshot.cma.count;
    run.monitor_ = ConvergenceMonitor::restore(snapshot.tolerance, snapshot.window_len,
                                               snapshot.window, last_step, snapshot.converged_at);
    run.next_hour_ = snapshot.next_hour;
    run.thermal_ = snapshot.thermal;
    if (snapshot.cma.count > 0) {
        run.last_estimate_ = estimate_lifetime(run.cma_, run.settings_.interval_hours);
    }
    return run;
}

void LifetimeRun::check_hour(std::uint64_t hour_index) const {
    if (next_hour_ && hour_index != *next_hour_) {
        throw ValidationError("expected hour " + std::to_string(*next_hour_) + ", got " +
                              std::to_string(hour_index));
    }
}

RunRecord LifetimeRun::step_hotspot(std::uint64_t hour_index, double hotspot_temp) {
    check_hour(hour_index);
    const auto aging = age_interval(hotspot_temp, settings_.interval_hours,
                                    settings_.transformer.normal_insulation_life, settings_.aging);
    cma_ = cma_update(cma_, aging.loss_of_life);
    const auto estimate = estimate_lifetime(cma_, settings_.interval_hours);
    const auto converged = monitor_.observe(estimate);
    last_estimate_ = estimate;
    next_hour_ = hour_index + 1;

    RunRecord rec;
    rec.hour_index = hour_index;
    rec.hotspot_temp = hotspot_temp;
    rec.aging_factor = aging.aging_factor;
    rec.interval_loss = aging.loss_of_life;
    rec.cma = cma_.cma;
    rec.estimate_total_years = estimate.total_years;
    rec.converged = converged.has_value();
    return rec;
}

RunRecord LifetimeRun::step_interval(std::uint64_t hour_index, const OperatingInterval& interval) {
    check_hour(hour_index);
    OperatingInterval iv = interval;
    iv.duration = settings_.interval_hours;
    iv.validate();
    const bool carry = settings_.mode == InitializationMode::continuity && thermal_.has_value();
    const auto state = simulate_interval(settings_.transformer, iv,
                                         carry ? InitializationMode::continuity
                                               : InitializationMode::paper,
                                         thermal_);
    auto rec = step_hotspot(hour_index, state.hotspot_temp);
    if (settings_.mode == InitializationMode::continuity) thermal_ = state;
    return rec;
}

RunSnapshot LifetimeRun::snapshot() const {
    RunSnapshot s;
    s.cma = cma_;
    s.window.assign(monitor_.recent_estimates().begin(), monitor_.recent_estimates().end());
    s.tolerance = settings_.tolerance;
    s.window_len = settings_.window;
    s.next_hour = next_hour_;
    s.converged_at = monitor_.converged_at();
    s.thermal = thermal_;
    return s;
}

namespace {

template <typename Input, typename Step>
std::vector<RunRecord> drive_impl(LifetimeRun& run, std::span<const Input> input,
                                  const DriveOptions& options, Step step) {
    std::vector<RunRecord> out;
    out.reserve(input.size());
    std::size_t processed = 0;
    for (const auto& item : input) {
        if (run.next_hour() && item.hour_index < *run.next_hour()) continue;
        out.push_back(step(item));
        ++processed;
        if (options.progress && options.progress_every && processed % options.progress_every == 0) {
            options.progress(run);
        }
        if (options.stop_at_convergence && run.converged_at()) break;
    }
    return out;
}

}  // namespace

std::vector<RunRecord> drive(LifetimeRun& run, std::span<const HourlyInterval> input,
                             const DriveOptions& options) {
    return drive_impl(run, input, options,
                      [&](const HourlyInterval& x) { return run.step_interval(x.hour_index, x.interval); });
}

std::vector<RunRecord> drive(LifetimeRun& run, std::span<const HourlyHotspot> input,
                             const DriveOptions& options) {
    return drive_impl(run, input, options,
                      [&](const HourlyHotspot& x) { return run.step_hotspot(x.hour_index, x.hotspot_temp); });
}

std::vector<HourlyInterval> number_hours(std::span<const OperatingInterval> intervals) {
    std::vector<HourlyInterval> out(intervals.size());
    for (std::size_t h = 0; h < intervals.size(); ++h) out[h] = {h, intervals[h]};
    return out;
}

}  // namespace txlife
