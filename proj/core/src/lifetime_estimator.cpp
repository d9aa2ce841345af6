#include "txlife/lifetime_estimator.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "txlife/errors.hpp"

namespace txlife {

CmaState cma_update(const CmaState& state, double new_loss) {
    if (!(new_loss >= 0.0) || !std::isfinite(new_loss)) {
        throw DomainError("loss of life must be finite and >= 0");
    }
    if (state.empty()) return {1, new_loss};
    const auto n = static_cast<double>(state.count);
    return {state.count + 1, (new_loss + n * state.cma) / (n + 1.0)};
}

double cma_batch(std::span<const double> losses) {
    if (losses.empty()) throw UsageError("mean of an empty loss sequence");
    double sum = 0.0;
    for (double x : losses) sum += x;
    return sum / static_cast<double>(losses.size());
}

LifetimeEstimate estimate_lifetime(const CmaState& state, double interval_hours) {
    if (state.empty()) throw UsageError("lifetime estimate needs at least one loss value");
    if (!(interval_hours > 0.0)) throw DomainError("interval length must be > 0");
    if (!(state.cma >= 0.0)) throw DomainError("negative CMA");

    LifetimeEstimate est;
    est.step_index = state.count;
    est.elapsed_years = static_cast<double>(state.count) * interval_hours / hours_per_year;
    if (state.cma == 0.0) {
        est.bounded = false;
        est.remaining_years = std::numeric_limits<double>::infinity();
    } else {
        est.remaining_years = interval_hours / (hours_per_year * state.cma);
    }
    est.total_years = est.remaining_years + est.elapsed_years;
    return est;
}

ConvergenceMonitor::ConvergenceMonitor(double tolerance, std::size_t window)
    : tolerance_(tolerance), window_(window) {
    if (!(tolerance > 0.0)) throw UsageError("convergence tolerance must be > 0");
    if (window < 1) throw UsageError("convergence window must be >= 1");
}

bool ConvergenceMonitor::small_change(double previous, double current) const {
    if (!std::isfinite(previous) || !std::isfinite(current) || previous == 0.0) return false;
    return std::abs(current - previous) / std::abs(previous) < tolerance_;
}

std::optional<std::uint64_t> ConvergenceMonitor::observe(const LifetimeEstimate& estimate) {
    if (last_step_ && estimate.step_index != *last_step_ + 1) {
        throw UsageError("estimate for step " + std::to_string(estimate.step_index) +
                         " fed after step " + std::to_string(*last_step_));
    }
    if (!recent_.empty()) {
        streak_ = small_change(recent_.back(), estimate.total_years) ? streak_ + 1 : 0;
    }
    recent_.push_back(estimate.total_years);
    if (recent_.size() > window_ + 1) recent_.pop_front();
    last_step_ = estimate.step_index;
    if (!converged_at_ && streak_ >= window_) converged_at_ = estimate.step_index;
    return converged_at_;
}

ConvergenceMonitor ConvergenceMonitor::restore(double tolerance, std::size_t window,
                                               std::span<const double> recent,
                                               std::optional<std::uint64_t> last_step,
                                               std::optional<std::uint64_t> converged_at) {
    ConvergenceMonitor m(tolerance, window);
    if (recent.size() > window + 1) throw UsageError("estimate history longer than window + 1");
    if (!recent.empty() && !last_step) throw UsageError("estimate history without a step index");
    m.recent_.assign(recent.begin(), recent.end());
    m.last_step_ = last_step;
    m.converged_at_ = converged_at;
    for (std::size_t i = m.recent_.size(); i >= 2; --i) {
        if (!m.small_change(m.recent_[i - 2], m.recent_[i - 1])) break;
        ++m.streak_;
    }
    return m;
}

}  // namespace txlife
