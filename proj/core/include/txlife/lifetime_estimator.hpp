#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>

namespace txlife {

inline constexpr double hours_per_year = 8760.0;

/// Running count and cumulative moving average of per-interval loss of life.
struct CmaState {
    std::uint64_t count = 0;
    double cma = 0.0;  // per-unit loss per interval; meaningless while count == 0

    bool empty() const noexcept { return count == 0; }
    friend bool operator==(const CmaState&, const CmaState&) = default;
};

/// CMA_{n+1} = (LOL_{n+1} + n CMA_n) / (n + 1).
CmaState cma_update(const CmaState& state, double new_loss);

/// Arithmetic mean of a nonempty sequence.
double cma_batch(std::span<const double> losses);

struct LifetimeEstimate {
    double total_years = 0.0;
    double remaining_years = 0.0;
    double elapsed_years = 0.0;
    std::uint64_t step_index = 0;
    /// False when the CMA is zero: no observable aging, remaining life unbounded
    /// (remaining_years and total_years are +inf).
    bool bounded = true;
};

/// remaining = dt / (8760 CMA_n), elapsed = n dt / 8760.
LifetimeEstimate estimate_lifetime(const CmaState& state, double interval_hours);

/// Detects when successive lifetime estimates stop moving: converged at the
/// first step that completes `window` consecutive relative changes below
/// `tolerance`. Once set, the convergence step never changes.
class ConvergenceMonitor {
public:
    static constexpr double default_tolerance = 1e-5;
    static constexpr std::size_t default_window = 24;

    explicit ConvergenceMonitor(double tolerance = default_tolerance,
                                std::size_t window = default_window);

    /// Feeds the next estimate; its step_index must follow the previous one.
    /// Returns the convergence step if converged as of this estimate.
    std::optional<std::uint64_t> observe(const LifetimeEstimate& estimate);

    double tolerance() const noexcept { return tolerance_; }
    std::size_t window() const noexcept { return window_; }
    std::optional<std::uint64_t> converged_at() const noexcept { return converged_at_; }
    std::optional<std::uint64_t> last_step() const noexcept { return last_step_; }
    /// Most recent estimates (total years), oldest first, at most window + 1.
    const std::deque<double>& recent_estimates() const noexcept { return recent_; }

    /// Rebuilds a monitor from persisted fields, re-deriving the run of
    /// small changes from the history.
    static ConvergenceMonitor restore(double tolerance, std::size_t window,
                                      std::span<const double> recent,
                                      std::optional<std::uint64_t> last_step,
                                      std::optional<std::uint64_t> converged_at);

private:
    bool small_change(double previous, double current) const;

    double tolerance_;
    std::size_t window_;
    std::deque<double> recent_;
    std::size_t streak_ = 0;
    std::optional<std::uint64_t> last_step_;
    std::optional<std::uint64_t> converged_at_;
};

}  // namespace txlife
