#include "txlife/thermal_model.hpp"

#include <cmath>
#include <string>

#include "txlife/errors.hpp"

namespace txlife {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw DomainError(what);
}

void require_load_ratio(double k) {
    if (!(k >= 0.0) || !std::isfinite(k)) {
        throw DomainError("load ratio must be finite and >= 0, got " + std::to_string(k));
    }
}

}  // namespace

void TransformerCharacteristics::validate() const {
    require(loss_ratio > 0.0, "loss_ratio must be > 0");
    require(rated_hotspot_rise > 0.0, "rated_hotspot_rise must be > 0");
    require(rated_topoil_rise > 0.0, "rated_topoil_rise must be > 0");
    require(topoil_time_constant > 0.0, "topoil_time_constant must be > 0");
    require(winding_time_constant > 0.0, "winding_time_constant must be > 0");
    require(normal_insulation_life > 0.0, "normal_insulation_life must be > 0");
    require(oil_exponent >= 0.8 && oil_exponent <= 1.0, "oil_exponent must be in [0.8, 1.0]");
    require(winding_exponent >= 0.8 && winding_exponent <= 1.0,
            "winding_exponent must be in [0.8, 1.0]");
}

void OperatingInterval::validate() const {
    require(std::isfinite(load_ratio_initial) && load_ratio_initial >= 0.0,
            "load_ratio_initial must be >= 0");
    require(std::isfinite(load_ratio_ultimate) && load_ratio_ultimate >= 0.0,
            "load_ratio_ultimate must be >= 0");
    require(std::isfinite(duration) && duration > 0.0, "duration must be > 0");
    require(ambient_temp >= -60.0 && ambient_temp <= 60.0, "ambient_temp must be in [-60, 60] degC");
}

double topoil_rise_boundary(const TransformerCharacteristics& chars, double load_ratio) {
    if (!(chars.loss_ratio > 0.0)) throw DomainError("loss_ratio must be > 0");
    require_load_ratio(load_ratio);
    const double r = chars.loss_ratio;
    const double ratio = (load_ratio * load_ratio * r + 1.0) / (r + 1.0);
    return chars.rated_topoil_rise * std::pow(ratio, chars.oil_exponent);
}

double hotspot_rise_boundary(const TransformerCharacteristics& chars, double load_ratio) {
    require_load_ratio(load_ratio);
    return chars.rated_hotspot_rise * std::pow(load_ratio, 2.0 * chars.winding_exponent);
}

double transient_rise(double initial, double ultimate, double time_constant, double elapsed) {
    if (!(time_constant > 0.0)) throw DomainError("time constant must be > 0");
    if (!(elapsed >= 0.0)) throw DomainError("elapsed time must be >= 0");
    return (ultimate - initial) * (1.0 - std::exp(-elapsed / time_constant)) + initial;
}

ThermalState simulate_interval(const TransformerCharacteristics& chars,
                               const OperatingInterval& interval,
                               InitializationMode mode,
                               const std::optional<ThermalState>& prev) {
    double topoil_initial = 0.0;
    double hotspot_initial = 0.0;
    if (mode == InitializationMode::continuity) {
        if (!prev) throw UsageError("continuity mode needs the previous thermal state");
        topoil_initial = prev->topoil_rise;
        hotspot_initial = prev->hotspot_rise;
    } else {
        topoil_initial = topoil_rise_boundary(chars, interval.load_ratio_initial);
        hotspot_initial = hotspot_rise_boundary(chars, interval.load_ratio_initial);
    }
    const double topoil_ultimate = topoil_rise_boundary(chars, interval.load_ratio_ultimate);
    const double hotspot_ultimate = hotspot_rise_boundary(chars, interval.load_ratio_ultimate);

    ThermalState out;
    out.topoil_rise = transient_rise(topoil_initial, topoil_ultimate, chars.topoil_time_constant,
                                     interval.duration);
    out.hotspot_rise = transient_rise(hotspot_initial, hotspot_ultimate,
                                      chars.winding_time_constant, interval.duration);
    out.hotspot_temp = hotspot_temperature(interval.ambient_temp, out.topoil_rise, out.hotspot_rise);
    return out;
}

}  // namespace txlife
