#include "txlife/aging_model.hpp"

#include <cmath>
#include <string>

#include "txlife/errors.hpp"

namespace txlife {

namespace {

double absolute_temp(double hotspot_temp) {
    const double kelvin = hotspot_temp + kelvin_offset;
    if (!(kelvin > 0.0)) {
        throw DomainError("hottest-spot temperature at or below absolute zero: " +
                          std::to_string(hotspot_temp) + " degC");
    }
    return kelvin;
}

}  // namespace

void AgingConstants::validate() const {
    if (!(per_unit_constant > 0.0)) throw DomainError("per_unit_constant must be > 0");
    if (!(aging_rate >= 11350.0 && aging_rate <= 18000.0)) {
        throw DomainError("aging_rate must be in [11350, 18000]");
    }
    if (!(reference_temp > 0.0)) throw DomainError("reference_temp must be > 0 K");
}

double per_unit_life(double hotspot_temp, const AgingConstants& constants) {
    return constants.per_unit_constant * std::exp(constants.aging_rate / absolute_temp(hotspot_temp));
}

double aging_acceleration_factor(double hotspot_temp, const AgingConstants& constants) {
    const double kelvin = absolute_temp(hotspot_temp);
    return std::exp(constants.aging_rate / constants.reference_temp - constants.aging_rate / kelvin);
}

double equivalent_aging_factor(std::span<const WeightedAging> records) {
    if (records.empty()) throw UsageError("equivalent aging needs at least one interval");
    double weighted = 0.0;
    double hours = 0.0;
    for (const auto& r : records) {
        if (!(r.duration > 0.0)) throw DomainError("interval duration must be > 0");
        weighted += r.aging_factor * r.duration;
        hours += r.duration;
    }
    return weighted / hours;
}

double interval_loss_of_life(double aging_factor, double duration, double normal_life) {
    if (!(normal_life > 0.0)) throw DomainError("normal insulation life must be > 0");
    if (!(aging_factor > 0.0)) throw DomainError("aging factor must be > 0");
    if (!(duration > 0.0)) throw DomainError("interval duration must be > 0");
    return aging_factor * duration / normal_life;
}

AgingRecord age_interval(double hotspot_temp, double duration, double normal_life,
                         const AgingConstants& constants) {
    AgingRecord rec;
    rec.hotspot_temp = hotspot_temp;
    rec.aging_factor = aging_acceleration_factor(hotspot_temp, constants);
    rec.duration = duration;
    rec.loss_of_life = interval_loss_of_life(rec.aging_factor, duration, normal_life);
    return rec;
}

}  // namespace txlife
