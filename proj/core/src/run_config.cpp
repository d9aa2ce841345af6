#include "txlife/run_config.hpp"

#include <fstream>
#include <set>
#include <string>

#include "txlife/errors.hpp"

namespace txlife {

namespace {

using nlohmann::json;

/// Reads fields of one JSON object and rejects keys nobody asked for.
class ObjectReader {
public:
    ObjectReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
        if (!obj_.is_object()) throw ValidationError(where() + " must be an object");
    }

    template <typename T>
    void read(const char* key, T& out) {
        seen_.insert(key);
        if (!obj_.contains(key)) return;
        try {
            out = obj_.at(key).get<T>();
        } catch (const json::exception&) {
            throw ValidationError(key_path(key) + " has the wrong type");
        }
    }

    const json* child(const char* key) {
        seen_.insert(key);
        return obj_.contains(key) ? &obj_.at(key) : nullptr;
    }

    std::string key_path(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

    void finish() const {
        for (const auto& [k, v] : obj_.items()) {
            if (!seen_.count(k)) throw ValidationError("unknown config key '" + key_path(k.c_str()) + "'");
        }
    }

private:
    std::string where() const { return path_.empty() ? "config" : path_; }

    const json& obj_;
    std::string path_;
    std::set<std::string> seen_;
};

/// Re-raises a component invariant violation under its config section.
template <typename F>
void validate_section(const std::string& section, F&& check) {
    try {
        check();
    } catch (const Error& e) {
        throw ValidationError(section + ": " + e.what());
    }
}

void read_transformer(const json& j, TransformerCharacteristics& t) {
    ObjectReader r(j, "transformer");
    r.read("rated_current", t.rated_current);
    r.read("loss_ratio", t.loss_ratio);
    r.read("oil_exponent", t.oil_exponent);
    r.read("winding_exponent", t.winding_exponent);
    r.read("rated_hotspot_rise", t.rated_hotspot_rise);
    r.read("rated_topoil_rise", t.rated_topoil_rise);
    r.read("topoil_time_constant", t.topoil_time_constant);
    r.read("winding_time_constant", t.winding_time_constant);
    r.read("normal_insulation_life", t.normal_insulation_life);
    r.finish();
}

void read_aging(const json& j, AgingConstants& a) {
    ObjectReader r(j, "aging");
    r.read("per_unit_constant", a.per_unit_constant);
    r.read("aging_rate", a.aging_rate);
    r.read("reference_temp", a.reference_temp);
    r.finish();
}

void read_climate(const json& j, ClimateSpec& c, bool seed_locked) {
    ObjectReader r(j, "scenario.climate");
    std::string cls(to_string(c.climate_class));
    r.read("climate_class", cls);
    c.climate_class = climate_class_from_string(cls);
    r.read("annual_mean", c.annual_mean);
    r.read("annual_swing", c.annual_swing);
    r.read("diurnal_swing", c.diurnal_swing);
    r.read("noise_std", c.noise_std);
    auto seed = c.seed;
    r.read("seed", seed);
    if (!seed_locked) c.seed = seed;
    r.finish();
}

void read_load(const json& j, LoadSpec& l, bool seed_locked) {
    ObjectReader r(j, "scenario.load");
    r.read("base_ratio", l.base_ratio);
    r.read("temp_sensitivity", l.temp_sensitivity);
    r.read("noise_std", l.noise_std);
    auto seed = l.seed;
    r.read("seed", seed);
    if (!seed_locked) l.seed = seed;
    r.finish();
}

void read_overload(const json& j, OverloadSpec& o, bool seed_locked) {
    ObjectReader r(j, "scenario.overload");
    r.read("magnitude", o.magnitude);
    r.read("hours_per_day", o.hours_per_day);
    r.read("days", o.days);
    r.read("start_hour", o.start_hour);
    auto seed = o.seed;
    r.read("seed", seed);
    if (!seed_locked) o.seed = seed;
    r.finish();
}

}  // namespace

InitializationMode mode_from_string(std::string_view name) {
    if (name == "paper") return InitializationMode::paper;
    if (name == "continuity") return InitializationMode::continuity;
    throw ValidationError("mode must be 'paper' or 'continuity', got '" + std::string(name) + "'");
}

std::string_view to_string(InitializationMode mode) {
    return mode == InitializationMode::paper ? "paper" : "continuity";
}

RunConfig resolve_config(const json* file, const ConfigOverrides& ov) {
    static const json empty = json::object();
    const json& doc = file ? *file : empty;
    ObjectReader root(doc, "");

    RunConfig cfg;
    root.read("seed", cfg.seed);
    if (ov.seed) cfg.seed = *ov.seed;

    const json* scenario = root.child("scenario");
    int case_id = 1;
    std::size_t horizon = default_horizon_hours;
    const json* climate = nullptr;
    const json* load = nullptr;
    const json* overload = nullptr;
    std::optional<bool> overload_enabled;
    if (scenario) {
        ObjectReader sr(*scenario, "scenario");
        sr.read("case", case_id);
        sr.read("horizon_hours", horizon);
        bool enabled = false;
        sr.read("overload_enabled", enabled);
        if (scenario->contains("overload_enabled")) overload_enabled = enabled;
        climate = sr.child("climate");
        load = sr.child("load");
        overload = sr.child("overload");
        sr.finish();
    }
    if (ov.case_id) case_id = *ov.case_id;
    cfg.scenario = ScenarioSpec::for_case(case_id, cfg.seed);
    cfg.scenario.horizon_hours = horizon;
    if (overload_enabled && !ov.case_id) cfg.scenario.overload_enabled = *overload_enabled;
    const bool seed_locked = ov.seed.has_value();
    if (climate) read_climate(*climate, cfg.scenario.climate, seed_locked);
    if (load) read_load(*load, cfg.scenario.load, seed_locked);
    if (overload) read_overload(*overload, cfg.scenario.overload, seed_locked);
    validate_section("scenario", [&] { cfg.scenario.validate(); });

    if (const json* t = root.child("transformer")) read_transformer(*t, cfg.run.transformer);
    validate_section("transformer", [&] { cfg.run.transformer.validate(); });
    if (const json* a = root.child("aging")) read_aging(*a, cfg.run.aging);
    validate_section("aging", [&] { cfg.run.aging.validate(); });

    if (const json* e = root.child("estimator")) {
        ObjectReader er(*e, "estimator");
        er.read("tolerance", cfg.run.tolerance);
        er.read("window", cfg.run.window);
        er.finish();
    }
    std::string mode(to_string(cfg.run.mode));
    root.read("mode", mode);
    cfg.run.mode = mode_from_string(mode);
    root.read("interval_hours", cfg.run.interval_hours);
    root.read("stop_at_convergence", cfg.stop_at_convergence);
    std::string label;
    root.read("label", label);
    if (!label.empty()) cfg.label = label;
    root.finish();

    if (ov.mode) cfg.run.mode = *ov.mode;
    if (ov.tolerance) cfg.run.tolerance = *ov.tolerance;
    if (ov.window) cfg.run.window = *ov.window;
    if (ov.interval_hours) cfg.run.interval_hours = *ov.interval_hours;
    if (ov.label) cfg.label = *ov.label;
    if (ov.stop_at_convergence) cfg.stop_at_convergence = true;

    if (!(cfg.run.tolerance > 0.0)) throw ValidationError("estimator.tolerance must be > 0");
    if (cfg.run.window < 1) throw ValidationError("estimator.window must be >= 1");
    if (!(cfg.run.interval_hours > 0.0)) throw ValidationError("interval_hours must be > 0");
    return cfg;
}

json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

json config_to_json(const RunConfig& c) {
    const auto& t = c.run.transformer;
    const auto& a = c.run.aging;
    const auto& s = c.scenario;
    json j;
    j["seed"] = c.seed;
    j["mode"] = std::string(to_string(c.run.mode));
    j["interval_hours"] = c.run.interval_hours;
    j["stop_at_convergence"] = c.stop_at_convergence;
    if (c.label) j["label"] = *c.label;
    j["estimator"] = {{"tolerance", c.run.tolerance}, {"window", c.run.window}};
    j["transformer"] = {{"rated_current", t.rated_current},
                        {"loss_ratio", t.loss_ratio},
                        {"oil_exponent", t.oil_exponent},
                        {"winding_exponent", t.winding_exponent},
                        {"rated_hotspot_rise", t.rated_hotspot_rise},
                        {"rated_topoil_rise", t.rated_topoil_rise},
                        {"topoil_time_constant", t.topoil_time_constant},
                        {"winding_time_constant", t.winding_time_constant},
                        {"normal_insulation_life", t.normal_insulation_life}};
    j["aging"] = {{"per_unit_constant", a.per_unit_constant},
                  {"aging_rate", a.aging_rate},
                  {"reference_temp", a.reference_temp}};
    j["scenario"] = {
        {"case", s.case_id},
        {"horizon_hours", s.horizon_hours},
        {"overload_enabled", s.overload_enabled},
        {"climate",
         {{"climate_class", std::string(to_string(s.climate.climate_class))},
          {"annual_mean", s.climate.annual_mean},
          {"annual_swing", s.climate.annual_swing},
          {"diurnal_swing", s.climate.diurnal_swing},
          {"noise_std", s.climate.noise_std},
          {"seed", s.climate.seed}}},
        {"load",
         {{"base_ratio", s.load.base_ratio},
          {"temp_sensitivity", s.load.temp_sensitivity},
          {"noise_std", s.load.noise_std},
          {"seed", s.load.seed}}},
        {"overload",
         {{"magnitude", s.overload.magnitude},
          {"hours_per_day", s.overload.hours_per_day},
          {"days", s.overload.days},
          {"start_hour", s.overload.start_hour},
          {"seed", s.overload.seed}}}};
    return j;
}

}  // namespace txlife
