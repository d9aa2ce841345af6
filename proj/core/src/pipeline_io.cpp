#include "txlife/pipeline_io.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>

#include "txlife/errors.hpp"

namespace txlife {

namespace {

namespace fs = std::filesystem;

constexpr double min_sensor_temp = -273.0;
constexpr double max_sensor_temp = 250.0;

/// Line-oriented CSV source that tracks 1-based line numbers.
class CsvReader {
public:
    explicit CsvReader(const fs::path& path) : path_(path), in_(path, std::ios::binary) {
        if (!in_) throw IoError("cannot open " + path.string());
    }

    void expect_header(std::string_view header) {
        std::string line;
        if (!next_line(line)) throw ParseError("missing header '" + std::string(header) + "'", 1);
        if (line != header) {
            throw ParseError("expected header '" + std::string(header) + "', got '" + line + "'",
                             line_);
        }
    }

    std::string header() {
        std::string line;
        if (!next_line(line)) throw ParseError("empty file " + path_.string(), 1);
        return line;
    }

    /// Splits the next row into exactly `columns` fields; false at end of file.
    bool next_row(std::vector<std::string_view>& fields, std::size_t columns) {
        if (!next_line(row_)) return false;
        fields.clear();
        std::string_view rest = row_;
        while (true) {
            const auto comma = rest.find(',');
            fields.push_back(rest.substr(0, comma));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (fields.size() != columns) {
            throw ParseError("expected " + std::to_string(columns) + " fields, got " +
                                 std::to_string(fields.size()),
                             line_);
        }
        return true;
    }

    std::size_t line() const noexcept { return line_; }

    double number(std::string_view field, std::string_view column) const {
        double v = 0.0;
        const auto* end = field.data() + field.size();
        const auto [ptr, ec] = std::from_chars(field.data(), end, v);
        if (field.empty() || ec != std::errc{} || ptr != end) {
            throw ParseError("bad number '" + std::string(field) + "' in column " + std::string(column),
                             line_);
        }
        return v;
    }

    std::uint64_t hour(std::string_view field) const {
        std::uint64_t v = 0;
        const auto* end = field.data() + field.size();
        const auto [ptr, ec] = std::from_chars(field.data(), end, v);
        if (field.empty() || ec != std::errc{} || ptr != end) {
            throw ParseError("bad hour index '" + std::string(field) + "'", line_);
        }
        return v;
    }

private:
    bool next_line(std::string& line) {
        if (!std::getline(in_, line)) {
            if (in_.bad()) throw IoError("read failure on " + path_.string());
            return false;
        }
        ++line_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
    }

    fs::path path_;
    std::ifstream in_;
    std::string row_;
    std::size_t line_ = 0;
};

/// Enforces strictly increasing, gap-free hour indices.
class HourSequence {
public:
    void accept(std::uint64_t hour, std::size_t line) {
        if (last_) {
            if (hour <= *last_) {
                throw ValidationError("hour " + std::to_string(hour) + " does not follow hour " +
                                          std::to_string(*last_),
                                      line);
            }
            if (hour != *last_ + 1) {
                throw ValidationError("gap after hour " + std::to_string(*last_) + " (next is " +
                                          std::to_string(hour) + ")",
                                      line);
            }
        }
        last_ = hour;
    }

private:
    std::optional<std::uint64_t> last_;
};

class CsvWriter {
public:
    explicit CsvWriter(const fs::path& path) : path_(path), out_(path, std::ios::binary) {
        if (!out_) throw IoError("cannot write " + path.string());
    }
    std::ostream& stream() { return out_; }
    void close() {
        out_.flush();
        if (!out_) throw IoError("write failure on " + path_.string());
        out_.close();
    }

private:
    fs::path path_;
    std::ofstream out_;
};

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    out.flush();
    if (!out) throw IoError("write failure on " + path.string());
}

nlohmann::json parse_json_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

// JSON has no infinity; an unbounded value is stored as null.
nlohmann::json finite_or_null(double v) {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

double number_or_inf(const nlohmann::json& v) {
    return v.is_null() ? std::numeric_limits<double>::infinity() : v.get<double>();
}

template <typename T>
nlohmann::json optional_json(const std::optional<T>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

std::string format_number(double value) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] =
        std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 12);
    if (ec != std::errc{}) throw Error("number formatting failed");
    return std::string(buf.data(), ptr);
}

InputSchema detect_schema(const fs::path& path) {
    CsvReader reader(path);
    const auto header = reader.header();
    if (header == sensor_csv_header) return InputSchema::sensor;
    if (header == scenario_csv_header) return InputSchema::scenario;
    throw ParseError("unrecognised header '" + header + "'; expected '" +
                         std::string(sensor_csv_header) + "' or '" +
                         std::string(scenario_csv_header) + "'",
                     1);
}

std::vector<SensorSample> read_sensor_csv(const fs::path& path) {
    CsvReader reader(path);
    reader.expect_header(sensor_csv_header);
    std::vector<SensorSample> out;
    std::vector<std::string_view> f;
    HourSequence hours;
    while (reader.next_row(f, 2)) {
        SensorSample s{reader.hour(f[0]), reader.number(f[1], "theta_h_c")};
        hours.accept(s.hour_index, reader.line());
        if (!(s.hotspot_temp > min_sensor_temp && s.hotspot_temp < max_sensor_temp)) {
            throw ValidationError("hottest-spot temperature " + format_number(s.hotspot_temp) +
                                      " outside (-273, 250) degC",
                                  reader.line());
        }
        out.push_back(s);
    }
    return out;
}

std::vector<ScenarioRow> read_scenario_csv(const fs::path& path, double interval_hours) {
    CsvReader reader(path);
    reader.expect_header(scenario_csv_header);
    std::vector<ScenarioRow> out;
    std::vector<std::string_view> f;
    HourSequence hours;
    while (reader.next_row(f, 4)) {
        ScenarioRow row;
        row.hour_index = reader.hour(f[0]);
        row.interval.ambient_temp = reader.number(f[1], "ambient_c");
        row.interval.load_ratio_initial = reader.number(f[2], "k_i");
        row.interval.load_ratio_ultimate = reader.number(f[3], "k_u");
        row.interval.duration = interval_hours;
        hours.accept(row.hour_index, reader.line());
        try {
            row.interval.validate();
        } catch (const DomainError& e) {
            throw ValidationError(e.what(), reader.line());
        }
        out.push_back(row);
    }
    return out;
}

std::vector<RunRecord> read_run_csv(const fs::path& path) {
    CsvReader reader(path);
    reader.expect_header(run_csv_header);
    std::vector<RunRecord> out;
    std::vector<std::string_view> f;
    HourSequence hours;
    while (reader.next_row(f, 7)) {
        RunRecord r;
        r.hour_index = reader.hour(f[0]);
        r.hotspot_temp = reader.number(f[1], "theta_h_c");
        r.aging_factor = reader.number(f[2], "f_aa");
        r.interval_loss = reader.number(f[3], "lol_pu");
        r.cma = reader.number(f[4], "cma_pu");
        r.estimate_total_years = reader.number(f[5], "estimate_years");
        if (f[6] != "0" && f[6] != "1") {
            throw ParseError("converged must be 0 or 1, got '" + std::string(f[6]) + "'", reader.line());
        }
        r.converged = f[6] == "1";
        hours.accept(r.hour_index, reader.line());
        out.push_back(r);
    }
    return out;
}

void write_scenario_csv(const Scenario& scenario, const fs::path& path) {
    if (scenario.ambient.size() != scenario.load.size()) {
        throw UsageError("scenario ambient and load series differ in length");
    }
    CsvWriter w(path);
    auto& os = w.stream();
    os << scenario_csv_header << '\n';
    for (std::size_t h = 0; h < scenario.ambient.size(); ++h) {
        os << h << ',' << format_number(scenario.ambient[h]) << ','
           << format_number(scenario.load[h].initial) << ',' << format_number(scenario.load[h].ultimate)
           << '\n';
    }
    w.close();
}

void write_sensor_csv(const std::vector<SensorSample>& samples, const fs::path& path) {
    CsvWriter w(path);
    auto& os = w.stream();
    os << sensor_csv_header << '\n';
    for (const auto& s : samples) os << s.hour_index << ',' << format_number(s.hotspot_temp) << '\n';
    w.close();
}

void write_run_csv(const std::vector<RunRecord>& records, const fs::path& path) {
    CsvWriter w(path);
    auto& os = w.stream();
    os << run_csv_header << '\n';
    for (const auto& r : records) {
        os << r.hour_index << ',' << format_number(r.hotspot_temp) << ','
           << format_number(r.aging_factor) << ',' << format_number(r.interval_loss) << ','
           << format_number(r.cma) << ',' << format_number(r.estimate_total_years) << ','
           << (r.converged ? '1' : '0') << '\n';
    }
    w.close();
}

nlohmann::json report_to_json(const RunSummary& s) {
    nlohmann::json j;
    j["samples_processed"] = s.samples_processed;
    j["convergence_step"] = optional_json(s.convergence_step);
    j["converged"] = s.convergence_step.has_value();
    j["final_estimate_years"] = finite_or_null(s.final_estimate_years);
    j["final_remaining_years"] = finite_or_null(s.final_remaining_years);
    j["final_elapsed_years"] = s.final_elapsed_years;
    j["final_cma_pu"] = s.final_cma_pu;
    j["final_cma_percent"] = s.final_cma_pu * 100.0;
    j["case_label"] = optional_json(s.case_label);
    j["config"] = s.config;
    j["generated_at"] = s.generated_at;
    return j;
}

RunSummary report_from_json(const nlohmann::json& j) {
    try {
        RunSummary s;
        s.samples_processed = j.at("samples_processed").get<std::uint64_t>();
        if (!j.at("convergence_step").is_null()) {
            s.convergence_step = j.at("convergence_step").get<std::uint64_t>();
        }
        s.final_estimate_years = number_or_inf(j.at("final_estimate_years"));
        s.final_remaining_years = number_or_inf(j.at("final_remaining_years"));
        s.final_elapsed_years = j.at("final_elapsed_years").get<double>();
        s.final_cma_pu = j.at("final_cma_pu").get<double>();
        if (j.contains("case_label") && !j.at("case_label").is_null()) {
            s.case_label = j.at("case_label").get<std::string>();
        }
        s.config = j.value("config", nlohmann::json::object());
        s.generated_at = j.value("generated_at", std::string{});
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed report: ") + e.what());
    }
}

void write_report(const RunSummary& summary, const fs::path& path) {
    write_text(path, report_to_json(summary).dump(2) + "\n");
}

RunSummary read_report(const fs::path& path) {
    try {
        return report_from_json(parse_json_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

nlohmann::json snapshot_to_json(const RunSnapshot& s) {
    nlohmann::json j;
    j["count"] = s.cma.count;
    j["cma_pu"] = s.cma.cma;
    auto window = nlohmann::json::array();
    for (double v : s.window) window.push_back(finite_or_null(v));
    j["window"] = std::move(window);
    j["tolerance"] = s.tolerance;
    j["window_len"] = s.window_len;
    j["next_hour"] = optional_json(s.next_hour);
    j["converged_at"] = optional_json(s.converged_at);
    if (s.thermal) {
        j["thermal"] = {{"topoil_rise", s.thermal->topoil_rise},
                        {"hotspot_rise", s.thermal->hotspot_rise},
                        {"hotspot_temp", s.thermal->hotspot_temp}};
    } else {
        j["thermal"] = nullptr;
    }
    return j;
}

RunSnapshot snapshot_from_json(const nlohmann::json& j) {
    try {
        RunSnapshot s;
        s.cma.count = j.at("count").get<std::uint64_t>();
        s.cma.cma = j.at("cma_pu").get<double>();
        for (const auto& v : j.at("window")) s.window.push_back(number_or_inf(v));
        s.tolerance = j.at("tolerance").get<double>();
        s.window_len = j.at("window_len").get<std::size_t>();
        if (j.contains("next_hour") && !j["next_hour"].is_null()) {
            s.next_hour = j["next_hour"].get<std::uint64_t>();
        }
        if (j.contains("converged_at") && !j["converged_at"].is_null()) {
            s.converged_at = j["converged_at"].get<std::uint64_t>();
        }
        if (j.contains("thermal") && !j["thermal"].is_null()) {
            const auto& t = j["thermal"];
            s.thermal = ThermalState{t.at("topoil_rise").get<double>(), t.at("hotspot_rise").get<double>(),
                                     t.at("hotspot_temp").get<double>()};
        }
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed snapshot: ") + e.what());
    }
}

void write_snapshot(const RunSnapshot& snapshot, const fs::path& path) {
    write_text(path, snapshot_to_json(snapshot).dump(2) + "\n");
}

RunSnapshot read_snapshot(const fs::path& path) {
    try {
        return snapshot_from_json(parse_json_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

std::string utc_timestamp_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::array<char, 32> buf{};
    const auto n = std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return std::string(buf.data(), n);
}

}  // namespace txlife
