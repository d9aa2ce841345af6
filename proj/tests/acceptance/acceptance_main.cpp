// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "support/test_support.hpp"
#include "txlife/aging_model.hpp"
#include "txlife/lifetime_estimator.hpp"
#include "txlife/lifetime_run.hpp"
#include "txlife/pipeline_io.hpp"
#include "txlife/scenario_synthesis.hpp"
#include "txlife/thermal_model.hpp"

using namespace txlife;
using txlife::testing::relative_error;
using txlife::testing::slurp;
using txlife::testing::TempDir;

namespace {

constexpr std::uint64_t acceptance_seed = 42;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

struct Criterion {
    int id;
    const char* title;
    double budget_seconds;
    std::function<void(Outcome&)> body;
};

std::vector<RunRecord> run_case(int case_id, std::vector<std::size_t>* overload_hours = nullptr) {
    const auto scenario = synthesize(ScenarioSpec::for_case(case_id, acceptance_seed));
    if (overload_hours) *overload_hours = scenario.overload_hours;
    LifetimeRun run{RunSettings{}};
    return drive(run, std::span<const HourlyInterval>(number_hours(scenario.intervals())));
}

void aaf_fixed_point(Outcome& o) {
    const double f = aging_acceleration_factor(110.0);
    o.detail << "F_AA(110) = " << format_number(f);
    o.require(std::abs(f - 1.0) <= 1e-12, "|F_AA(110) - 1| <= 1e-12");
}

void arrhenius_consistency(Outcome& o) {
    const double constant = 9.8e-18 * std::exp(15000.0 / 383.0);
    double worst = 0.0;
    for (int t = -20; t <= 200; ++t) {
        worst = std::max(worst, relative_error(per_unit_life(t) * aging_acceleration_factor(t), constant));
    }
    o.detail << "max relative deviation " << worst << " over -20..200 degC";
    o.require(worst <= 1e-12, "relative deviation <= 1e-12");
}

void rated_fixed_points(Outcome& o) {
    const TransformerCharacteristics chars;
    const double to = topoil_rise_boundary(chars, 1.0);
    const double hs = hotspot_rise_boundary(chars, 1.0);
    o.detail << "topoil " << format_number(to) << " degC, hotspot " << format_number(hs) << " degC";
    o.require(to == 53.9, "topoil rise == 53.9 exactly");
    o.require(hs == 17.6, "hotspot rise == 17.6 exactly");
}

void normal_life(Outcome& o) {
    LifetimeRun run{RunSettings{}};
    const double expected_remaining = 180000.0 / 8760.0;
    const double expected_total = 180000.0 / 8760.0 + 1.0;
    double worst = 0.0;
    LifetimeEstimate last;
    for (std::uint64_t h = 0; h < 8760; ++h) {
        run.step_hotspot(h, 110.0);
        last = *run.last_estimate();
        worst = std::max(worst, relative_error(last.remaining_years, expected_remaining));
    }
    const double total_err = relative_error(last.total_years, expected_total);
    o.detail << "remaining max rel err " << worst << ", total(8760) = " << format_number(last.total_years)
             << " (rel err " << total_err << ")";
    o.require(worst <= 1e-9, "remaining within 1e-9 at every step");
    o.require(total_err <= 1e-9, "total at n = 8760 within 1e-9 of 21.5479");
}

void streaming_batch(Outcome& o) {
    std::mt19937_64 gen(20240601);
    std::uniform_real_distribution<double> exponent(-9.0, -2.0), unit(0.0, 1.0);
    double worst = 0.0;
    for (int stream = 0; stream < 100; ++stream) {
        std::vector<double> xs(10000);
        for (auto& x : xs) x = unit(gen) < 0.01 ? 0.0 : std::pow(10.0, exponent(gen));
        CmaState s;
        double sum = 0.0, carry = 0.0;  // Neumaier prefix sum: batch mean of every prefix
        for (std::size_t i = 0; i < xs.size(); ++i) {
            s = cma_update(s, xs[i]);
            const double t = sum + xs[i];
            carry += std::abs(sum) >= std::abs(xs[i]) ? (sum - t) + xs[i] : (xs[i] - t) + sum;
            sum = t;
            const double batch = (sum + carry) / static_cast<double>(i + 1);
            worst = std::max(worst, relative_error(s.cma, batch));
        }
        worst = std::max(worst, relative_error(s.cma, cma_batch(xs)));
    }
    o.detail << "max relative deviation " << worst << " over 100 x 10000 prefixes";
    o.require(worst <= 1e-12, "recursive == batch within 1e-12 at every prefix");
}

void eqa_consistency(Outcome& o) {
    double worst = 0.0;
    for (int c = 1; c <= 3; ++c) {
        const auto recs = run_case(c);
        std::vector<WeightedAging> weighted;
        double loss_sum = 0.0;
        for (const auto& r : recs) {
            weighted.push_back({r.aging_factor, 1.0});
            loss_sum += r.interval_loss;
        }
        const double via_eqa =
            equivalent_aging_factor(weighted) * static_cast<double>(recs.size()) / 180000.0;
        worst = std::max(worst, relative_error(via_eqa, loss_sum));
    }
    o.detail << "max relative deviation " << worst << " over cases 1-3";
    o.require(worst <= 1e-9, "F_EQA * hours / 180000 == sum of losses within 1e-9");
}

void case_ordering(Outcome& o) {
    std::vector<std::size_t> overload;
    double years[3];
    std::optional<std::uint64_t> steps[3];
    for (int c = 1; c <= 3; ++c) {
        const auto recs = run_case(c, c == 3 ? &overload : nullptr);
        years[c - 1] = recs.back().estimate_total_years;
        for (const auto& r : recs) {
            if (r.converged) {
                steps[c - 1] = r.hour_index + 1;
                break;
            }
        }
    }
    for (int c = 0; c < 3; ++c) {
        o.detail << case_label(c + 1) << " " << format_number(years[c]) << " y (converged "
                 << (steps[c] ? std::to_string(*steps[c]) : "never") << "); ";
    }
    o.detail << "overload hours " << overload.size();
    o.require(years[0] > years[1] && years[1] > years[2], "mild > warm > warm_overload");
    for (int c = 0; c < 3; ++c) {
        o.require(steps[c] && *steps[c] < 8760,
                  std::string(case_label(c + 1)) + " converges before hour 8760 at tol 1e-5, window 24");
    }
    o.require(overload.size() == 60, "exactly 60 overload hours");
}

void transient_correctness(Outcome& o) {
    const TransformerCharacteristics chars;
    struct Case {
        double initial, ultimate, tau;
    };
    const std::vector<Case> cases{{20.0, 60.0, 6.8},
                                  {60.0, 20.0, 6.8},
                                  {topoil_rise_boundary(chars, 0.0), topoil_rise_boundary(chars, 1.2),
                                   chars.topoil_time_constant},
                                  {hotspot_rise_boundary(chars, 0.3), hotspot_rise_boundary(chars, 1.2),
                                   chars.winding_time_constant},
                                  {topoil_rise_boundary(chars, 1.2), topoil_rise_boundary(chars, 0.8),
                                   chars.topoil_time_constant}};
    double worst_end = 0.0;
    for (const auto& c : cases) {
        o.require(transient_rise(c.initial, c.ultimate, c.tau, 0.0) == c.initial, "t = 0 returns initial");
        const double end = transient_rise(c.initial, c.ultimate, c.tau, 10.0 * c.tau);
        worst_end = std::max(worst_end, relative_error(end, c.ultimate));
        double prev = c.initial;
        bool monotone = true;
        for (int k = 1; k <= 100; ++k) {
            const double cur = transient_rise(c.initial, c.ultimate, c.tau, 10.0 * c.tau * k / 100.0);
            monotone &= c.ultimate > c.initial ? cur > prev : cur < prev;
            prev = cur;
        }
        o.require(monotone, "strictly monotone over 100 samples");
    }
    o.detail << "max rel gap to ultimate at 10 tau " << worst_end;
    o.require(worst_end <= 1e-4, "within 1e-4 of ultimate at 10 tau");
}

void determinism_roundtrip(Outcome& o) {
    using namespace txlife::cli;
    TempDir dir;
    std::ostringstream sink;
    std::size_t files = 0;
    double worst = 0.0;
    for (int c = 1; c <= 3; ++c) {
        std::string run_csv[2], scenario_csv[2];
        for (int rep = 0; rep < 2; ++rep) {
            const auto out = dir / ("rep" + std::to_string(rep) + "_case" + std::to_string(c));
            SynthOptions so;
            so.common.out = out;
            so.common.seed = acceptance_seed;
            so.case_id = c;
            so.case_given = true;
            o.require(run_guarded([&] { return cmd_synth(so, sink, sink); }, sink) == exit_ok, "synth ok");
            RunOptions ro;
            ro.common.out = out;
            ro.input = out / ("scenario_case" + std::to_string(c) + ".csv");
            ro.quiet = true;
            o.require(run_guarded([&] { return cmd_run(ro, sink, sink); }, sink) == exit_ok, "run ok");
            scenario_csv[rep] = slurp(ro.input);
            run_csv[rep] = slurp(out / "run.csv");
        }
        o.require(!run_csv[0].empty() && run_csv[0] == run_csv[1], "run CSV byte-identical");
        o.require(!scenario_csv[0].empty() && scenario_csv[0] == scenario_csv[1],
                  "scenario CSV byte-identical");
        files += 2;

        // Round trip: in-memory records for the same input vs the CSV read back.
        const auto input = read_scenario_csv(dir / ("rep0_case" + std::to_string(c)) /
                                             ("scenario_case" + std::to_string(c) + ".csv"));
        LifetimeRun run{RunSettings{}};
        const auto recs = drive(run, std::span<const HourlyInterval>(input));
        const auto path = dir / ("roundtrip" + std::to_string(c) + ".csv");
        write_run_csv(recs, path);
        const auto back = read_run_csv(path);
        o.require(back.size() == recs.size(), "row count preserved");
        for (std::size_t i = 0; i < std::min(back.size(), recs.size()); ++i) {
            for (auto [a, b] : {std::pair{back[i].hotspot_temp, recs[i].hotspot_temp},
                                std::pair{back[i].aging_factor, recs[i].aging_factor},
                                std::pair{back[i].interval_loss, recs[i].interval_loss},
                                std::pair{back[i].cma, recs[i].cma},
                                std::pair{back[i].estimate_total_years, recs[i].estimate_total_years}}) {
                worst = std::max(worst, relative_error(a, b));
            }
            o.require(back[i].hour_index == recs[i].hour_index && back[i].converged == recs[i].converged,
                      "integer columns equal");
        }
        // The synthesized series survive their own CSV round trip too.
        const auto scenario = synthesize(ScenarioSpec::for_case(c, acceptance_seed));
        for (std::size_t h = 0; h < input.size(); ++h) {
            worst = std::max(worst, relative_error(input[h].interval.ambient_temp, scenario.ambient[h]));
            worst = std::max(worst,
                             relative_error(input[h].interval.load_ratio_ultimate, scenario.load[h].ultimate));
        }
    }
    o.detail << files << " CSV pairs byte-identical; max round-trip rel err " << worst;
    o.require(worst <= 1e-9, "round trip within 1e-9");
}

void resumability(Outcome& o) {
    const auto scenario = synthesize(ScenarioSpec::for_case(3, acceptance_seed));
    const auto input = number_hours(scenario.intervals());
    const std::span<const HourlyInterval> all(input);

    LifetimeRun whole{RunSettings{}};
    const auto expected = drive(whole, all);

    TempDir dir;
    LifetimeRun first{RunSettings{}};
    auto records = drive(first, all.first(4000));
    write_snapshot(first.snapshot(), dir / "snapshot.json");
    auto resumed = LifetimeRun::resume(RunSettings{}, read_snapshot(dir / "snapshot.json"));
    const auto rest = drive(resumed, all);
    records.insert(records.end(), rest.begin(), rest.end());

    o.detail << records.size() << " records after resuming at hour 4000";
    o.require(records.size() == expected.size(), "same record count");
    o.require(records == expected, "record streams identical");
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "AAF fixed point at 110 degC", 1.0, aaf_fixed_point},
        {2, "Arrhenius consistency", 1.0, arrhenius_consistency},
        {3, "Rated-load fixed points", 1.0, rated_fixed_points},
        {4, "Normal-life reproduction", 5.0, normal_life},
        {5, "Streaming/batch CMA equivalence", 10.0, streaming_batch},
        {6, "Equivalent aging vs summed loss", 5.0, eqa_consistency},
        {7, "Case ordering and convergence", 30.0, case_ordering},
        {8, "Transient correctness", 1.0, transient_correctness},
        {9, "Determinism and CSV round trip", 30.0, determinism_roundtrip},
        {10, "Resumability", 10.0, resumability},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.body(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char budget[64];
        std::snprintf(budget, sizeof budget, "%.3fs of %.0fs", secs, c.budget_seconds);
        o.require(secs < c.budget_seconds, "runtime budget");
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title << " ("
                  << budget << ") - " << o.detail.str() << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
