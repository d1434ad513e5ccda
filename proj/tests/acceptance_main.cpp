// Acceptance suite: every criterion prints one [PASS]/[FAIL] line; the
// process exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pvwatch/assess.hpp"
#include "pvwatch/evaluate.hpp"
#include "pvwatch/fsm.hpp"
#include "pvwatch/fuzzy.hpp"
#include "pvwatch/learn.hpp"
#include "pvwatch/performance.hpp"
#include "pvwatch/simulate.hpp"

using namespace pvwatch;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void note(const std::string& text) { g_notes.push_back(text); }

void report(int criterion, const std::string& name, bool ok) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, name.c_str());
  for (const auto& line : g_notes) {
    std::printf("       %s\n", line.c_str());
  }
  g_notes.clear();
  if (!ok) {
    ++g_failures;
  }
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// ---------------------------------------------------------------- criterion 1

bool error_rate_goldens() {
  const auto start = Clock::now();
  struct Golden {
    const char* facility;
    ConfusionMatrix cm;  // tp, fp, tn, fn
    double model_error_no_alert;
    double use_error_alert;
    double total_error;
  };
  // published percentages per facility: model error of the no-alert row,
  // use error of the alert column, total error
  const std::vector<Golden> goldens{
      {"I1", {6, 0, 284, 2}, 0.699, 25.0, 0.685},
      {"I4", {74, 0, 183, 35}, 16.05, 32.11, 11.98},
      {"I5", {215, 0, 68, 9}, 11.69, 4.02, 3.08},
      {"I6", {74, 0, 184, 34}, 15.60, 31.48, 11.64},
  };
  const double tolerance = 0.005;  // percentage points
  bool ok = true;
  for (const auto& golden : goldens) {
    const auto rates = error_rates(golden.cm);
    const struct {
      const char* name;
      double computed;
      double published;
    } checks[] = {
        {"model error (no alert)", rates.model_error_no_alert.value * 100,
         golden.model_error_no_alert},
        {"use error (alert)", rates.use_error_alert.value * 100, golden.use_error_alert},
        {"total error", rates.total_error.value * 100, golden.total_error},
    };
    for (const auto& check : checks) {
      const double diff = std::abs(check.computed - check.published);
      if (diff > tolerance) {
        ok = false;
        char buf[200];
        std::snprintf(buf, sizeof(buf),
                      "%s %s: computed %.6f%% vs reference %.3f%% (|diff| %.6f > %.3f)",
                      golden.facility, check.name, check.computed, check.published, diff,
                      tolerance);
        note(buf);
        if (std::floor(check.computed * 100) / 100 == check.published) {
          note("  (the exact value truncates to the reference figure; the reference "
               "table truncated where this tolerance assumes rounding)");
        }
      }
    }
  }
  // the two quiet facilities: a full year of true negatives, all zero rates
  const auto quiet = error_rates(ConfusionMatrix{0, 0, 292, 0});
  ok = ok && quiet.model_error_no_alert.defined && quiet.model_error_no_alert.value == 0.0 &&
       quiet.use_error_no_alert.value == 0.0 && quiet.total_error.value == 0.0;
  const double elapsed = seconds_since(start);
  if (elapsed >= 1.0) {
    ok = false;
    note("runtime bound exceeded: " + std::to_string(elapsed) + "s");
  }
  return ok;
}

// ---------------------------------------------------------------- criterion 2

bool fsm_golden_trace() {
  const std::vector<std::optional<PerformanceLabel>> labels{
      PerformanceLabel::B, PerformanceLabel::LA, PerformanceLabel::S};
  const auto trace = run_trace(FacilityState::NRC, labels);
  bool ok = trace == std::vector<FacilityState>{FacilityState::KO, FacilityState::SBC,
                                                FacilityState::OK};

  const double y_values[] = {0.88, 0.0, 0.98, 1.0};
  const PerformanceLabel expected[] = {PerformanceLabel::LA, PerformanceLabel::B,
                                       PerformanceLabel::LA, PerformanceLabel::S};
  for (int i = 0; i < 4; ++i) {
    ok = ok && linguistic_label(y_values[i]) == expected[i];
  }
  return ok;
}

// ---------------------------------------------------------------- criterion 3

bool transition_totality() {
  using S = FacilityState;
  const S states[] = {S::OK, S::NRC, S::SBC, S::KO};
  const PerformanceLabel labels[] = {PerformanceLabel::B, PerformanceLabel::VA,
                                     PerformanceLabel::A, PerformanceLabel::LA,
                                     PerformanceLabel::S};
  const S expected[4][5] = {
      {S::KO, S::SBC, S::NRC, S::NRC, S::OK},
      {S::KO, S::SBC, S::SBC, S::NRC, S::OK},
      {S::KO, S::KO, S::SBC, S::NRC, S::OK},
      {S::KO, S::KO, S::KO, S::SBC, S::NRC},
  };
  int checked = 0;
  bool ok = true;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 5; ++c) {
      ok = ok && step(states[r], labels[c]) == expected[r][c];
      ++checked;
    }
  }
  return ok && checked == 20;
}

// ---------------------------------------------------------------- criterion 4

bool interval_swap_golden() {
  // delta samples with the raw bounds inverted
  PairSamples samples;
  samples.incorrect_correct = {-14.0, -12.550};
  samples.correct_correct = {-15.0, -21.662};
  const auto raw = raw_interval(samples);
  bool ok = raw.a.has_value() && raw.b.has_value() && *raw.a == -12.550 && *raw.b == -21.662;
  const auto resolved = resolve_inconsistency(*raw.a, *raw.b, samples);
  ok = ok && resolved.swapped && resolved.a == -21.662 && resolved.b == -12.550;

  // the same inversion flows through full training on an engineered series
  FacilityRegistry registry;
  registry.schedule("F1").add(Date{2019, 1, 1}, 100.0);
  registry.schedule("F2").add(Date{2019, 1, 1}, 100.0);
  std::vector<ProductionRecord> records;
  DayLabelSet labels;
  // F2 holds 100; F1's sum is 100 + delta, making delta_12 = rho1 - 100
  const struct {
    double f1_sum;
    DayLabel f1_label;
  } days[] = {
      {100.0 - 21.662, DayLabel::Correct},
      {100.0 - 15.0, DayLabel::Correct},
      {100.0 - 12.550, DayLabel::Incorrect},
      {100.0 - 14.0, DayLabel::Incorrect},
  };
  Date date{2019, 6, 1};
  for (const auto& day : days) {
    for (int h = 0; h < 24; ++h) {
      records.push_back(ProductionRecord{"F1", date, h, day.f1_sum / 24.0});
      records.push_back(ProductionRecord{"F2", date, h, 100.0 / 24.0});
    }
    labels.set("F1", date, day.f1_label);
    labels.set("F2", date, DayLabel::Correct);
    date = date.next();
  }
  const auto series = build_daily_series(records, registry, 20);
  const auto model = learn_intervals(series, labels);
  const auto& pair = model.pair("F1", "F2");
  ok = ok && pair.provenance == Provenance::Swapped;
  ok = ok && std::abs(pair.a - (-21.662)) < 1e-9 && std::abs(pair.b - (-12.550)) < 1e-9;
  if (!ok) {
    note("resolved [" + std::to_string(resolved.a) + ", " + std::to_string(resolved.b) + "]");
  }
  return ok;
}

// ---------------------------------------------------------------- criterion 5

bool owa_property_suite() {
  const auto start = Clock::now();
  std::mt19937_64 rng(2020);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto weights = drop_extremes_weights(5);
  const double tolerance = 1e-12;
  bool ok = true;
  for (int trial = 0; trial < 10000 && ok; ++trial) {
    std::vector<double> values(5);
    for (auto& v : values) v = unit(rng);

    const double y = owa(values, weights);
    const double lo = *std::min_element(values.begin(), values.end());
    const double hi = *std::max_element(values.begin(), values.end());
    ok = ok && y >= lo - tolerance && y <= hi + tolerance;

    // idempotency on the constant vector built from this trial's first draw
    const std::vector<double> constant(5, values[0]);
    ok = ok && std::abs(owa(constant, weights) - values[0]) <= tolerance;

    // permutation symmetry
    std::vector<double> shuffled = values;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    ok = ok && std::abs(owa(shuffled, weights) - y) <= tolerance;

    // ties: duplicating a value must not disturb the ordering's result
    std::vector<double> tied = values;
    tied[1] = tied[3];
    const double tied_result = owa(tied, weights);
    std::shuffle(tied.begin(), tied.end(), rng);
    ok = ok && std::abs(owa(tied, weights) - tied_result) <= tolerance;
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 5.0) {
    ok = false;
    note("runtime bound exceeded: " + std::to_string(elapsed) + "s");
  }
  return ok;
}

// ---------------------------------------------------------------- criterion 6

bool membership_property_suite() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> bound(-80.0, 40.0);
  std::uniform_real_distribution<double> point(-150.0, 150.0);
  bool ok = true;
  for (int trial = 0; trial < 1000 && ok; ++trial) {
    double a = bound(rng), b = bound(rng);
    if (a > b) std::swap(a, b);
    const bool step_shape = trial % 4 == 0;
    if (step_shape) a = b;
    const auto f = MembershipFunction::from_interval(a, b);

    double x1 = point(rng), x2 = point(rng);
    if (x1 > x2) std::swap(x1, x2);
    const double m1 = f(x1), m2 = f(x2);
    ok = ok && m1 <= m2 && m1 >= 0.0 && m1 <= 1.0 && m2 >= 0.0 && m2 <= 1.0;

    ok = ok && f(b) == 1.0;
    if (!step_shape) {
      ok = ok && f(a) == 0.0;
    } else {
      ok = ok && f(std::nextafter(b, -1e9)) == 0.0;
    }
  }
  return ok;
}

// ----------------------------------------------------- shared synthetic fleet

FleetSpec acceptance_fleet() {
  FleetSpec spec;
  spec.facilities = {
      {"F1", 64.0, 0.92}, {"F2", 32.0, 0.95}, {"F3", 128.0, 0.88},
      {"F4", 64.0, 0.90}, {"F5", 32.0, 0.93}, {"F6", 64.0, 0.85},
  };
  spec.start = Date{2023, 1, 1};
  spec.days = 365;
  spec.seed = 20230101;
  spec.day_factor_lo = 0.55;
  spec.day_factor_hi = 1.0;
  spec.noise_sd = 0.05;
  return spec;
}

struct FaultScenario {
  FleetSpec spec;
  Fleet fleet;              // with the training fault and the live fault
  Date train_from, train_to;
  Date fault_onset;
  Date assess_from, assess_to;
};

FaultScenario build_fault_scenario() {
  FaultScenario s;
  s.spec = acceptance_fleet();
  s.train_from = s.spec.start;                      // day 1
  s.train_to = s.spec.start.plus_days(179);         // day 180
  s.fault_onset = s.spec.start.plus_days(199);      // day 200
  s.assess_from = s.spec.start.plus_days(180);      // day 181
  s.assess_to = s.spec.start.plus_days(364);        // day 365

  Fleet fleet = generate_fleet(s.spec);

  // ten incorrect training days in total: a five-day loss on the facility
  // that will later fail, and one day on each of the others so every pair
  // learns a proper anomalous bound
  FaultSpec training_fault;
  training_fault.kind = FaultSpec::Kind::ConstantLoss;
  training_fault.fraction = 0.30;
  training_fault.facility = "F1";
  training_fault.from = s.spec.start.plus_days(119);
  training_fault.to = s.spec.start.plus_days(123);
  fleet = inject_fault(fleet, training_fault, 1);
  for (int i = 2; i <= 6; ++i) {
    training_fault.facility = "F" + std::to_string(i);
    training_fault.from = s.spec.start.plus_days(123 + 2 * i);
    training_fault.to = training_fault.from;
    fleet = inject_fault(fleet, training_fault, static_cast<std::uint64_t>(i));
  }

  // the live fault under test: a quiet 20% constant loss from day 200 on
  FaultSpec live_fault;
  live_fault.facility = "F1";
  live_fault.kind = FaultSpec::Kind::ConstantLoss;
  live_fault.fraction = 0.20;
  live_fault.from = s.fault_onset;
  fleet = inject_fault(fleet, live_fault, 2);

  s.fleet = std::move(fleet);
  return s;
}

DailySeries scenario_series(const FaultScenario& s, Date clip_to) {
  FacilityRegistry registry;
  for (const auto& f : s.spec.facilities) {
    registry.schedule(f.id).add(s.spec.start, f.peak_power_kw);
  }
  std::vector<ProductionRecord> records;
  for (const auto& record : s.fleet.records) {
    if (record.date <= clip_to) {
      records.push_back(record);
    }
  }
  return build_daily_series(records, registry, 20);
}

// ---------------------------------------------------------------- criterion 7

bool synthetic_fault_detection() {
  const auto start = Clock::now();
  const auto s = build_fault_scenario();

  const auto training_series = scenario_series(s, s.train_to);
  const auto model = learn_intervals(training_series, s.fleet.labels);

  const auto series = scenario_series(s, s.assess_to);
  StateFile states;
  const auto assessments = assess_range(model, series, s.assess_from, s.assess_to, states);

  const double elapsed = seconds_since(start);

  // ground truth from the injection log: incorrect-labeled training days
  int incorrect_training_days = 0;
  for (const auto& facility : s.spec.facilities) {
    for (Date d = s.train_from; d <= s.train_to; d = d.next()) {
      if (s.fleet.labels.get(facility.id, d) == DayLabel::Incorrect) {
        ++incorrect_training_days;
      }
    }
  }
  bool ok = incorrect_training_days == 10;
  if (incorrect_training_days != 10) {
    note("expected 10 incorrect training days, found " +
         std::to_string(incorrect_training_days));
  }

  // (a) alert on the faulted facility within 3 days of onset
  bool alerted_in_time = false;
  Date first_alert{1970, 1, 1};
  for (const auto& assessment : assessments) {
    for (const auto& fa : assessment.facilities) {
      if (fa.facility == "F1" && fa.alert) {
        if (!alerted_in_time) {
          first_alert = assessment.date;
        }
        alerted_in_time = alerted_in_time ||
                          (assessment.date >= s.fault_onset &&
                           assessment.date - s.fault_onset < 3);
      }
    }
  }
  ok = ok && alerted_in_time;
  if (!alerted_in_time) {
    note("no alert on F1 within 3 days of onset");
  } else {
    note("first F1 alert on " + first_alert.to_string() + " (onset " +
         s.fault_onset.to_string() + ")");
  }

  // no false alarm on F1 before the onset
  for (const auto& assessment : assessments) {
    for (const auto& fa : assessment.facilities) {
      if (fa.facility == "F1" && assessment.date < s.fault_onset && fa.alert) {
        ok = false;
        note("premature F1 alert on " + assessment.date.to_string());
      }
    }
  }

  // closed-form oracle: with the day factor cancelling, a 20% loss moves
  // delta_1k from (g1-gk)/max*100 to (0.8*g1-gk)/max*100; pushing those
  // noise-free deltas through the learned memberships must aggregate below
  // the very-anomalous bound, and the observed onset days must track it
  {
    std::vector<double> oracle_row;
    const double g1 = s.spec.facilities[0].efficiency_gain;
    for (std::size_t k = 1; k < s.spec.facilities.size(); ++k) {
      const double gk = s.spec.facilities[k].efficiency_gain;
      const double faulted_delta =
          (0.8 * g1 - gk) / std::max(0.8 * g1, gk) * 100.0;
      oracle_row.push_back(
          model.membership("F1", s.spec.facilities[k].id)(faulted_delta));
    }
    const double y_oracle =
        owa(oracle_row, drop_extremes_weights(static_cast<int>(oracle_row.size())));
    if (y_oracle >= 0.45) {
      ok = false;
      note("oracle aggregate not anomalous: " + std::to_string(y_oracle));
    }
    double min_observed = 1.0;
    for (const auto& assessment : assessments) {
      if (assessment.date < s.fault_onset || assessment.date - s.fault_onset >= 3) continue;
      for (const auto& fa : assessment.facilities) {
        if (fa.facility == "F1" && fa.y) {
          min_observed = std::min(min_observed, *fa.y);
        }
      }
    }
    if (min_observed >= 0.45) {
      ok = false;
      note("onset-window aggregate never dropped below 0.45 (min " +
           std::to_string(min_observed) + ", oracle " + std::to_string(y_oracle) + ")");
    }
  }

  // (b) zero alerts on the un-faulted facilities over the whole range
  for (const auto& assessment : assessments) {
    for (const auto& fa : assessment.facilities) {
      if (fa.facility != "F1" && fa.alert) {
        ok = false;
        note("false alert on " + fa.facility + " at " + assessment.date.to_string());
      }
    }
  }

  // (c) the full pipeline stays under a second
  if (elapsed >= 1.0) {
    ok = false;
    note("runtime bound exceeded: " + std::to_string(elapsed) + "s");
  }
  return ok;
}

// ---------------------------------------------------------------- criterion 8

bool scale_invariance() {
  const auto s = build_fault_scenario();
  const Date assess_to = s.spec.start.plus_days(259);  // two months past onset

  auto run = [&](double factor) {
    FaultScenario scaled = s;
    for (auto& record : scaled.fleet.records) {
      record.energy_kwh *= factor;
    }
    const auto training_series = scenario_series(scaled, scaled.train_to);
    const auto model = learn_intervals(training_series, scaled.fleet.labels);
    const auto series = scenario_series(scaled, assess_to);
    StateFile states;
    return assess_range(model, series, scaled.assess_from, assess_to, states);
  };

  const auto baseline = run(1.0);
  bool ok = !baseline.empty();
  for (const double factor : {0.5, 2.0, 10.0}) {
    const auto scaled = run(factor);
    if (scaled.size() != baseline.size()) {
      ok = false;
      note("assessment count changed under factor " + std::to_string(factor));
      continue;
    }
    for (std::size_t d = 0; d < baseline.size() && ok; ++d) {
      const auto& b = baseline[d];
      const auto& x = scaled[d];
      const std::size_t n = b.delta.size();
      for (std::size_t i = 0; i < n && ok; ++i) {
        for (std::size_t k = 0; k < n && ok; ++k) {
          if (b.delta.valid(i, k) != x.delta.valid(i, k) ||
              (b.delta.valid(i, k) && b.delta.at(i, k) != x.delta.at(i, k))) {
            ok = false;
            note("delta cell differs under factor " + std::to_string(factor) + " on " +
                 b.date.to_string());
          }
        }
      }
      for (std::size_t i = 0; i < b.facilities.size() && ok; ++i) {
        const auto& fb = b.facilities[i];
        const auto& fx = x.facilities[i];
        if (fb.y != fx.y || fb.label != fx.label || fb.new_state != fx.new_state ||
            fb.alert != fx.alert) {
          ok = false;
          note("assessment differs for " + fb.facility + " under factor " +
               std::to_string(factor) + " on " + b.date.to_string());
        }
      }
    }
  }
  return ok;
}

// ---------------------------------------------------------------- criterion 9

bool determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "pvwatch_acceptance";
  std::filesystem::create_directories(dir);

  auto run = [&](const std::string& tag) {
    const auto s = build_fault_scenario();
    const auto training_series = scenario_series(s, s.train_to);
    const auto model = learn_intervals(training_series, s.fleet.labels);
    const std::string model_path = (dir / ("model_" + tag + ".json")).string();
    model.save(model_path);

    const auto series = scenario_series(s, s.assess_to);
    const std::string state_path = (dir / ("state_" + tag + ".json")).string();
    std::filesystem::remove(state_path);
    auto states = StateFile::load(state_path);
    const auto assessments = assess_range(model, series, s.assess_from, s.assess_to, states);
    states.save(state_path);

    std::string report;
    for (const auto& assessment : assessments) {
      report += render_report(assessment);
    }
    const std::string report_path = (dir / ("report_" + tag + ".txt")).string();
    std::ofstream(report_path) << report;

    auto slurp = [](const std::string& path) {
      std::ifstream in(path);
      return std::string((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
    };
    return std::make_tuple(slurp(model_path), slurp(state_path), slurp(report_path));
  };

  const auto first = run("a");
  const auto second = run("b");
  bool ok = !std::get<0>(first).empty() && !std::get<1>(first).empty() &&
            !std::get<2>(first).empty();
  if (std::get<0>(first) != std::get<0>(second)) {
    ok = false;
    note("model files differ between runs");
  }
  if (std::get<1>(first) != std::get<1>(second)) {
    ok = false;
    note("state files differ between runs");
  }
  if (std::get<2>(first) != std::get<2>(second)) {
    ok = false;
    note("report files differ between runs");
  }
  std::filesystem::remove_all(dir);
  return ok;
}

}  // namespace

int main() {
  report(1, "error-rate golden values at +/-0.005 percentage points", error_rate_goldens());
  report(2, "state-machine golden trace", fsm_golden_trace());
  report(3, "transition-table totality (20 cells)", transition_totality());
  report(4, "interval inconsistency exchange golden", interval_swap_golden());
  report(5, "OWA property suite (10000 vectors)", owa_property_suite());
  report(6, "membership property suite (1000 functions)", membership_property_suite());
  report(7, "end-to-end synthetic fault detection", synthetic_fault_detection());
  report(8, "scale invariance under x0.5, x2, x10", scale_invariance());
  report(9, "byte-identical model, state and report files", determinism());

  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
