#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pvwatch/assess.hpp"
#include "pvwatch/config.hpp"
#include "pvwatch/evaluate.hpp"
#include "pvwatch/fsm.hpp"
#include "pvwatch/ingest.hpp"
#include "pvwatch/learn.hpp"
#include "pvwatch/simulate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitAlert = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot read '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write '" + path + "'");
  }
  out << content;
}

struct ConfigFlags {
  std::optional<std::string> config_path;
  std::optional<double> la_threshold;
  std::optional<double> a_threshold;
  std::optional<double> epsilon;
  std::optional<int> min_hours;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file");
    cmd->add_option("--la-threshold", la_threshold, "lower bound of the LA label region");
    cmd->add_option("--a-threshold", a_threshold, "lower bound of the A label region");
    cmd->add_option("--epsilon", epsilon, "tolerance for the exact S/B label boundaries");
    cmd->add_option("--min-hours", min_hours, "fewest hourly readings for a usable day");
  }

  pvwatch::Config resolve() const {
    pvwatch::Config config;
    if (config_path) {
      config = pvwatch::Config::load(*config_path);
    }
    if (la_threshold) config.thresholds.lightly_anomalous = *la_threshold;
    if (a_threshold) config.thresholds.anomalous = *a_threshold;
    if (epsilon) config.thresholds.epsilon = *epsilon;
    if (min_hours) config.min_hours = *min_hours;
    config.validate();
    return config;
  }
};

pvwatch::DailySeries load_series(const std::string& production_path,
                                 const std::string& facilities_path, int min_hours) {
  std::ifstream facilities(facilities_path);
  if (!facilities) {
    throw std::runtime_error("cannot read '" + facilities_path + "'");
  }
  const auto registry = pvwatch::parse_facility_config(facilities);

  std::ifstream production(production_path);
  if (!production) {
    throw std::runtime_error("cannot read '" + production_path + "'");
  }
  const auto parsed = pvwatch::parse_production_csv(production);
  if (parsed.duplicate_warnings > 0) {
    std::cerr << "warning: " << parsed.duplicate_warnings
              << " duplicate production record(s) resolved last-write-wins\n";
  }
  return pvwatch::build_daily_series(parsed.records, registry, min_hours);
}

pvwatch::DayLabelSet load_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot read '" + path + "'");
  }
  return pvwatch::parse_day_labels(in);
}

// Restricts a series to [from, to] by re-building from the matching records.
pvwatch::DailySeries clip_series(const pvwatch::DailySeries& series,
                                 std::optional<pvwatch::Date> from,
                                 std::optional<pvwatch::Date> to) {
  if (!from && !to) {
    return series;
  }
  std::vector<pvwatch::ProductionRecord> records;
  for (const auto& facility : series.facilities()) {
    for (const auto& date : series.dates()) {
      if ((from && date < *from) || (to && date > *to)) {
        continue;
      }
      const auto* slots = series.day_slots(facility, date);
      if (slots == nullptr) {
        continue;
      }
      for (int hour = 0; hour < 24; ++hour) {
        if ((*slots)[hour]) {
          records.push_back(pvwatch::ProductionRecord{facility, date, hour, *(*slots)[hour]});
        }
      }
    }
  }
  return pvwatch::build_daily_series(records, series.registry(), series.min_hours());
}

int run(int argc, char** argv) {
  CLI::App app{"Comparative anomaly detection for co-located photovoltaic fleets"};
  app.require_subcommand(1);

  // learn
  auto* learn_cmd = app.add_subcommand("learn", "train an interval model from labeled history");
  std::string learn_production, learn_facilities, learn_labels, learn_model;
  std::string learn_from, learn_to;
  ConfigFlags learn_flags;
  learn_cmd->add_option("--production", learn_production, "production CSV")->required();
  learn_cmd->add_option("--facilities", learn_facilities, "facility config CSV")->required();
  learn_cmd->add_option("--labels", learn_labels, "day label CSV")->required();
  learn_cmd->add_option("--model", learn_model, "output model JSON")->required();
  learn_cmd->add_option("--from", learn_from, "first training day (YYYY-MM-DD)");
  learn_cmd->add_option("--to", learn_to, "last training day (YYYY-MM-DD)");
  learn_flags.attach(learn_cmd);

  // assess
  auto* assess_cmd = app.add_subcommand("assess", "assess one day or a range of days");
  std::string assess_production, assess_facilities, assess_model, assess_state, assess_out;
  std::string assess_from, assess_to;
  bool assess_print = false;
  ConfigFlags assess_flags;
  assess_cmd->add_option("--production", assess_production, "production CSV")->required();
  assess_cmd->add_option("--facilities", assess_facilities, "facility config CSV")->required();
  assess_cmd->add_option("--model", assess_model, "model JSON")->required();
  assess_cmd->add_option("--state", assess_state, "state file (JSON)")->required();
  assess_cmd->add_option("--from", assess_from, "first day (YYYY-MM-DD)")->required();
  assess_cmd->add_option("--to", assess_to, "last day (defaults to --from)");
  assess_cmd->add_option("--assessments", assess_out, "output assessments JSON");
  assess_cmd->add_flag("--print", assess_print, "also print the daily reports");
  assess_flags.attach(assess_cmd);

  // report
  auto* report_cmd = app.add_subcommand("report", "render text from stored assessments");
  std::string report_in, report_date;
  report_cmd->add_option("--assessments", report_in, "assessments JSON")->required();
  report_cmd->add_option("--date", report_date, "only this day (YYYY-MM-DD)");

  // evaluate
  auto* eval_cmd = app.add_subcommand("evaluate", "confusion matrices against ground truth");
  std::string eval_in, eval_truth, eval_out;
  bool eval_text = false;
  eval_cmd->add_option("--assessments", eval_in, "assessments JSON")->required();
  eval_cmd->add_option("--truth", eval_truth, "ground-truth alert CSV")->required();
  eval_cmd->add_option("--out", eval_out, "output report JSON");
  eval_cmd->add_flag("--text", eval_text, "print aligned text tables");

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "generate a synthetic fleet");
  std::string sim_fleet, sim_production, sim_labels, sim_facilities;
  std::optional<std::uint64_t> sim_seed;
  sim_cmd->add_option("--fleet", sim_fleet, "fleet spec JSON")->required();
  sim_cmd->add_option("--production-out", sim_production, "output production CSV")->required();
  sim_cmd->add_option("--labels-out", sim_labels, "output label CSV")->required();
  sim_cmd->add_option("--facilities-out", sim_facilities, "output facility config CSV");
  sim_cmd->add_option("--seed", sim_seed, "override the spec's seed");

  // plot-data
  auto* plot_cmd = app.add_subcommand("plot-data", "daily performance CSV for plotting");
  std::string plot_production, plot_facilities, plot_from, plot_to, plot_out;
  ConfigFlags plot_flags;
  plot_cmd->add_option("--production", plot_production, "production CSV")->required();
  plot_cmd->add_option("--facilities", plot_facilities, "facility config CSV")->required();
  plot_cmd->add_option("--from", plot_from, "first day (YYYY-MM-DD)")->required();
  plot_cmd->add_option("--to", plot_to, "last day (YYYY-MM-DD)")->required();
  plot_cmd->add_option("--out", plot_out, "output CSV (stdout when omitted)");
  plot_flags.attach(plot_cmd);

  CLI11_PARSE(app, argc, argv);

  if (learn_cmd->parsed()) {
    const auto config = learn_flags.resolve();
    auto series = load_series(learn_production, learn_facilities, config.min_hours);
    const auto labels = load_labels(learn_labels);
    std::optional<pvwatch::Date> from, to;
    if (!learn_from.empty()) from = pvwatch::Date::parse(learn_from);
    if (!learn_to.empty()) to = pvwatch::Date::parse(learn_to);
    series = clip_series(series, from, to);
    const auto model = pvwatch::learn_intervals(series, labels);
    model.save(learn_model);
    std::cout << "trained " << model.facilities().size() << " facilities ("
              << model.trained_from().to_string() << " to " << model.trained_to().to_string()
              << "), model written to " << learn_model << '\n';
    return kExitOk;
  }

  if (assess_cmd->parsed()) {
    const auto config = assess_flags.resolve();
    const auto series = load_series(assess_production, assess_facilities, config.min_hours);
    const auto model = pvwatch::IntervalModel::load(assess_model);
    const pvwatch::Date from = pvwatch::Date::parse(assess_from);
    const pvwatch::Date to = assess_to.empty() ? from : pvwatch::Date::parse(assess_to);
    auto states = pvwatch::StateFile::load(assess_state);
    const auto assessments = pvwatch::assess_range(model, series, from, to, states, config);
    states.save(assess_state);
    if (!assess_out.empty()) {
      write_file(assess_out, pvwatch::assessments_to_json(assessments));
    }
    bool any_alert = false;
    for (const auto& assessment : assessments) {
      if (assess_print) {
        std::cout << pvwatch::render_report(assessment);
      }
      for (const auto& fa : assessment.facilities) {
        any_alert = any_alert || fa.alert;
      }
    }
    if (!assess_print) {
      std::cout << "assessed " << assessments.size() << " day(s); "
                << (any_alert ? "alerts raised" : "no alerts") << '\n';
    }
    return any_alert ? kExitAlert : kExitOk;
  }

  if (report_cmd->parsed()) {
    const auto assessments = pvwatch::assessments_from_json(read_file(report_in));
    bool any_alert = false;
    bool printed = false;
    for (const auto& assessment : assessments) {
      if (!report_date.empty() &&
          assessment.date != pvwatch::Date::parse(report_date)) {
        continue;
      }
      std::cout << pvwatch::render_report(assessment);
      printed = true;
      for (const auto& fa : assessment.facilities) {
        any_alert = any_alert || fa.alert;
      }
    }
    if (!printed && !report_date.empty()) {
      throw std::runtime_error("no stored assessment for " + report_date);
    }
    return any_alert ? kExitAlert : kExitOk;
  }

  if (eval_cmd->parsed()) {
    const auto assessments = pvwatch::assessments_from_json(read_file(eval_in));
    std::ifstream truth_in(eval_truth);
    if (!truth_in) {
      throw std::runtime_error("cannot read '" + eval_truth + "'");
    }
    const auto truth = pvwatch::parse_alert_labels(truth_in);

    // Pair predicted states with truth per facility over the labeled days.
    std::map<std::string, pvwatch::EvaluationInput> inputs;
    for (const auto& assessment : assessments) {
      for (const auto& fa : assessment.facilities) {
        const auto it = truth.find({fa.facility, assessment.date});
        if (it == truth.end()) {
          continue;
        }
        auto& input = inputs[fa.facility];
        input.facility = fa.facility;
        input.predicted.push_back(fa.new_state);
        input.actual.push_back(it->second);
      }
    }
    std::vector<pvwatch::FacilityEvaluation> evaluations;
    for (const auto& [facility, input] : inputs) {
      evaluations.push_back(pvwatch::evaluate_facility(input));
    }
    if (!eval_out.empty()) {
      write_file(eval_out, pvwatch::evaluation_to_json(evaluations));
    }
    if (eval_text || eval_out.empty()) {
      for (const auto& evaluation : evaluations) {
        std::cout << pvwatch::render_rates_table(evaluation) << '\n';
      }
    }
    return kExitOk;
  }

  if (sim_cmd->parsed()) {
    std::vector<pvwatch::FaultSpec> faults;
    auto spec = pvwatch::fleet_spec_from_json(read_file(sim_fleet), &faults);
    if (sim_seed) {
      spec.seed = *sim_seed;
    }
    auto fleet = pvwatch::generate_fleet(spec);
    for (std::size_t i = 0; i < faults.size(); ++i) {
      fleet = pvwatch::inject_fault(fleet, faults[i], spec.seed + 1 + i);
    }
    write_file(sim_production, pvwatch::to_production_csv(fleet.records));
    write_file(sim_labels, pvwatch::to_label_csv(fleet.labels));
    if (!sim_facilities.empty()) {
      write_file(sim_facilities, pvwatch::to_facility_config_csv(spec.facilities, spec.start));
    }
    std::cout << "wrote " << fleet.records.size() << " records for "
              << spec.facilities.size() << " facilities over " << spec.days << " day(s)\n";
    return kExitOk;
  }

  if (plot_cmd->parsed()) {
    const auto config = plot_flags.resolve();
    const auto series = load_series(plot_production, plot_facilities, config.min_hours);
    const auto csv = pvwatch::emit_plot_data(series, series.registry(),
                                             pvwatch::Date::parse(plot_from),
                                             pvwatch::Date::parse(plot_to));
    if (plot_out.empty()) {
      std::cout << csv;
    } else {
      write_file(plot_out, csv);
    }
    return kExitOk;
  }

  return kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}
