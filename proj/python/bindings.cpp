#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <optional>
#include <sstream>

#include "pvwatch/assess.hpp"
#include "pvwatch/config.hpp"
#include "pvwatch/evaluate.hpp"
#include "pvwatch/fsm.hpp"
#include "pvwatch/fuzzy.hpp"
#include "pvwatch/ingest.hpp"
#include "pvwatch/learn.hpp"
#include "pvwatch/performance.hpp"
#include "pvwatch/simulate.hpp"

namespace py = pybind11;
using namespace pvwatch;

namespace {

// States and labels cross the boundary as their short string forms; that
// keeps the Python surface free of enum plumbing.
std::optional<PerformanceLabel> label_from_opt(const std::optional<std::string>& text) {
  if (!text) {
    return std::nullopt;
  }
  return label_from_string(*text);
}

DailySeries series_from_files(const std::string& production_csv,
                              const std::string& facilities_csv, int min_hours) {
  std::ifstream facilities(facilities_csv);
  if (!facilities) {
    throw std::runtime_error("cannot read '" + facilities_csv + "'");
  }
  const auto registry = parse_facility_config(facilities);
  std::ifstream production(production_csv);
  if (!production) {
    throw std::runtime_error("cannot read '" + production_csv + "'");
  }
  const auto parsed = parse_production_csv(production);
  return build_daily_series(parsed.records, registry, min_hours);
}

py::dict rate_to_dict(const Rate& rate) {
  py::dict out;
  out["defined"] = rate.defined;
  out["value"] = rate.defined ? py::cast(rate.value) : py::none();
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fuzzy comparative anomaly detection for co-located photovoltaic fleets";

  // performance
  m.def("relative_difference", &relative_difference, py::arg("rho_i"), py::arg("rho_k"),
        "Signed percent gap between two performances, normalized by their maximum.");

  // fuzzy
  py::class_<MembershipFunction>(m, "MembershipFunction")
      .def_static("from_interval", &MembershipFunction::from_interval, py::arg("a"),
                  py::arg("b"))
      .def("__call__", &MembershipFunction::operator())
      .def_property_readonly("a", &MembershipFunction::a)
      .def_property_readonly("b", &MembershipFunction::b)
      .def_property_readonly("is_step", [](const MembershipFunction& f) {
        return f.shape() == MembershipFunction::Shape::Step;
      });

  m.def(
      "drop_extremes_weights",
      [](int m_count) {
        const auto weights = drop_extremes_weights(m_count);
        return std::vector<double>(weights.values().begin(), weights.values().end());
      },
      py::arg("m"));

  m.def(
      "owa",
      [](const std::vector<double>& values, const std::vector<double>& weights) {
        return owa(values, OwaWeights(weights));
      },
      py::arg("values"), py::arg("weights"),
      "Ordered weighted average: values sorted descending, dotted with weights.");

  m.def(
      "linguistic_label",
      [](double y, double epsilon) {
        LabelThresholds thresholds;
        thresholds.epsilon = epsilon;
        return std::string(to_string(linguistic_label(y, thresholds)));
      },
      py::arg("y"), py::arg("epsilon") = 1e-9);

  // fsm
  m.def(
      "fsm_step",
      [](const std::string& state, const std::string& label) {
        return std::string(to_string(step(state_from_string(state), label_from_string(label))));
      },
      py::arg("state"), py::arg("label"));

  m.def(
      "run_trace",
      [](const std::string& initial, const std::vector<std::optional<std::string>>& labels) {
        std::vector<std::optional<PerformanceLabel>> seq;
        seq.reserve(labels.size());
        for (const auto& text : labels) {
          seq.push_back(label_from_opt(text));
        }
        const auto states = run_trace(state_from_string(initial), seq);
        std::vector<std::string> out;
        out.reserve(states.size());
        for (const auto state : states) {
          out.emplace_back(to_string(state));
        }
        return out;
      },
      py::arg("initial"), py::arg("labels"));

  m.def(
      "to_alert", [](const std::string& state) { return to_alert(state_from_string(state)); },
      py::arg("state"));

  // evaluate
  py::class_<ConfusionMatrix>(m, "ConfusionMatrix")
      .def(py::init([](std::int64_t tp, std::int64_t fp, std::int64_t tn, std::int64_t fn) {
             return ConfusionMatrix{tp, fp, tn, fn};
           }),
           py::arg("tp"), py::arg("fp"), py::arg("tn"), py::arg("fn"))
      .def_readonly("tp", &ConfusionMatrix::tp)
      .def_readonly("fp", &ConfusionMatrix::fp)
      .def_readonly("tn", &ConfusionMatrix::tn)
      .def_readonly("fn", &ConfusionMatrix::fn)
      .def("total", &ConfusionMatrix::total);

  m.def(
      "confusion_matrix",
      [](const std::vector<bool>& predicted, const std::vector<bool>& actual) {
        return confusion_matrix(predicted, actual);
      },
      py::arg("predicted"), py::arg("actual"));

  m.def(
      "error_rates",
      [](const ConfusionMatrix& cm) {
        const auto rates = error_rates(cm);
        py::dict out;
        out["model_error_no_alert"] = rate_to_dict(rates.model_error_no_alert);
        out["model_error_alert"] = rate_to_dict(rates.model_error_alert);
        out["use_error_no_alert"] = rate_to_dict(rates.use_error_no_alert);
        out["use_error_alert"] = rate_to_dict(rates.use_error_alert);
        out["total_error"] = rate_to_dict(rates.total_error);
        return out;
      },
      py::arg("cm"));

  // pipeline over files
  m.def(
      "learn_model",
      [](const std::string& production_csv, const std::string& facilities_csv,
         const std::string& labels_csv, int min_hours) {
        const auto series = series_from_files(production_csv, facilities_csv, min_hours);
        std::ifstream labels_in(labels_csv);
        if (!labels_in) {
          throw std::runtime_error("cannot read '" + labels_csv + "'");
        }
        const auto labels = parse_day_labels(labels_in);
        return learn_intervals(series, labels).to_json();
      },
      py::arg("production_csv"), py::arg("facilities_csv"), py::arg("labels_csv"),
      py::arg("min_hours") = 20,
      "Train an interval model from CSV files; returns the model as JSON text.");

  m.def(
      "assess",
      [](const std::string& model_json, const std::string& production_csv,
         const std::string& facilities_csv, const std::string& from, const std::string& to,
         int min_hours) {
        const auto series = series_from_files(production_csv, facilities_csv, min_hours);
        const auto model = IntervalModel::from_json(model_json);
        StateFile states;
        Config config;
        config.min_hours = min_hours;
        const auto assessments = assess_range(model, series, Date::parse(from), Date::parse(to),
                                              states, config);
        py::list out;
        for (const auto& assessment : assessments) {
          py::list facilities;
          for (const auto& fa : assessment.facilities) {
            py::dict d;
            d["facility"] = fa.facility;
            d["y"] = fa.y ? py::cast(*fa.y) : py::none();
            d["label"] = fa.label ? py::cast(std::string(to_string(*fa.label))) : py::none();
            d["prior_state"] = std::string(to_string(fa.prior_state));
            d["new_state"] = std::string(to_string(fa.new_state));
            d["alert"] = fa.alert;
            d["comparisons"] = fa.comparisons;
            facilities.append(d);
          }
          py::dict day;
          day["date"] = assessment.date.to_string();
          day["facilities"] = facilities;
          out.append(day);
        }
        return out;
      },
      py::arg("model_json"), py::arg("production_csv"), py::arg("facilities_csv"),
      py::arg("from_date"), py::arg("to_date"), py::arg("min_hours") = 20,
      "Run the daily detection pipeline over a date range (fresh machine state).");

  m.def(
      "daily_performance_csv",
      [](const std::string& production_csv, const std::string& facilities_csv,
         const std::string& from, const std::string& to, int min_hours) {
        const auto series = series_from_files(production_csv, facilities_csv, min_hours);
        return emit_plot_data(series, series.registry(), Date::parse(from), Date::parse(to));
      },
      py::arg("production_csv"), py::arg("facilities_csv"), py::arg("from_date"),
      py::arg("to_date"), py::arg("min_hours") = 20);

  m.attr("__version__") = "0.1.0";
}
