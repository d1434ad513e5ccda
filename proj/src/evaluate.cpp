#include "pvwatch/evaluate.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "csv.hpp"

namespace pvwatch {

ConfusionMatrix confusion_matrix(const std::vector<bool>& predicted,
                                 const std::vector<bool>& actual) {
  if (predicted.size() != actual.size()) {
    throw std::invalid_argument("predicted and actual sequences differ in length");
  }
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (predicted[i]) {
      (actual[i] ? cm.tp : cm.fp) += 1;
    } else {
      (actual[i] ? cm.fn : cm.tn) += 1;
    }
  }
  return cm;
}

namespace {

Rate ratio(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) {
    return Rate{0, false};
  }
  return Rate{static_cast<double>(numerator) / static_cast<double>(denominator), true};
}

}  // namespace

ErrorRates error_rates(const ConfusionMatrix& cm) {
  ErrorRates rates;
  rates.model_error_no_alert = ratio(cm.fn, cm.fn + cm.tn);
  rates.model_error_alert = ratio(cm.fp, cm.fp + cm.tp);
  rates.use_error_no_alert = ratio(cm.fp, cm.tn + cm.fp);
  rates.use_error_alert = ratio(cm.fn, cm.fn + cm.tp);
  rates.total_error = ratio(cm.fn + cm.fp, cm.total());
  return rates;
}

AlertTruth parse_alert_labels(std::istream& in) {
  std::size_t line_no = 0;
  csv::expect_header(in, "facility,date,label", line_no);

  AlertTruth truth;
  std::string line;
  while (csv::next_line(in, line, line_no)) {
    if (line.empty()) {
      continue;
    }
    const auto fields = csv::split(line);
    if (fields.size() != 3) {
      throw ParseError(line_no, "expected 3 columns, got " + std::to_string(fields.size()));
    }
    const Date date = csv::parse_date(fields[1], line_no);
    bool alert;
    if (fields[2] == "alert") {
      alert = true;
    } else if (fields[2] == "no-alert") {
      alert = false;
    } else {
      throw ParseError(line_no, "label must be 'alert' or 'no-alert', got '" + fields[2] + "'");
    }
    const auto key = std::make_pair(fields[0], date);
    const auto it = truth.find(key);
    if (it != truth.end() && it->second != alert) {
      throw ParseError(line_no, "conflicting label for " + fields[0] + " on " + date.to_string());
    }
    truth[key] = alert;
  }
  return truth;
}

FacilityEvaluation evaluate_facility(const EvaluationInput& input) {
  if (input.predicted.size() != input.actual.size()) {
    throw std::invalid_argument("predicted and actual sequences differ in length");
  }
  std::vector<bool> predicted_alert(input.predicted.size());
  for (std::size_t i = 0; i < input.predicted.size(); ++i) {
    predicted_alert[i] = to_alert(input.predicted[i]);
  }

  FacilityEvaluation out;
  out.facility = input.facility;
  out.cm = confusion_matrix(predicted_alert, input.actual);
  out.rates = error_rates(out.cm);

  for (std::size_t i = 0; i < input.predicted.size(); ++i) {
    if (!predicted_alert[i] && input.actual[i] && input.predicted[i] == FacilityState::NRC) {
      ++out.fn_while_nrc;
    }
  }
  out.adjusted_total_error =
      out.cm.total() == 0
          ? Rate{0, false}
          : Rate{static_cast<double>(out.cm.fn - out.fn_while_nrc + out.cm.fp) /
                     static_cast<double>(out.cm.total()),
                 true};
  return out;
}

std::string format_rate(const Rate& rate) {
  if (!rate.defined) {
    return "0% (undefined)";
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", rate.value * 100.0);
  std::string text = buf;
  while (!text.empty() && text.back() == '0') {
    text.pop_back();
  }
  if (!text.empty() && text.back() == '.') {
    text.pop_back();
  }
  return text + "%";
}

std::string render_rates_table(const FacilityEvaluation& ev) {
  auto cell = [](const std::string& text) {
    std::string out = text;
    out.resize(std::max<std::size_t>(out.size(), 14), ' ');
    return out;
  };
  std::ostringstream out;
  out << cell(ev.facility) << cell("No Alert") << cell("Alert") << "Model error\n";
  out << cell("No Alert") << cell(std::to_string(ev.cm.tn)) << cell(std::to_string(ev.cm.fn))
      << format_rate(ev.rates.model_error_no_alert) << '\n';
  out << cell("Alert") << cell(std::to_string(ev.cm.fp)) << cell(std::to_string(ev.cm.tp))
      << format_rate(ev.rates.model_error_alert) << '\n';
  out << cell("Error of use") << cell(format_rate(ev.rates.use_error_no_alert))
      << cell(format_rate(ev.rates.use_error_alert)) << format_rate(ev.rates.total_error)
      << '\n';
  return out.str();
}

namespace {

nlohmann::json rate_to_json(const Rate& rate) {
  nlohmann::json j;
  j["defined"] = rate.defined;
  if (rate.defined) {
    j["value"] = rate.value;
  } else {
    j["value"] = nullptr;
  }
  return j;
}

}  // namespace

std::string evaluation_to_json(const std::vector<FacilityEvaluation>& evaluations) {
  nlohmann::json facilities = nlohmann::json::array();
  for (const auto& ev : evaluations) {
    facilities.push_back(
        {{"facility", ev.facility},
         {"confusion", {{"tp", ev.cm.tp}, {"fp", ev.cm.fp}, {"tn", ev.cm.tn}, {"fn", ev.cm.fn}}},
         {"rates",
          {{"model_error_no_alert", rate_to_json(ev.rates.model_error_no_alert)},
           {"model_error_alert", rate_to_json(ev.rates.model_error_alert)},
           {"use_error_no_alert", rate_to_json(ev.rates.use_error_no_alert)},
           {"use_error_alert", rate_to_json(ev.rates.use_error_alert)},
           {"total_error", rate_to_json(ev.rates.total_error)}}},
         {"fn_while_nrc", ev.fn_while_nrc},
         {"adjusted_total_error", rate_to_json(ev.adjusted_total_error)}});
  }
  nlohmann::json doc{{"version", 1}, {"facilities", std::move(facilities)}};
  return doc.dump(2) + "\n";
}

}  // namespace pvwatch
