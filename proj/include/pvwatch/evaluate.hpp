#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pvwatch/date.hpp"
#include "pvwatch/fsm.hpp"

namespace pvwatch {

struct ConfusionMatrix {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;

  std::int64_t total() const { return tp + fp + tn + fn; }
  bool operator==(const ConfusionMatrix&) const = default;
};

/// A rate can be undefined when its denominator is empty; undefined rates
/// print as 0% but stay flagged.
struct Rate {
  double value = 0;
  bool defined = false;
};

struct ErrorRates {
  Rate model_error_no_alert;  // FN / (FN + TN)
  Rate model_error_alert;     // FP / (FP + TP)
  Rate use_error_no_alert;    // FP / (TN + FP)
  Rate use_error_alert;       // FN / (FN + TP)
  Rate total_error;           // (FN + FP) / total
};

/// Cross-tabulates predicted against actual alerts (rows predicted,
/// columns actual). Sequences must have equal length.
ConfusionMatrix confusion_matrix(const std::vector<bool>& predicted,
                                 const std::vector<bool>& actual);

ErrorRates error_rates(const ConfusionMatrix& cm);

/// Ground-truth alert days, parsed from `facility,date,label` rows with
/// label in {alert, no-alert}.
using AlertTruth = std::map<std::pair<std::string, Date>, bool>;

AlertTruth parse_alert_labels(std::istream& in);

/// One facility's day-by-day predicted states paired with truth.
struct EvaluationInput {
  std::string facility;
  std::vector<FacilityState> predicted;
  std::vector<bool> actual;
};

struct FacilityEvaluation {
  std::string facility;
  ConfusionMatrix cm;
  ErrorRates rates;
  /// False negatives whose predicted state was NRC: early warnings the
  /// strict alert mapping counts as misses.
  std::int64_t fn_while_nrc = 0;
  Rate adjusted_total_error;  // total error with NRC warnings forgiven
};

FacilityEvaluation evaluate_facility(const EvaluationInput& input);

/// Aligned text table per facility, same layout as the model/use-error grid.
std::string render_rates_table(const FacilityEvaluation& evaluation);

std::string evaluation_to_json(const std::vector<FacilityEvaluation>& evaluations);

/// Percentage with up to 3 decimals, trailing zeros trimmed; undefined
/// rates render as "0% (undefined)".
std::string format_rate(const Rate& rate);

}  // namespace pvwatch
