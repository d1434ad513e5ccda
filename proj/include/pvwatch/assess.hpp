#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pvwatch/config.hpp"
#include "pvwatch/date.hpp"
#include "pvwatch/fsm.hpp"
#include "pvwatch/fuzzy.hpp"
#include "pvwatch/ingest.hpp"
#include "pvwatch/learn.hpp"
#include "pvwatch/performance.hpp"

namespace pvwatch {

/// Membership degrees for one day; the diagonal carries no value.
struct MembershipMatrix {
  std::vector<std::string> facilities;
  std::vector<std::optional<double>> cells;  // row-major n*n

  std::optional<double> at(std::size_t i, std::size_t k) const {
    return cells[i * facilities.size() + k];
  }
};

struct FacilityAssessment {
  std::string facility;
  std::optional<double> y;                     // global degree, absent on no-data days
  std::optional<PerformanceLabel> label;
  FacilityState prior_state = kInitialState;
  FacilityState new_state = kInitialState;
  bool alert = false;
  int comparisons = 0;  // valid cells feeding the aggregation
};

struct DailyAssessment {
  Date date;
  std::vector<FacilityAssessment> facilities;
  DifferenceMatrix delta;
  MembershipMatrix membership;
};

/// One day of the detection pipeline: performances, difference matrix,
/// membership matrix, per-row ordered weighted average, label, state step.
/// Facilities with fewer than 3 valid comparisons (or a degenerate day) get
/// no label and hold their prior state.
DailyAssessment assess_day(const IntervalModel& model, const DailySeries& series, Date date,
                           const std::map<std::string, FacilityState>& prior_states,
                           const Config& config = {});

/// Assesses consecutive days, carrying machine state forward through the
/// state file and recording every assessed day in it.
std::vector<DailyAssessment> assess_range(const IntervalModel& model, const DailySeries& series,
                                          Date from, Date to, StateFile& states,
                                          const Config& config = {});

/// One deterministic sentence per facility, alerts flagged for action.
std::string render_report(const DailyAssessment& assessment);

/// `date,facility,rho` rows for external plotting; degenerate days omitted.
std::string emit_plot_data(const DailySeries& series, const FacilityRegistry& registry,
                           Date from, Date to);

std::string assessments_to_json(const std::vector<DailyAssessment>& assessments);
std::vector<DailyAssessment> assessments_from_json(const std::string& text);

}  // namespace pvwatch
