#include "pvwatch/assess.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "csv.hpp"

namespace pvwatch {

DailyAssessment assess_day(const IntervalModel& model, const DailySeries& series, Date date,
                           const std::map<std::string, FacilityState>& prior_states,
                           const Config& config) {
  const auto& facilities = model.facilities();
  for (const auto& facility : facilities) {
    if (std::find(series.facilities().begin(), series.facilities().end(), facility) ==
        series.facilities().end()) {
      throw std::invalid_argument("model facility '" + facility + "' missing from the series");
    }
  }
  const std::size_t n = facilities.size();

  // Lines 1-2: performances and their relative differences.
  DifferenceMatrix delta = difference_matrix(date, series, series.registry(), facilities);

  // Line 3: evaluate each difference in its pair's membership function.
  MembershipMatrix membership{facilities, std::vector<std::optional<double>>(n * n)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (i != k && delta.valid(i, k)) {
        membership.cells[i * n + k] = model.membership(facilities[i], facilities[k])(
            delta.at(i, k));
      }
    }
  }

  // Lines 4-5: aggregate each row, label, and move the state machine.
  DailyAssessment assessment{date, {}, delta, membership};
  for (std::size_t i = 0; i < n; ++i) {
    FacilityAssessment fa;
    fa.facility = facilities[i];
    const auto prior = prior_states.find(facilities[i]);
    fa.prior_state = prior == prior_states.end() ? kInitialState : prior->second;

    std::vector<double> row;
    for (std::size_t k = 0; k < n; ++k) {
      if (k != i && membership.cells[i * n + k]) {
        row.push_back(*membership.cells[i * n + k]);
      }
    }
    fa.comparisons = static_cast<int>(row.size());
    if (row.size() >= 3) {
      fa.y = owa(row, drop_extremes_weights(static_cast<int>(row.size())));
      fa.label = linguistic_label(*fa.y, config.thresholds);
      fa.new_state = step(fa.prior_state, *fa.label);
    } else {
      fa.new_state = fa.prior_state;  // not enough comparisons: hold
    }
    fa.alert = to_alert(fa.new_state);
    assessment.facilities.push_back(std::move(fa));
  }
  return assessment;
}

std::vector<DailyAssessment> assess_range(const IntervalModel& model, const DailySeries& series,
                                          Date from, Date to, StateFile& states,
                                          const Config& config) {
  std::vector<DailyAssessment> out;
  if (to < from) {
    return out;  // empty range: nothing to assess, state untouched
  }
  for (Date date = from; date <= to; date = date.next()) {
    std::map<std::string, FacilityState> prior;
    for (const auto& facility : model.facilities()) {
      prior[facility] = states.state_before(facility, date);
    }
    DailyAssessment assessment = assess_day(model, series, date, prior, config);
    for (const auto& fa : assessment.facilities) {
      states.record(fa.facility, date, fa.new_state);
    }
    out.push_back(std::move(assessment));
  }
  return out;
}

std::string render_report(const DailyAssessment& assessment) {
  std::ostringstream out;
  const std::string date = assessment.date.to_string();
  for (const auto& fa : assessment.facilities) {
    if (!fa.y) {
      out << date << ": facility " << fa.facility << " insufficient data; status held\n";
      continue;
    }
    char percent[32];
    std::snprintf(percent, sizeof(percent), "%.2f%%", *fa.y * 100.0);
    out << date << ": facility " << fa.facility << " performance " << percent << " ("
        << long_name(*fa.label) << "); status " << long_name(fa.new_state);
    if (fa.alert) {
      out << "; ACTION: inspect";
    }
    out << '\n';
  }
  return out.str();
}

std::string emit_plot_data(const DailySeries& series, const FacilityRegistry& registry,
                           Date from, Date to) {
  if (to < from) {
    throw std::invalid_argument("plot range is inverted");
  }
  std::ostringstream out;
  out << "date,facility,rho\n";
  for (Date date = from; date <= to; date = date.next()) {
    for (const auto& facility : series.facilities()) {
      if (!series.usable(facility, date)) {
        continue;
      }
      out << date.to_string() << ',' << facility << ','
          << csv::format_double(daily_performance(facility, date, series, registry)) << '\n';
    }
  }
  return out.str();
}

namespace {

nlohmann::json optional_to_json(const std::optional<double>& value) {
  if (value) {
    return *value;
  }
  return nullptr;
}

}  // namespace

std::string assessments_to_json(const std::vector<DailyAssessment>& assessments) {
  nlohmann::json days = nlohmann::json::array();
  for (const auto& assessment : assessments) {
    const std::size_t n = assessment.delta.size();
    nlohmann::json facilities = nlohmann::json::array();
    for (const auto& fa : assessment.facilities) {
      nlohmann::json j{{"facility", fa.facility},
                       {"y", optional_to_json(fa.y)},
                       {"label", fa.label ? nlohmann::json(to_string(*fa.label))
                                          : nlohmann::json(nullptr)},
                       {"prior_state", to_string(fa.prior_state)},
                       {"new_state", to_string(fa.new_state)},
                       {"alert", fa.alert},
                       {"comparisons", fa.comparisons}};
      facilities.push_back(std::move(j));
    }
    nlohmann::json delta = nlohmann::json::array();
    nlohmann::json membership = nlohmann::json::array();
    for (std::size_t i = 0; i < n; ++i) {
      nlohmann::json delta_row = nlohmann::json::array();
      nlohmann::json mu_row = nlohmann::json::array();
      for (std::size_t k = 0; k < n; ++k) {
        delta_row.push_back(assessment.delta.valid(i, k)
                                ? nlohmann::json(assessment.delta.at(i, k))
                                : nlohmann::json(nullptr));
        mu_row.push_back(optional_to_json(assessment.membership.cells[i * n + k]));
      }
      delta.push_back(std::move(delta_row));
      membership.push_back(std::move(mu_row));
    }
    days.push_back({{"date", assessment.date.to_string()},
                    {"facilities", std::move(facilities)},
                    {"delta", std::move(delta)},
                    {"membership", std::move(membership)}});
  }
  nlohmann::json doc{{"version", 1},
                     {"facility_order", assessments.empty()
                                            ? std::vector<std::string>{}
                                            : assessments.front().delta.facilities()},
                     {"assessments", std::move(days)}};
  return doc.dump(2) + "\n";
}

std::vector<DailyAssessment> assessments_from_json(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text);
  if (doc.at("version").get<int>() != 1) {
    throw std::runtime_error("unsupported assessments version");
  }
  const auto order = doc.at("facility_order").get<std::vector<std::string>>();
  std::vector<DailyAssessment> out;
  for (const auto& day : doc.at("assessments")) {
    const Date date = Date::parse(day.at("date").get<std::string>());
    DifferenceMatrix delta(date, order);
    MembershipMatrix membership{order,
                                std::vector<std::optional<double>>(order.size() * order.size())};
    const auto& delta_rows = day.at("delta");
    const auto& mu_rows = day.at("membership");
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t k = 0; k < order.size(); ++k) {
        const auto& dcell = delta_rows.at(i).at(k);
        if (!dcell.is_null()) {
          delta.set(i, k, dcell.get<double>(), true);
        }
        const auto& mcell = mu_rows.at(i).at(k);
        if (!mcell.is_null()) {
          membership.cells[i * order.size() + k] = mcell.get<double>();
        }
      }
    }
    DailyAssessment assessment{date, {}, std::move(delta), std::move(membership)};
    for (const auto& j : day.at("facilities")) {
      FacilityAssessment fa;
      fa.facility = j.at("facility").get<std::string>();
      if (!j.at("y").is_null()) {
        fa.y = j.at("y").get<double>();
      }
      if (!j.at("label").is_null()) {
        fa.label = label_from_string(j.at("label").get<std::string>());
      }
      fa.prior_state = state_from_string(j.at("prior_state").get<std::string>());
      fa.new_state = state_from_string(j.at("new_state").get<std::string>());
      fa.alert = j.at("alert").get<bool>();
      fa.comparisons = j.at("comparisons").get<int>();
      assessment.facilities.push_back(std::move(fa));
    }
    out.push_back(std::move(assessment));
  }
  return out;
}

}  // namespace pvwatch
