#pragma once

#include <array>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pvwatch/date.hpp"

namespace pvwatch {

/// Parse failure carrying the 1-based line number of the offending row.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// One facility's generated energy for one hour of one day.
struct ProductionRecord {
  std::string facility;
  Date date;
  int hour = 0;          // 0..23
  double energy_kwh = 0; // >= 0

  bool operator==(const ProductionRecord&) const = default;
};

struct ParsedProduction {
  std::vector<ProductionRecord> records;
  std::size_t duplicate_warnings = 0;
};

/// Piecewise-constant peak power for one facility, keyed by effective date.
class PeakPowerSchedule {
 public:
  struct Entry {
    Date effective_from;
    double peak_power_kw;
  };

  /// Keeps entries sorted; rejects duplicate effective dates and
  /// non-positive power.
  void add(Date effective_from, double peak_power_kw);

  /// Peak power in effect on `date`: the entry with the greatest
  /// effective_from <= date. Throws if the date precedes all entries.
  double lookup(Date date) const;

  const std::vector<Entry>& entries() const { return entries_; }

 private:
  std::vector<Entry> entries_;
};

/// All facilities' peak-power schedules.
class FacilityRegistry {
 public:
  PeakPowerSchedule& schedule(const std::string& facility) { return schedules_[facility]; }
  const PeakPowerSchedule& schedule(const std::string& facility) const;
  bool contains(const std::string& facility) const { return schedules_.count(facility) > 0; }
  std::vector<std::string> facilities() const;

 private:
  std::map<std::string, PeakPowerSchedule> schedules_;
};

enum class DayLabel { Unlabeled, Correct, Incorrect };

/// Human-assigned per-facility day-quality labels used for training.
class DayLabelSet {
 public:
  /// Throws on a conflicting re-label; repeating an identical label is a no-op.
  void set(const std::string& facility, Date date, DayLabel label);

  DayLabel get(const std::string& facility, Date date) const;

  const std::map<std::pair<std::string, Date>, DayLabel>& entries() const { return labels_; }

 private:
  std::map<std::pair<std::string, Date>, DayLabel> labels_;
};

/// Canonical hourly series: per (facility, date), the 24 hourly slots with
/// explicit presence, completeness counts and the degenerate-day mark.
class DailySeries {
 public:
  DailySeries(std::vector<std::string> facilities, FacilityRegistry registry, int min_hours);

  void add_record(const ProductionRecord& record);

  const std::vector<std::string>& facilities() const { return facilities_; }
  const FacilityRegistry& registry() const { return registry_; }
  int min_hours() const { return min_hours_; }

  /// All dates with at least one record, ascending.
  std::vector<Date> dates() const;

  bool has_day(const std::string& facility, Date date) const;
  int completeness(const std::string& facility, Date date) const;

  /// A day is usable iff it exists and has at least min_hours readings.
  bool usable(const std::string& facility, Date date) const;

  /// Sum of the present hourly energies; absent slots contribute 0.
  double day_sum(const std::string& facility, Date date) const;

  const std::array<std::optional<double>, 24>* day_slots(const std::string& facility,
                                                         Date date) const;

  /// (facility, date) pairs excluded for having fewer than min_hours readings.
  std::vector<std::pair<std::string, Date>> degenerate_days() const;

  std::size_t day_count() const { return days_.size(); }

 private:
  std::vector<std::string> facilities_;
  FacilityRegistry registry_;
  int min_hours_;
  std::map<std::pair<std::string, Date>, std::array<std::optional<double>, 24>> days_;
};

/// Reads `facility,date,hour,energy_kwh` rows. Duplicate (facility,date,hour)
/// keys resolve last-write-wins with a warning count instead of failing:
/// telemetry re-sends are routine and must not block a daily run.
ParsedProduction parse_production_csv(std::istream& in);

/// Reads `facility,effective_from,peak_power_kw` rows.
FacilityRegistry parse_facility_config(std::istream& in);

/// Reads `facility,date,label` rows with label in {correct, incorrect}.
DayLabelSet parse_day_labels(std::istream& in);

DailySeries build_daily_series(const std::vector<ProductionRecord>& records,
                               const FacilityRegistry& registry, int min_hours);

/// Inverse of parse_production_csv for a series (row order: facility, date, hour).
std::string to_production_csv(const DailySeries& series);

}  // namespace pvwatch
