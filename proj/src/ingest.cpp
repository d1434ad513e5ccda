#include "pvwatch/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

#include "csv.hpp"

namespace pvwatch {

namespace csv {

std::string format_double(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

}  // namespace csv

void PeakPowerSchedule::add(Date effective_from, double peak_power_kw) {
  if (peak_power_kw <= 0) {
    throw std::invalid_argument("peak power must be positive");
  }
  const auto pos = std::lower_bound(
      entries_.begin(), entries_.end(), effective_from,
      [](const Entry& e, Date d) { return e.effective_from < d; });
  if (pos != entries_.end() && pos->effective_from == effective_from) {
    throw std::invalid_argument("duplicate effective date " + effective_from.to_string());
  }
  entries_.insert(pos, Entry{effective_from, peak_power_kw});
}

double PeakPowerSchedule::lookup(Date date) const {
  // Greatest effective_from <= date.
  const auto pos = std::upper_bound(
      entries_.begin(), entries_.end(), date,
      [](Date d, const Entry& e) { return d < e.effective_from; });
  if (pos == entries_.begin()) {
    throw std::out_of_range("no peak power in effect on " + date.to_string());
  }
  return std::prev(pos)->peak_power_kw;
}

const PeakPowerSchedule& FacilityRegistry::schedule(const std::string& facility) const {
  const auto it = schedules_.find(facility);
  if (it == schedules_.end()) {
    throw std::out_of_range("unknown facility '" + facility + "'");
  }
  return it->second;
}

std::vector<std::string> FacilityRegistry::facilities() const {
  std::vector<std::string> out;
  out.reserve(schedules_.size());
  for (const auto& [id, schedule] : schedules_) {
    out.push_back(id);
  }
  return out;
}

void DayLabelSet::set(const std::string& facility, Date date, DayLabel label) {
  const auto key = std::make_pair(facility, date);
  const auto it = labels_.find(key);
  if (it != labels_.end() && it->second != label) {
    throw std::invalid_argument("conflicting label for " + facility + " on " + date.to_string());
  }
  labels_[key] = label;
}

DayLabel DayLabelSet::get(const std::string& facility, Date date) const {
  const auto it = labels_.find(std::make_pair(facility, date));
  return it == labels_.end() ? DayLabel::Unlabeled : it->second;
}

DailySeries::DailySeries(std::vector<std::string> facilities, FacilityRegistry registry,
                         int min_hours)
    : facilities_(std::move(facilities)), registry_(std::move(registry)), min_hours_(min_hours) {
  if (min_hours_ < 0 || min_hours_ > 24) {
    throw std::invalid_argument("min_hours must be in [0, 24]");
  }
}

void DailySeries::add_record(const ProductionRecord& record) {
  days_[std::make_pair(record.facility, record.date)][record.hour] = record.energy_kwh;
}

std::vector<Date> DailySeries::dates() const {
  std::vector<Date> out;
  for (const auto& [key, slots] : days_) {
    out.push_back(key.second);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool DailySeries::has_day(const std::string& facility, Date date) const {
  return days_.count(std::make_pair(facility, date)) > 0;
}

int DailySeries::completeness(const std::string& facility, Date date) const {
  const auto it = days_.find(std::make_pair(facility, date));
  if (it == days_.end()) {
    return 0;
  }
  return static_cast<int>(
      std::count_if(it->second.begin(), it->second.end(),
                    [](const std::optional<double>& slot) { return slot.has_value(); }));
}

bool DailySeries::usable(const std::string& facility, Date date) const {
  return has_day(facility, date) && completeness(facility, date) >= min_hours_;
}

double DailySeries::day_sum(const std::string& facility, Date date) const {
  const auto it = days_.find(std::make_pair(facility, date));
  if (it == days_.end()) {
    return 0;
  }
  double sum = 0;
  for (const auto& slot : it->second) {
    if (slot) {
      sum += *slot;
    }
  }
  return sum;
}

const std::array<std::optional<double>, 24>* DailySeries::day_slots(const std::string& facility,
                                                                    Date date) const {
  const auto it = days_.find(std::make_pair(facility, date));
  return it == days_.end() ? nullptr : &it->second;
}

std::vector<std::pair<std::string, Date>> DailySeries::degenerate_days() const {
  std::vector<std::pair<std::string, Date>> out;
  for (const auto& [key, slots] : days_) {
    if (!usable(key.first, key.second)) {
      out.push_back(key);
    }
  }
  return out;
}

ParsedProduction parse_production_csv(std::istream& in) {
  std::size_t line_no = 0;
  csv::expect_header(in, "facility,date,hour,energy_kwh", line_no);

  // Last write wins per (facility, date, hour); insertion order is kept so
  // the output is stable with respect to the file.
  std::vector<ProductionRecord> records;
  std::map<std::tuple<std::string, Date, int>, std::size_t> index;
  std::size_t duplicates = 0;

  std::string line;
  while (csv::next_line(in, line, line_no)) {
    if (line.empty()) {
      continue;
    }
    const auto fields = csv::split(line);
    if (fields.size() != 4) {
      throw ParseError(line_no, "expected 4 columns, got " + std::to_string(fields.size()));
    }
    ProductionRecord record;
    record.facility = fields[0];
    record.date = csv::parse_date(fields[1], line_no);
    record.hour = csv::parse_int(fields[2], line_no, "hour");
    if (record.hour < 0 || record.hour > 23) {
      throw ParseError(line_no, "hour out of range: " + fields[2]);
    }
    record.energy_kwh = csv::parse_double(fields[3], line_no, "energy");
    if (record.energy_kwh < 0) {
      throw ParseError(line_no, "negative energy: " + fields[3]);
    }

    const auto key = std::make_tuple(record.facility, record.date, record.hour);
    const auto [it, inserted] = index.emplace(key, records.size());
    if (inserted) {
      records.push_back(std::move(record));
    } else {
      records[it->second] = std::move(record);
      ++duplicates;
    }
  }
  return ParsedProduction{std::move(records), duplicates};
}

FacilityRegistry parse_facility_config(std::istream& in) {
  std::size_t line_no = 0;
  csv::expect_header(in, "facility,effective_from,peak_power_kw", line_no);

  FacilityRegistry registry;
  std::string line;
  while (csv::next_line(in, line, line_no)) {
    if (line.empty()) {
      continue;
    }
    const auto fields = csv::split(line);
    if (fields.size() != 3) {
      throw ParseError(line_no, "expected 3 columns, got " + std::to_string(fields.size()));
    }
    const Date from = csv::parse_date(fields[1], line_no);
    const double peak = csv::parse_double(fields[2], line_no, "peak power");
    try {
      registry.schedule(fields[0]).add(from, peak);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return registry;
}

DayLabelSet parse_day_labels(std::istream& in) {
  std::size_t line_no = 0;
  csv::expect_header(in, "facility,date,label", line_no);

  DayLabelSet labels;
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
    DayLabel label;
    if (fields[2] == "correct") {
      label = DayLabel::Correct;
    } else if (fields[2] == "incorrect") {
      label = DayLabel::Incorrect;
    } else {
      throw ParseError(line_no, "label must be 'correct' or 'incorrect', got '" + fields[2] + "'");
    }
    try {
      labels.set(fields[0], date, label);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return labels;
}

DailySeries build_daily_series(const std::vector<ProductionRecord>& records,
                               const FacilityRegistry& registry, int min_hours) {
  std::vector<std::string> facilities = registry.facilities();
  DailySeries series(std::move(facilities), registry, min_hours);
  for (const auto& record : records) {
    if (!registry.contains(record.facility)) {
      throw std::out_of_range("record references facility '" + record.facility +
                              "' absent from the registry");
    }
    series.add_record(record);
  }
  return series;
}

std::string to_production_csv(const DailySeries& series) {
  std::ostringstream out;
  out << "facility,date,hour,energy_kwh\n";
  for (const auto& facility : series.facilities()) {
    for (const Date& date : series.dates()) {
      const auto* slots = series.day_slots(facility, date);
      if (slots == nullptr) {
        continue;
      }
      for (int hour = 0; hour < 24; ++hour) {
        if ((*slots)[hour]) {
          out << facility << ',' << date.to_string() << ',' << hour << ','
              << csv::format_double(*(*slots)[hour]) << '\n';
        }
      }
    }
  }
  return out.str();
}

}  // namespace pvwatch
