#include "pvwatch/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "csv.hpp"

namespace pvwatch {

double bell_curve(int hour) {
  // 0.5 * (1 + cos(pi * (hour - 13) / 7)) over [6, 20], tabulated.
  static constexpr double kTable[15] = {
      0.0,
      0.049515566048790483,
      0.18825509907063326,
      0.38873953302184283,
      0.61126046697815717,
      0.8117449009293668,
      0.95048443395120952,
      1.0,
      0.95048443395120952,
      0.8117449009293668,
      0.61126046697815717,
      0.38873953302184283,
      0.18825509907063326,
      0.049515566048790483,
      0.0,
  };
  if (hour < 6 || hour > 20) {
    return 0.0;
  }
  return kTable[hour - 6];
}

namespace {

double quantize(double energy_kwh) {
  return std::round(energy_kwh / kEnergyQuantumKwh) * kEnergyQuantumKwh;
}

void validate(const FleetSpec& spec) {
  if (spec.facilities.empty() || spec.days <= 0) {
    throw std::invalid_argument("fleet spec needs facilities and a positive day count");
  }
  for (const auto& f : spec.facilities) {
    if (f.peak_power_kw <= 0 || f.efficiency_gain <= 0) {
      throw std::invalid_argument("facility '" + f.id +
                                  "' needs positive peak power and efficiency gain");
    }
  }
  if (!(spec.day_factor_lo > 0) || spec.day_factor_lo > spec.day_factor_hi ||
      spec.day_factor_hi > 1.0) {
    throw std::invalid_argument("day factor range must satisfy 0 < lo <= hi <= 1");
  }
  if (spec.noise_sd < 0) {
    throw std::invalid_argument("noise_sd must be non-negative");
  }
}

Date fault_end(const FaultSpec& fault, Date data_end) {
  return fault.to ? *fault.to : data_end;
}

}  // namespace

Fleet generate_fleet(const FleetSpec& spec) {
  validate(spec);
  SimRng rng(spec.seed);

  Fleet fleet;
  fleet.records.reserve(static_cast<std::size_t>(spec.days) * spec.facilities.size() * 24);
  Date date = spec.start;
  for (int d = 0; d < spec.days; ++d, date = date.next()) {
    const double day_factor = rng.uniform(spec.day_factor_lo, spec.day_factor_hi);
    for (const auto& facility : spec.facilities) {
      for (int hour = 0; hour < 24; ++hour) {
        const double bell = bell_curve(hour);
        double energy = 0;
        if (bell > 0) {
          double noise = 0;
          if (spec.noise_sd > 0) {
            noise = spec.noise_sd * rng.gaussian();
          }
          energy = facility.peak_power_kw * facility.efficiency_gain * day_factor * bell *
                   (1.0 + noise);
          energy = quantize(std::max(0.0, energy));
        }
        fleet.records.push_back(ProductionRecord{facility.id, date, hour, energy});
      }
      fleet.labels.set(facility.id, date, DayLabel::Correct);
    }
  }
  return fleet;
}

std::vector<Date> irregular_dip_days(const FaultSpec& fault, Date data_end, std::uint64_t seed) {
  SimRng rng(seed);
  std::vector<Date> days;
  const Date end = fault_end(fault, data_end);
  for (Date date = fault.from; date <= end; date = date.next()) {
    if (rng.uniform() < fault.probability) {
      days.push_back(date);
    }
  }
  return days;
}

Fleet inject_fault(const Fleet& fleet, const FaultSpec& fault, std::uint64_t seed) {
  bool known = false;
  Date data_end = fleet.records.empty() ? fault.from : fleet.records.front().date;
  for (const auto& record : fleet.records) {
    data_end = std::max(data_end, record.date);
    known = known || record.facility == fault.facility;
  }
  if (!known) {
    throw std::out_of_range("unknown facility '" + fault.facility + "'");
  }
  if (fault.to && *fault.to < fault.from) {
    throw std::invalid_argument("fault window is inverted");
  }
  if (fault.kind == FaultSpec::Kind::ConstantLoss &&
      !(fault.fraction > 0 && fault.fraction < 1)) {
    throw std::invalid_argument("constant-loss fraction must be in (0,1)");
  }
  if (fault.kind == FaultSpec::Kind::IrregularDips &&
      (!(fault.depth > 0 && fault.depth < 1) || fault.probability < 0 ||
       fault.probability > 1)) {
    throw std::invalid_argument("irregular-dips parameters out of range");
  }

  std::set<Date> dip_days;
  if (fault.kind == FaultSpec::Kind::IrregularDips) {
    const auto days = irregular_dip_days(fault, data_end, seed);
    dip_days.insert(days.begin(), days.end());
  }

  const Date end = fault_end(fault, data_end);
  Fleet out = fleet;
  std::set<Date> affected;
  for (auto& record : out.records) {
    if (record.facility != fault.facility || record.date < fault.from || record.date > end) {
      continue;
    }
    switch (fault.kind) {
      case FaultSpec::Kind::ConstantLoss:
        record.energy_kwh = quantize(record.energy_kwh * (1.0 - fault.fraction));
        affected.insert(record.date);
        break;
      case FaultSpec::Kind::Outage:
        record.energy_kwh = 0;
        affected.insert(record.date);
        break;
      case FaultSpec::Kind::IrregularDips:
        if (dip_days.count(record.date) > 0) {
          record.energy_kwh = quantize(record.energy_kwh * (1.0 - fault.depth));
          affected.insert(record.date);
        }
        break;
    }
  }

  DayLabelSet labels;
  for (const auto& [key, label] : fleet.labels.entries()) {
    const bool hit = key.first == fault.facility && affected.count(key.second) > 0;
    labels.set(key.first, key.second, hit ? DayLabel::Incorrect : label);
  }
  out.labels = std::move(labels);
  return out;
}

std::string to_production_csv(const std::vector<ProductionRecord>& records) {
  std::ostringstream out;
  out << "facility,date,hour,energy_kwh\n";
  for (const auto& record : records) {
    out << record.facility << ',' << record.date.to_string() << ',' << record.hour << ','
        << csv::format_double(record.energy_kwh) << '\n';
  }
  return out.str();
}

std::string to_facility_config_csv(const std::vector<FacilitySpec>& facilities, Date start) {
  std::ostringstream out;
  out << "facility,effective_from,peak_power_kw\n";
  for (const auto& facility : facilities) {
    out << facility.id << ',' << start.to_string() << ','
        << csv::format_double(facility.peak_power_kw) << '\n';
  }
  return out.str();
}

std::string to_label_csv(const DayLabelSet& labels) {
  std::ostringstream out;
  out << "facility,date,label\n";
  for (const auto& [key, label] : labels.entries()) {
    if (label == DayLabel::Unlabeled) {
      continue;
    }
    out << key.first << ',' << key.second.to_string() << ','
        << (label == DayLabel::Correct ? "correct" : "incorrect") << '\n';
  }
  return out.str();
}

FleetSpec fleet_spec_from_json(const std::string& text, std::vector<FaultSpec>* faults) {
  nlohmann::json doc = nlohmann::json::parse(text);
  FleetSpec spec;
  for (const auto& f : doc.at("facilities")) {
    spec.facilities.push_back(FacilitySpec{f.at("id").get<std::string>(),
                                           f.at("peak_power_kw").get<double>(),
                                           f.at("efficiency_gain").get<double>()});
  }
  spec.start = Date::parse(doc.at("start").get<std::string>());
  spec.days = doc.at("days").get<int>();
  spec.seed = doc.value("seed", std::uint64_t{0});
  spec.day_factor_lo = doc.value("day_factor_lo", 0.6);
  spec.day_factor_hi = doc.value("day_factor_hi", 1.0);
  spec.noise_sd = doc.value("noise_sd", 0.0);

  if (faults != nullptr && doc.contains("faults")) {
    for (const auto& f : doc.at("faults")) {
      FaultSpec fault;
      fault.facility = f.at("facility").get<std::string>();
      const std::string kind = f.at("kind").get<std::string>();
      if (kind == "constant_loss") {
        fault.kind = FaultSpec::Kind::ConstantLoss;
        fault.fraction = f.at("fraction").get<double>();
      } else if (kind == "outage") {
        fault.kind = FaultSpec::Kind::Outage;
      } else if (kind == "irregular_dips") {
        fault.kind = FaultSpec::Kind::IrregularDips;
        fault.probability = f.at("probability").get<double>();
        fault.depth = f.at("depth").get<double>();
      } else {
        throw std::invalid_argument("unknown fault kind '" + kind + "'");
      }
      fault.from = Date::parse(f.at("from").get<std::string>());
      if (f.contains("to")) {
        fault.to = Date::parse(f.at("to").get<std::string>());
      }
      faults->push_back(fault);
    }
  }
  return spec;
}

}  // namespace pvwatch
