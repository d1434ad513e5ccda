#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pvwatch/date.hpp"
#include "pvwatch/ingest.hpp"

namespace pvwatch {

/// Deterministic random source for the simulator: mt19937_64 with explicit
/// value mappings, so traces replay bit-for-bit on any platform.
///   uniform:  (x >> 11) * 2^-53 in [0, 1)
///   gaussian: Irwin-Hall, sum of 12 uniforms minus 6
class SimRng {
 public:
  explicit SimRng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

  double gaussian() {
    double sum = 0;
    for (int i = 0; i < 12; ++i) {
      sum += uniform();
    }
    return sum - 6.0;
  }

 private:
  std::mt19937_64 engine_;
};

struct FacilitySpec {
  std::string id;
  double peak_power_kw = 0;
  double efficiency_gain = 0;  // fraction of peak reached at full sun
};

struct FleetSpec {
  std::vector<FacilitySpec> facilities;
  Date start;
  int days = 0;
  std::uint64_t seed = 0;
  double day_factor_lo = 0.6;  // shared per-day output scale, (0, 1]
  double day_factor_hi = 1.0;
  double noise_sd = 0;  // relative sd of per-hour multiplicative noise
};

struct FaultSpec {
  enum class Kind { ConstantLoss, Outage, IrregularDips };

  std::string facility;
  Kind kind = Kind::ConstantLoss;
  double fraction = 0;     // ConstantLoss: output multiplied by (1 - fraction)
  double probability = 0;  // IrregularDips: chance a day in the window dips
  double depth = 0;        // IrregularDips: dip-day output multiplied by (1 - depth)
  Date from;
  std::optional<Date> to;  // absent = through the end of the data
};

struct Fleet {
  std::vector<ProductionRecord> records;
  DayLabelSet labels;
};

/// Diurnal shape shared by all facilities: raised cosine over hours 6..20
/// peaking at 13, zero at night. The exact table is frozen so traces are
/// reproducible across platforms.
double bell_curve(int hour);

/// Hourly energies are snapped to this grid (about one watt-hour). Keeping
/// values on a fixed dyadic grid makes common rescalings of the whole
/// dataset exact in floating point.
inline constexpr double kEnergyQuantumKwh = 0x1.0p-10;

/// One shared day factor per day, per-hour multiplicative noise per
/// facility, all days labeled correct. Hourly output:
///   peak * gain * day_factor * bell(hour) * (1 + noise), clamped >= 0,
/// snapped to the energy grid. Deterministic per seed.
Fleet generate_fleet(const FleetSpec& spec);

/// Applies a fault to the matching records and relabels the affected days
/// incorrect for that facility. Records outside the facility/window are
/// untouched. The seed drives IrregularDips day selection only.
Fleet inject_fault(const Fleet& fleet, const FaultSpec& fault, std::uint64_t seed);

/// Days a seeded IrregularDips fault would hit, for replay in tests and logs.
std::vector<Date> irregular_dip_days(const FaultSpec& fault, Date data_end, std::uint64_t seed);

std::string to_production_csv(const std::vector<ProductionRecord>& records);
std::string to_facility_config_csv(const std::vector<FacilitySpec>& facilities, Date start);
std::string to_label_csv(const DayLabelSet& labels);

/// Fleet/fault description as a JSON document (used by the CLI).
FleetSpec fleet_spec_from_json(const std::string& text, std::vector<FaultSpec>* faults);

}  // namespace pvwatch
