#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pvwatch/date.hpp"
#include "pvwatch/ingest.hpp"

namespace pvwatch {

/// Day's energy sum normalized by peak power, times 100. The value is a
/// dimensionless score; only differences of it matter downstream.
struct DailyPerformance {
  std::string facility;
  Date date;
  double rho = 0;
};

/// Pairwise relative differences for one day, with a per-cell validity mask.
/// The diagonal holds 0; a cell is invalid iff either facility's day is
/// degenerate or both performances are zero.
class DifferenceMatrix {
 public:
  DifferenceMatrix(Date date, std::vector<std::string> facilities)
      : date_(date),
        facilities_(std::move(facilities)),
        cells_(facilities_.size() * facilities_.size(), 0.0),
        valid_(facilities_.size() * facilities_.size(), false) {}

  Date date() const { return date_; }
  std::size_t size() const { return facilities_.size(); }
  const std::vector<std::string>& facilities() const { return facilities_; }

  double at(std::size_t i, std::size_t k) const { return cells_[i * size() + k]; }
  bool valid(std::size_t i, std::size_t k) const { return valid_[i * size() + k]; }

  void set(std::size_t i, std::size_t k, double value, bool is_valid) {
    cells_[i * size() + k] = value;
    valid_[i * size() + k] = is_valid;
  }

 private:
  Date date_;
  std::vector<std::string> facilities_;
  std::vector<double> cells_;
  std::vector<char> valid_;
};

/// rho = 100 * (sum of the day's hourly energies) / peak power on that day.
/// Throws if the day is degenerate or no peak power is in effect.
double daily_performance(const std::string& facility, Date date, const DailySeries& series,
                         const FacilityRegistry& registry);

/// delta = (rho_i - rho_k) / max{rho_i, rho_k} * 100. The sign says which
/// facility usually generates more. Throws when both inputs are zero.
double relative_difference(double rho_i, double rho_k);

DifferenceMatrix difference_matrix(Date date, const DailySeries& series,
                                   const FacilityRegistry& registry);

/// Same, restricted to an explicit facility order.
DifferenceMatrix difference_matrix(Date date, const DailySeries& series,
                                   const FacilityRegistry& registry,
                                   const std::vector<std::string>& facilities);

}  // namespace pvwatch
