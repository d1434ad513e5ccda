#include "pvwatch/performance.hpp"

#include <algorithm>
#include <stdexcept>

namespace pvwatch {

double daily_performance(const std::string& facility, Date date, const DailySeries& series,
                         const FacilityRegistry& registry) {
  if (!series.usable(facility, date)) {
    throw std::domain_error("no performance available for " + facility + " on " +
                            date.to_string());
  }
  const double peak = registry.schedule(facility).lookup(date);
  return series.day_sum(facility, date) / peak * 100.0;
}

double relative_difference(double rho_i, double rho_k) {
  const double denom = std::max(rho_i, rho_k);
  if (denom == 0) {
    throw std::domain_error("undefined difference: both facilities produced nothing");
  }
  return (rho_i - rho_k) / denom * 100.0;
}

DifferenceMatrix difference_matrix(Date date, const DailySeries& series,
                                   const FacilityRegistry& registry) {
  return difference_matrix(date, series, registry, series.facilities());
}

DifferenceMatrix difference_matrix(Date date, const DailySeries& series,
                                   const FacilityRegistry& registry,
                                   const std::vector<std::string>& facilities) {
  DifferenceMatrix matrix(date, facilities);
  const std::size_t n = facilities.size();

  std::vector<std::optional<double>> rho(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (series.usable(facilities[i], date)) {
      rho[i] = daily_performance(facilities[i], date, series, registry);
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (!rho[i] || !rho[k] || std::max(*rho[i], *rho[k]) == 0) {
        matrix.set(i, k, 0.0, false);
      } else if (i == k) {
        matrix.set(i, k, 0.0, true);
      } else {
        matrix.set(i, k, relative_difference(*rho[i], *rho[k]), true);
      }
    }
  }
  return matrix;
}

}  // namespace pvwatch
