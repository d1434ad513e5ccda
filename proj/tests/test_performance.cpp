#include <algorithm>
#include <random>
#include <vector>

#include <doctest.h>

#include "pvwatch/performance.hpp"

using namespace pvwatch;

namespace {

// Series with one record per hour spreading `total` evenly across the day.
DailySeries series_with_sums(const std::vector<std::pair<std::string, double>>& facility_peaks,
                             Date day, const std::vector<double>& totals, int hours = 24) {
  FacilityRegistry registry;
  for (const auto& [id, peak] : facility_peaks) {
    registry.schedule(id).add(Date{2019, 1, 1}, peak);
  }
  std::vector<ProductionRecord> records;
  for (std::size_t i = 0; i < facility_peaks.size(); ++i) {
    for (int h = 0; h < hours; ++h) {
      records.push_back(
          ProductionRecord{facility_peaks[i].first, day, h, totals[i] / hours});
    }
  }
  return build_daily_series(records, registry, 20);
}

}  // namespace

TEST_CASE("daily performance is the normalized day sum") {
  const Date day{2020, 6, 15};
  SUBCASE("hand-checked ratio") {
    const auto series = series_with_sums({{"F1", 47.61}}, day, {23.805});
    const double rho = daily_performance("F1", day, series, series.registry());
    CHECK(rho == doctest::Approx(50.0).epsilon(1e-12));
  }
  SUBCASE("an idle day scores zero") {
    const auto series = series_with_sums({{"F1", 47.61}}, day, {0.0});
    CHECK(daily_performance("F1", day, series, series.registry()) == 0.0);
  }
  SUBCASE("scores beyond 100 are legitimate (energy over power)") {
    const auto series = series_with_sums({{"F5", 25.0}}, day, {61.0});
    CHECK(daily_performance("F5", day, series, series.registry()) ==
          doctest::Approx(244.0).epsilon(1e-12));
  }
  SUBCASE("degenerate days have no performance") {
    const auto series = series_with_sums({{"F1", 47.61}}, day, {23.805}, 19);
    CHECK_THROWS_AS(daily_performance("F1", day, series, series.registry()),
                    std::domain_error);
  }
}

TEST_CASE("relative difference") {
  SUBCASE("hand arithmetic") {
    CHECK(relative_difference(5.0, 6.0) == doctest::Approx(-100.0 / 6).epsilon(1e-12));
  }
  SUBCASE("equal performances differ by zero") {
    for (const double x : {0.5, 1.0, 244.0}) {
      CHECK(relative_difference(x, x) == 0.0);
    }
  }
  SUBCASE("antisymmetric for all valid pairs") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> rho(0.0, 650.0);
    for (int trial = 0; trial < 2000; ++trial) {
      const double a = rho(rng), b = rho(rng);
      if (std::max(a, b) == 0) continue;
      CHECK(relative_difference(a, b) ==
            doctest::Approx(-relative_difference(b, a)).epsilon(1e-12));
      const double d = relative_difference(a, b);
      CHECK(d >= -100.0);
      CHECK(d <= 100.0);
      if (a != b) {
        CHECK(d != 0.0);
      }
    }
  }
  SUBCASE("a dead facility pins the difference at the bound") {
    CHECK(relative_difference(0.0, 5.0) == -100.0);
    CHECK(relative_difference(5.0, 0.0) == 100.0);
  }
  SUBCASE("two dead facilities have no defined difference") {
    CHECK_THROWS_AS(relative_difference(0.0, 0.0), std::domain_error);
  }
}

TEST_CASE("difference matrix") {
  const Date day{2020, 6, 15};
  SUBCASE("six healthy facilities give thirty valid off-diagonal cells") {
    std::vector<std::pair<std::string, double>> peaks;
    std::vector<double> totals;
    for (int i = 1; i <= 6; ++i) {
      peaks.emplace_back("F" + std::to_string(i), 50.0);
      totals.push_back(200.0 + 10 * i);
    }
    const auto series = series_with_sums(peaks, day, totals);
    const auto matrix = difference_matrix(day, series, series.registry());
    REQUIRE(matrix.size() == 6);
    int valid_off_diagonal = 0;
    for (std::size_t i = 0; i < 6; ++i) {
      CHECK(matrix.at(i, i) == 0.0);
      for (std::size_t k = 0; k < 6; ++k) {
        if (i != k && matrix.valid(i, k)) {
          ++valid_off_diagonal;
        }
      }
    }
    CHECK(valid_off_diagonal == 30);
  }
  SUBCASE("a degenerate facility masks its row and column") {
    FacilityRegistry registry;
    for (int i = 1; i <= 3; ++i) {
      registry.schedule("F" + std::to_string(i)).add(Date{2019, 1, 1}, 50.0);
    }
    std::vector<ProductionRecord> records;
    for (int i = 1; i <= 3; ++i) {
      const int hours = i == 3 ? 10 : 24;  // F3 sparse
      for (int h = 0; h < hours; ++h) {
        records.push_back(ProductionRecord{"F" + std::to_string(i), day, h, 1.0});
      }
    }
    const auto series = build_daily_series(records, registry, 20);
    const auto matrix = difference_matrix(day, series, series.registry());
    const std::size_t f3 = 2;
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(!matrix.valid(f3, j));
      CHECK(!matrix.valid(j, f3));
    }
    CHECK(matrix.valid(0, 1));
  }
  SUBCASE("matches a brute-force recomputation on random days") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> total(0.0, 400.0);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<std::pair<std::string, double>> peaks;
      std::vector<double> totals;
      for (int i = 1; i <= 4; ++i) {
        peaks.emplace_back("F" + std::to_string(i), 30.0 + 5 * i);
        totals.push_back(total(rng));
      }
      const auto series = series_with_sums(peaks, day, totals);
      const auto matrix = difference_matrix(day, series, series.registry());
      // independent nested-loop recomputation from raw sums
      for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t k = 0; k < 4; ++k) {
          const double rho_i = series.day_sum(peaks[i].first, day) / peaks[i].second * 100.0;
          const double rho_k = series.day_sum(peaks[k].first, day) / peaks[k].second * 100.0;
          if (std::max(rho_i, rho_k) == 0) {
            CHECK(!matrix.valid(i, k));
          } else if (i == k) {
            CHECK(matrix.at(i, k) == 0.0);
          } else {
            REQUIRE(matrix.valid(i, k));
            CHECK(matrix.at(i, k) ==
                  doctest::Approx((rho_i - rho_k) / std::max(rho_i, rho_k) * 100.0)
                      .epsilon(1e-12));
          }
        }
      }
      // antisymmetry across the whole matrix
      for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t k = 0; k < 4; ++k) {
          if (matrix.valid(i, k)) {
            CHECK(std::abs(matrix.at(i, k) + matrix.at(k, i)) <= 1e-12);
          }
        }
      }
    }
  }
}

TEST_CASE("scaling all energies by a power of two leaves differences bit-identical") {
  const Date day{2020, 6, 15};
  FacilityRegistry registry;
  registry.schedule("F1").add(Date{2019, 1, 1}, 64.0);
  registry.schedule("F2").add(Date{2019, 1, 1}, 32.0);
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> unit(0.0, 20.0);
  std::vector<ProductionRecord> records, scaled;
  for (int h = 0; h < 24; ++h) {
    for (const auto* id : {"F1", "F2"}) {
      const double e = unit(rng);
      records.push_back(ProductionRecord{id, day, h, e});
      scaled.push_back(ProductionRecord{id, day, h, e * 2.0});
    }
  }
  const auto base = build_daily_series(records, registry, 20);
  const auto doubled = build_daily_series(scaled, registry, 20);
  const auto m1 = difference_matrix(day, base, registry);
  const auto m2 = difference_matrix(day, doubled, registry);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t k = 0; k < 2; ++k) {
      CHECK(m1.valid(i, k) == m2.valid(i, k));
      CHECK(m1.at(i, k) == m2.at(i, k));
    }
  }
}
