#pragma once

#include <string>

#include "pvwatch/fuzzy.hpp"

namespace pvwatch {

/// Tunables shared across the pipeline, loadable from a JSON config file and
/// overridable per flag. Defaults follow the fleet the method was tuned on.
struct Config {
  LabelThresholds thresholds;
  int min_hours = 20;  // fewest hourly readings for a day to count
  std::string weight_policy = "drop-extremes";

  void validate() const;

  static Config load(const std::string& path);
  std::string to_json() const;
};

}  // namespace pvwatch
