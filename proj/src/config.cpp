#include "pvwatch/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace pvwatch {

void Config::validate() const {
  if (thresholds.epsilon < 0) {
    throw std::invalid_argument("epsilon must be non-negative");
  }
  if (!(thresholds.anomalous > 0) || !(thresholds.anomalous < thresholds.lightly_anomalous) ||
      !(thresholds.lightly_anomalous < 1)) {
    throw std::invalid_argument("label thresholds must satisfy 0 < anomalous < lightly_anomalous < 1");
  }
  if (min_hours < 0 || min_hours > 24) {
    throw std::invalid_argument("min_hours must be in [0, 24]");
  }
  if (weight_policy != "drop-extremes") {
    throw std::invalid_argument("unsupported weight policy '" + weight_policy + "'");
  }
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot read config file '" + path + "'");
  }
  nlohmann::json doc = nlohmann::json::parse(in);
  Config config;
  config.thresholds.lightly_anomalous =
      doc.value("lightly_anomalous_threshold", config.thresholds.lightly_anomalous);
  config.thresholds.anomalous = doc.value("anomalous_threshold", config.thresholds.anomalous);
  config.thresholds.epsilon = doc.value("epsilon", config.thresholds.epsilon);
  config.min_hours = doc.value("min_hours", config.min_hours);
  config.weight_policy = doc.value("weight_policy", config.weight_policy);
  config.validate();
  return config;
}

std::string Config::to_json() const {
  nlohmann::json doc{{"lightly_anomalous_threshold", thresholds.lightly_anomalous},
                     {"anomalous_threshold", thresholds.anomalous},
                     {"epsilon", thresholds.epsilon},
                     {"min_hours", min_hours},
                     {"weight_policy", weight_policy}};
  return doc.dump(2) + "\n";
}

}  // namespace pvwatch
