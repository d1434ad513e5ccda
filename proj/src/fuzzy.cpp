#include "pvwatch/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pvwatch {

MembershipFunction MembershipFunction::from_interval(double a, double b) {
  if (!(a <= b)) {
    throw std::invalid_argument("membership interval requires a <= b");
  }
  return MembershipFunction(a, b, a == b ? Shape::Step : Shape::Trapezoid);
}

double MembershipFunction::operator()(double x) const {
  if (shape_ == Shape::Step) {
    return x < b_ ? 0.0 : 1.0;
  }
  if (x <= a_) {
    return 0.0;
  }
  if (x >= b_) {
    return 1.0;
  }
  return (x - a_) / (b_ - a_);
}

OwaWeights::OwaWeights(std::vector<double> weights) : weights_(std::move(weights)) {
  double sum = 0;
  for (const double w : weights_) {
    if (w < 0 || w > 1) {
      throw std::invalid_argument("OWA weight outside [0,1]");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("OWA weights must sum to 1");
  }
}

OwaWeights drop_extremes_weights(int m) {
  if (m < 3) {
    throw std::invalid_argument("need at least 3 comparison values to drop extremes");
  }
  std::vector<double> weights(static_cast<std::size_t>(m), 1.0 / (m - 2));
  weights.front() = 0.0;
  weights.back() = 0.0;
  return OwaWeights(std::move(weights));
}

double owa(std::span<const double> values, const OwaWeights& weights) {
  if (values.size() != weights.size()) {
    throw std::invalid_argument("OWA requires as many weights as values");
  }
  for (const double v : values) {
    if (v < 0 || v > 1) {
      throw std::invalid_argument("OWA input outside [0,1]");
    }
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double result = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    result += weights.values()[i] * sorted[i];
  }
  return result;
}

const char* to_string(PerformanceLabel label) {
  switch (label) {
    case PerformanceLabel::S: return "S";
    case PerformanceLabel::LA: return "LA";
    case PerformanceLabel::A: return "A";
    case PerformanceLabel::VA: return "VA";
    case PerformanceLabel::B: return "B";
  }
  return "?";
}

const char* long_name(PerformanceLabel label) {
  switch (label) {
    case PerformanceLabel::S: return "suitable performance";
    case PerformanceLabel::LA: return "lightly anomalous performance";
    case PerformanceLabel::A: return "anomalous performance";
    case PerformanceLabel::VA: return "very anomalous performance";
    case PerformanceLabel::B: return "bad performance";
  }
  return "?";
}

PerformanceLabel label_from_string(const std::string& text) {
  if (text == "S") return PerformanceLabel::S;
  if (text == "LA") return PerformanceLabel::LA;
  if (text == "A") return PerformanceLabel::A;
  if (text == "VA") return PerformanceLabel::VA;
  if (text == "B") return PerformanceLabel::B;
  throw std::invalid_argument("unknown performance label '" + text + "'");
}

PerformanceLabel linguistic_label(double y, const LabelThresholds& thresholds) {
  if (y < 0 || y > 1) {
    throw std::invalid_argument("global degree outside [0,1]");
  }
  if (y >= 1.0 - thresholds.epsilon) {
    return PerformanceLabel::S;
  }
  if (y <= thresholds.epsilon) {
    return PerformanceLabel::B;
  }
  if (y >= thresholds.lightly_anomalous) {
    return PerformanceLabel::LA;
  }
  if (y >= thresholds.anomalous) {
    return PerformanceLabel::A;
  }
  return PerformanceLabel::VA;
}

}  // namespace pvwatch
