#pragma once

#include <span>
#include <string>
#include <vector>

namespace pvwatch {

/// Non-decreasing map from a relative difference to a degree in [0,1] of
/// suitable pairwise performance. Trapezoid ramps from 0 at `a` to 1 at `b`;
/// the step form (a == b) jumps straight from 0 to 1 at `b`.
class MembershipFunction {
 public:
  enum class Shape { Trapezoid, Step };

  /// Shape is implied by the interval: a < b gives a trapezoid, a == b a step.
  static MembershipFunction from_interval(double a, double b);

  double operator()(double x) const;

  double a() const { return a_; }
  double b() const { return b_; }
  Shape shape() const { return shape_; }

 private:
  MembershipFunction(double a, double b, Shape shape) : a_(a), b_(b), shape_(shape) {}

  double a_;
  double b_;
  Shape shape_;
};

/// Weight list for the ordered weighted average: each weight in [0,1],
/// summing to 1 within 1e-12.
class OwaWeights {
 public:
  explicit OwaWeights(std::vector<double> weights);

  std::span<const double> values() const { return weights_; }
  std::size_t size() const { return weights_.size(); }

 private:
  std::vector<double> weights_;
};

/// Weights that zero out the greatest and least value and average the rest:
/// (0, 1/(m-2), ..., 1/(m-2), 0). Extreme values are the most likely to be
/// anomalous, so they carry no weight. Requires m >= 3.
OwaWeights drop_extremes_weights(int m);

/// Ordered weighted average: sorts `values` descending and takes the dot
/// product with `weights`. Ties are irrelevant to the result.
double owa(std::span<const double> values, const OwaWeights& weights);

enum class PerformanceLabel { S, LA, A, VA, B };

const char* to_string(PerformanceLabel label);
const char* long_name(PerformanceLabel label);
PerformanceLabel label_from_string(const std::string& text);

/// Cut points of the linguistic scale. The epsilon comparison absorbs
/// floating-point residue in aggregates built from exactly-0/1 memberships.
struct LabelThresholds {
  double lightly_anomalous = 0.75;
  double anomalous = 0.45;
  double epsilon = 1e-9;
};

/// Total map from a global degree y in [0,1] to its linguistic label:
/// S at the top, B at the bottom, LA/A/VA between.
PerformanceLabel linguistic_label(double y, const LabelThresholds& thresholds = {});

}  // namespace pvwatch
