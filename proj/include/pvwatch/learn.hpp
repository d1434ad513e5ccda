#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pvwatch/date.hpp"
#include "pvwatch/fuzzy.hpp"
#include "pvwatch/ingest.hpp"

namespace pvwatch {

/// How a pair's interval was obtained.
enum class Provenance { Direct, Swapped, SymmetryDerived, Step };

const char* to_string(Provenance provenance);
Provenance provenance_from_string(const std::string& text);

/// Training relative differences for one ordered facility pair (i, k),
/// split by day kind. Only days where the difference is defined contribute.
struct PairSamples {
  std::vector<double> incorrect_correct;  // i incorrect, k correct
  std::vector<double> correct_correct;    // both correct
};

struct RawInterval {
  std::optional<double> a;  // greatest anomalous difference
  std::optional<double> b;  // least suitable difference
};

struct ResolvedInterval {
  double a = 0;
  double b = 0;
  bool swapped = false;
};

/// a = max over incorrect/correct days, b = min over correct/correct days;
/// either is absent when its day set is empty.
RawInterval raw_interval(const PairSamples& samples);
RawInterval raw_interval(const std::string& facility_i, const std::string& facility_k,
                         const DailySeries& series, const DayLabelSet& labels);

/// Orders the interval. a < b passes through; a >= b signals mislabeled
/// training days, and the roles of the two bounds are exchanged
/// (a from the correct/correct minimum, b from the incorrect/correct maximum).
ResolvedInterval resolve_inconsistency(double a, double b, const PairSamples& samples);

/// Mirror-derived lower bound: a_ik = b_ik - (b_ki - a_ki), so the interval
/// width matches the opposite direction's.
double symmetry_fallback(double b_ik, double a_ki, double b_ki);

struct PairInterval {
  double a = 0;
  double b = 0;
  Provenance provenance = Provenance::Direct;
};

/// Learned pairwise interval parameters for the whole fleet.
class IntervalModel {
 public:
  IntervalModel() = default;
  IntervalModel(std::vector<std::string> facilities, Date trained_from, Date trained_to)
      : facilities_(std::move(facilities)), trained_from_(trained_from), trained_to_(trained_to) {}

  const std::vector<std::string>& facilities() const { return facilities_; }
  Date trained_from() const { return trained_from_; }
  Date trained_to() const { return trained_to_; }

  void set_pair(const std::string& i, const std::string& k, PairInterval interval) {
    pairs_[{i, k}] = interval;
  }
  const PairInterval& pair(const std::string& i, const std::string& k) const;

  MembershipFunction membership(const std::string& i, const std::string& k) const;

  std::string to_json() const;
  static IntervalModel from_json(const std::string& text);

  void save(const std::string& path) const;
  static IntervalModel load(const std::string& path);

  bool operator==(const IntervalModel&) const;

 private:
  std::vector<std::string> facilities_;
  Date trained_from_;
  Date trained_to_;
  std::map<std::pair<std::string, std::string>, PairInterval> pairs_;
};

/// Derives every ordered pair's interval from the labeled days: raw bounds
/// first, then mirror symmetry or the degenerate step for missing bounds,
/// with the inconsistency exchange applied where the raw bounds are
/// misordered. Throws if a pair has no usable labeled days at all.
IntervalModel learn_intervals(const DailySeries& series, const DayLabelSet& labels);

}  // namespace pvwatch
