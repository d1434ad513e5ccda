#include "pvwatch/learn.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "pvwatch/performance.hpp"

namespace pvwatch {

const char* to_string(Provenance provenance) {
  switch (provenance) {
    case Provenance::Direct: return "direct";
    case Provenance::Swapped: return "swapped";
    case Provenance::SymmetryDerived: return "symmetry_derived";
    case Provenance::Step: return "step";
  }
  return "?";
}

Provenance provenance_from_string(const std::string& text) {
  if (text == "direct") return Provenance::Direct;
  if (text == "swapped") return Provenance::Swapped;
  if (text == "symmetry_derived") return Provenance::SymmetryDerived;
  if (text == "step") return Provenance::Step;
  throw std::invalid_argument("unknown provenance '" + text + "'");
}

namespace {

PairSamples collect_samples(const std::string& facility_i, const std::string& facility_k,
                            const DailySeries& series, const DayLabelSet& labels) {
  PairSamples samples;
  for (const Date& date : series.dates()) {
    if (!series.usable(facility_i, date) || !series.usable(facility_k, date)) {
      continue;
    }
    const DayLabel label_i = labels.get(facility_i, date);
    const DayLabel label_k = labels.get(facility_k, date);
    if (label_k != DayLabel::Correct) {
      continue;
    }
    const double rho_i = daily_performance(facility_i, date, series, series.registry());
    const double rho_k = daily_performance(facility_k, date, series, series.registry());
    if (std::max(rho_i, rho_k) == 0) {
      continue;  // difference undefined; the day carries no signal
    }
    const double delta = relative_difference(rho_i, rho_k);
    if (label_i == DayLabel::Correct) {
      samples.correct_correct.push_back(delta);
    } else if (label_i == DayLabel::Incorrect) {
      samples.incorrect_correct.push_back(delta);
    }
  }
  return samples;
}

}  // namespace

RawInterval raw_interval(const PairSamples& samples) {
  RawInterval raw;
  if (!samples.incorrect_correct.empty()) {
    raw.a = *std::max_element(samples.incorrect_correct.begin(),
                              samples.incorrect_correct.end());
  }
  if (!samples.correct_correct.empty()) {
    raw.b = *std::min_element(samples.correct_correct.begin(), samples.correct_correct.end());
  }
  return raw;
}

RawInterval raw_interval(const std::string& facility_i, const std::string& facility_k,
                         const DailySeries& series, const DayLabelSet& labels) {
  return raw_interval(collect_samples(facility_i, facility_k, series, labels));
}

ResolvedInterval resolve_inconsistency(double a, double b, const PairSamples& samples) {
  if (a < b) {
    return ResolvedInterval{a, b, false};
  }
  // Mislabeled days inverted the bounds; recompute with the roles exchanged.
  const double exchanged_a =
      *std::min_element(samples.correct_correct.begin(), samples.correct_correct.end());
  const double exchanged_b =
      *std::max_element(samples.incorrect_correct.begin(), samples.incorrect_correct.end());
  if (exchanged_a > exchanged_b) {
    throw std::runtime_error("irreconcilable label inconsistency: exchanged bounds " +
                             std::to_string(exchanged_a) + " > " + std::to_string(exchanged_b));
  }
  return ResolvedInterval{exchanged_a, exchanged_b, true};
}

double symmetry_fallback(double b_ik, double a_ki, double b_ki) {
  if (b_ki < a_ki) {
    throw std::logic_error("mirror interval is unordered");
  }
  return b_ik - (b_ki - a_ki);
}

const PairInterval& IntervalModel::pair(const std::string& i, const std::string& k) const {
  const auto it = pairs_.find({i, k});
  if (it == pairs_.end()) {
    throw std::out_of_range("no interval for pair (" + i + ", " + k + ")");
  }
  return it->second;
}

MembershipFunction IntervalModel::membership(const std::string& i, const std::string& k) const {
  const PairInterval& p = pair(i, k);
  return MembershipFunction::from_interval(p.a, p.b);
}

std::string IntervalModel::to_json() const {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [key, interval] : pairs_) {
    pairs.push_back({{"i", key.first},
                     {"k", key.second},
                     {"a", interval.a},
                     {"b", interval.b},
                     {"provenance", to_string(interval.provenance)}});
  }
  nlohmann::json doc{{"version", 1},
                     {"facilities", facilities_},
                     {"pairs", std::move(pairs)},
                     {"trained_from", trained_from_.to_string()},
                     {"trained_to", trained_to_.to_string()}};
  return doc.dump(2) + "\n";
}

IntervalModel IntervalModel::from_json(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text);
  if (doc.at("version").get<int>() != 1) {
    throw std::runtime_error("unsupported model version");
  }
  IntervalModel model(doc.at("facilities").get<std::vector<std::string>>(),
                      Date::parse(doc.at("trained_from").get<std::string>()),
                      Date::parse(doc.at("trained_to").get<std::string>()));
  for (const auto& entry : doc.at("pairs")) {
    PairInterval interval{entry.at("a").get<double>(), entry.at("b").get<double>(),
                          provenance_from_string(entry.at("provenance").get<std::string>())};
    if (interval.a > interval.b) {
      throw std::runtime_error("model pair has a > b");
    }
    model.set_pair(entry.at("i").get<std::string>(), entry.at("k").get<std::string>(), interval);
  }
  return model;
}

void IntervalModel::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write model file '" + path + "'");
  }
  out << to_json();
}

IntervalModel IntervalModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot read model file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json(buffer.str());
}

bool IntervalModel::operator==(const IntervalModel& other) const {
  auto key = [](const IntervalModel& m) {
    return std::make_tuple(m.facilities_, m.trained_from_, m.trained_to_);
  };
  if (key(*this) != key(other) || pairs_.size() != other.pairs_.size()) {
    return false;
  }
  for (const auto& [k, v] : pairs_) {
    const auto it = other.pairs_.find(k);
    if (it == other.pairs_.end() || it->second.a != v.a || it->second.b != v.b ||
        it->second.provenance != v.provenance) {
      return false;
    }
  }
  return true;
}

IntervalModel learn_intervals(const DailySeries& series, const DayLabelSet& labels) {
  const auto& facilities = series.facilities();
  if (facilities.size() < 2) {
    throw std::invalid_argument("interval learning needs at least 2 facilities");
  }

  // Training window: the labeled, usable days that can contribute anywhere.
  std::optional<Date> from, to;
  for (const auto& [key, label] : labels.entries()) {
    if (label == DayLabel::Unlabeled || !series.usable(key.first, key.second)) {
      continue;
    }
    if (!from || key.second < *from) from = key.second;
    if (!to || key.second > *to) to = key.second;
  }
  if (!from) {
    throw std::invalid_argument("training window is empty: no usable labeled days");
  }

  struct PairState {
    PairSamples samples;
    RawInterval raw;
    std::optional<PairInterval> resolved;
  };
  std::map<std::pair<std::string, std::string>, PairState> states;

  // Pass 1: raw bounds everywhere, then resolve the pairs with both bounds.
  for (const auto& i : facilities) {
    for (const auto& k : facilities) {
      if (i == k) {
        continue;
      }
      PairState state;
      state.samples = collect_samples(i, k, series, labels);
      state.raw = raw_interval(state.samples);
      if (state.raw.a && state.raw.b) {
        const ResolvedInterval r = resolve_inconsistency(*state.raw.a, *state.raw.b,
                                                         state.samples);
        state.resolved = PairInterval{r.a, r.b,
                                      r.swapped ? Provenance::Swapped : Provenance::Direct};
      }
      states[{i, k}] = std::move(state);
    }
  }

  // Pass 2: fall back for the missing bounds, referencing pass-1 results.
  IntervalModel model(facilities, *from, *to);
  for (auto& [key, state] : states) {
    if (!state.resolved) {
      const auto& [i, k] = key;
      if (!state.raw.a && state.raw.b) {
        const PairState& mirror = states.at({k, i});
        if (mirror.raw.a && mirror.raw.b) {
          // Incorrect days exist in the opposite direction: derive by
          // symmetry from the mirror's pass-1 interval.
          const double a =
              symmetry_fallback(*state.raw.b, mirror.resolved->a, mirror.resolved->b);
          state.resolved = PairInterval{a, *state.raw.b, Provenance::SymmetryDerived};
        } else {
          // No incorrect-day information in either direction: step at b.
          state.resolved = PairInterval{*state.raw.b, *state.raw.b, Provenance::Step};
        }
      } else if (state.raw.a && !state.raw.b) {
        state.resolved = PairInterval{*state.raw.a, *state.raw.a, Provenance::Step};
      } else {
        throw std::runtime_error("pair (" + i + ", " + k +
                                 ") has no usable labeled days to learn from");
      }
    }
    model.set_pair(key.first, key.second, *state.resolved);
  }
  return model;
}

}  // namespace pvwatch
