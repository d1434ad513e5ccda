#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pvwatch/date.hpp"
#include "pvwatch/fuzzy.hpp"

namespace pvwatch {

/// Facility condition tracked day over day. SBC and KO are the alert states.
enum class FacilityState { OK, NRC, SBC, KO };

const char* to_string(FacilityState state);
const char* long_name(FacilityState state);
FacilityState state_from_string(const std::string& text);

/// Alert iff the state asks for action (SBC or KO).
bool to_alert(FacilityState state);

constexpr FacilityState kInitialState = FacilityState::OK;

/// One transition of the facility state machine.
FacilityState step(FacilityState current, PerformanceLabel label);

/// Folds `step` over a label sequence. An absent label (no assessment that
/// day) holds the state: missing data is not evidence either way.
std::vector<FacilityState> run_trace(FacilityState initial,
                                     std::span<const std::optional<PerformanceLabel>> labels);

/// Per-facility state history persisted between runs, keyed by facility and
/// assessed date. Re-running a day overwrites its entry with the same value,
/// so repeated runs are idempotent.
class StateFile {
 public:
  static StateFile load(const std::string& path);
  void save(const std::string& path) const;

  /// State to fold from when assessing `date`: the most recent entry strictly
  /// before it, or the machine's initial state for an unseen facility.
  FacilityState state_before(const std::string& facility, Date date) const;

  void record(const std::string& facility, Date date, FacilityState state);

  std::optional<FacilityState> at(const std::string& facility, Date date) const;

  const std::map<std::pair<std::string, Date>, FacilityState>& entries() const {
    return entries_;
  }

 private:
  std::map<std::pair<std::string, Date>, FacilityState> entries_;
};

}  // namespace pvwatch
