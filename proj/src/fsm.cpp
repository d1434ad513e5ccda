#include "pvwatch/fsm.hpp"

#include <fstream>
#include <stdexcept>

#include <sys/file.h>

#include <nlohmann/json.hpp>

namespace pvwatch {

namespace {

// Scoped advisory lock so concurrent runs serialize on the state file.
class FileLock {
 public:
  explicit FileLock(const std::string& path) {
    file_ = std::fopen((path + ".lock").c_str(), "w");
    if (file_ != nullptr) {
      flock(fileno(file_), LOCK_EX);
    }
  }
  ~FileLock() {
    if (file_ != nullptr) {
      flock(fileno(file_), LOCK_UN);
      std::fclose(file_);
    }
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  std::FILE* file_ = nullptr;
};

}  // namespace

const char* to_string(FacilityState state) {
  switch (state) {
    case FacilityState::OK: return "OK";
    case FacilityState::NRC: return "NRC";
    case FacilityState::SBC: return "SBC";
    case FacilityState::KO: return "KO";
  }
  return "?";
}

const char* long_name(FacilityState state) {
  switch (state) {
    case FacilityState::OK: return "works properly";
    case FacilityState::NRC: return "no reason to check";
    case FacilityState::SBC: return "should be checked";
    case FacilityState::KO: return "does not work";
  }
  return "?";
}

FacilityState state_from_string(const std::string& text) {
  if (text == "OK") return FacilityState::OK;
  if (text == "NRC") return FacilityState::NRC;
  if (text == "SBC") return FacilityState::SBC;
  if (text == "KO") return FacilityState::KO;
  throw std::invalid_argument("unknown facility state '" + text + "'");
}

bool to_alert(FacilityState state) {
  return state == FacilityState::SBC || state == FacilityState::KO;
}

FacilityState step(FacilityState current, PerformanceLabel label) {
  // Rows by current state, columns by input label B, VA, A, LA, S.
  using S = FacilityState;
  static constexpr S table[4][5] = {
      /* OK  */ {S::KO, S::SBC, S::NRC, S::NRC, S::OK},
      /* NRC */ {S::KO, S::SBC, S::SBC, S::NRC, S::OK},
      /* SBC */ {S::KO, S::KO, S::SBC, S::NRC, S::OK},
      /* KO  */ {S::KO, S::KO, S::KO, S::SBC, S::NRC},
  };
  const int row = static_cast<int>(current);
  int col = 0;
  switch (label) {
    case PerformanceLabel::B: col = 0; break;
    case PerformanceLabel::VA: col = 1; break;
    case PerformanceLabel::A: col = 2; break;
    case PerformanceLabel::LA: col = 3; break;
    case PerformanceLabel::S: col = 4; break;
  }
  return table[row][col];
}

std::vector<FacilityState> run_trace(FacilityState initial,
                                     std::span<const std::optional<PerformanceLabel>> labels) {
  std::vector<FacilityState> states;
  states.reserve(labels.size());
  FacilityState current = initial;
  for (const auto& label : labels) {
    if (label) {
      current = step(current, *label);
    }
    states.push_back(current);
  }
  return states;
}

StateFile StateFile::load(const std::string& path) {
  FileLock lock(path);
  StateFile file;
  std::ifstream in(path);
  if (!in) {
    return file;  // first run: nothing recorded yet
  }
  nlohmann::json doc = nlohmann::json::parse(in);
  if (doc.at("version").get<int>() != 1) {
    throw std::runtime_error("unsupported state file version");
  }
  for (const auto& entry : doc.at("states")) {
    file.entries_[{entry.at("facility").get<std::string>(),
                   Date::parse(entry.at("as_of_date").get<std::string>())}] =
        state_from_string(entry.at("state").get<std::string>());
  }
  return file;
}

void StateFile::save(const std::string& path) const {
  FileLock lock(path);
  nlohmann::json states = nlohmann::json::array();
  for (const auto& [key, state] : entries_) {
    states.push_back({{"facility", key.first},
                      {"state", to_string(state)},
                      {"as_of_date", key.second.to_string()}});
  }
  nlohmann::json doc{{"version", 1}, {"states", std::move(states)}};
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write state file '" + path + "'");
  }
  out << doc.dump(2) << '\n';
}

FacilityState StateFile::state_before(const std::string& facility, Date date) const {
  const auto it = entries_.lower_bound({facility, date});
  if (it == entries_.begin()) {
    return kInitialState;
  }
  const auto prev = std::prev(it);
  if (prev->first.first != facility) {
    return kInitialState;
  }
  return prev->second;
}

void StateFile::record(const std::string& facility, Date date, FacilityState state) {
  entries_[{facility, date}] = state;
}

std::optional<FacilityState> StateFile::at(const std::string& facility, Date date) const {
  const auto it = entries_.find({facility, date});
  if (it == entries_.end()) {
    return std::nullopt;
  }
  return it->second;
}

}  // namespace pvwatch
