#pragma once

#include <chrono>
#include <compare>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace pvwatch {

/// Opaque calendar day. No time zones, no DST arithmetic: a date is an
/// index into the civil calendar and nothing more.
class Date {
 public:
  Date() = default;

  Date(int year, unsigned month, unsigned day) {
    const std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                                          std::chrono::day{day}};
    if (!ymd.ok()) {
      throw std::invalid_argument("invalid calendar date");
    }
    days_ = std::chrono::sys_days{ymd};
  }

  /// Parses strict ISO-8601 `YYYY-MM-DD`.
  static Date parse(const std::string& text) {
    int y = 0;
    unsigned m = 0, d = 0;
    char tail = '\0';
    if (std::sscanf(text.c_str(), "%4d-%2u-%2u%c", &y, &m, &d, &tail) != 3 ||
        text.size() != 10 || text[4] != '-' || text[7] != '-') {
      throw std::invalid_argument("expected date as YYYY-MM-DD, got '" + text + "'");
    }
    return Date{y, m, d};
  }

  std::string to_string() const {
    const std::chrono::year_month_day ymd{days_};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
  }

  Date next() const { return Date{days_ + std::chrono::days{1}}; }
  Date prev() const { return Date{days_ - std::chrono::days{1}}; }

  Date plus_days(int n) const { return Date{days_ + std::chrono::days{n}}; }

  /// Whole days from `other` to `*this`.
  int operator-(const Date& other) const {
    return static_cast<int>((days_ - other.days_).count());
  }

  auto operator<=>(const Date&) const = default;

 private:
  explicit Date(std::chrono::sys_days d) : days_(d) {}

  std::chrono::sys_days days_{};
};

}  // namespace pvwatch
