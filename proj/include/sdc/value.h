//
// Copyright 2026 The sdcwork Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef SDC_VALUE_H_
#define SDC_VALUE_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace sdc {

enum class ValueKind { kNumeric, kCategorical, kDate, kDateTime, kIdentifier };

std::string_view KindName(ValueKind kind);
ValueKind ParseKind(std::string_view name);

// True for kinds with a natural total order usable in <, <=, >, >=.
inline bool IsOrderedKind(ValueKind kind) {
  return kind == ValueKind::kNumeric || kind == ValueKind::kDate ||
         kind == ValueKind::kDateTime;
}

// Calendar day, counted from 1970-01-01.
struct Date {
  int64_t days = 0;
  friend auto operator<=>(const Date&, const Date&) = default;
};

// Second-resolution timestamp, counted from 1970-01-01 00:00:00.
struct DateTime {
  int64_t seconds = 0;
  Date day() const;
  int64_t second_of_day() const;
  friend auto operator<=>(const DateTime&, const DateTime&) = default;
};

// A missing cell remembers the token it was read from (or suppressed with) so
// that export reproduces it. Metrics treat every Missing as one value.
struct Missing {
  std::string token = "Unknown";
  friend auto operator<=>(const Missing&, const Missing&) = default;
};

using Value = std::variant<Missing, double, std::string, Date, DateTime>;

inline bool IsMissing(const Value& v) {
  return std::holds_alternative<Missing>(v);
}

// Calendar helpers. Dates render as YYYY/MM/DD; both '/' and '-' separators
// are accepted on input.
Date MakeDate(int year, unsigned month, unsigned day);
std::optional<Date> ParseDate(std::string_view text);
std::optional<DateTime> ParseDateTime(std::string_view text);
std::optional<double> ParseNumber(std::string_view text);
std::string FormatDate(Date d);
std::string FormatDateTime(DateTime t);
// Integral values print without a fractional part; everything else uses the
// shortest representation that round-trips.
std::string FormatNumber(double v);

std::string FormatValue(const Value& v);

// True when the stored alternative is the one `kind` requires (or missing).
bool MatchesKind(const Value& v, ValueKind kind);

// Floor division for calendar arithmetic on negative offsets.
constexpr int64_t FloorDiv(int64_t a, int64_t b) {
  int64_t q = a / b;
  return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

}  // namespace sdc

#endif  // SDC_VALUE_H_
