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

#include "sdc/value.h"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "sdc/error.h"

namespace sdc {
namespace {

constexpr int64_t kSecondsPerDay = 86400;

bool ParseDigits(std::string_view text, int& out) {
  if (text.empty()) return false;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kParse: return "parse_error";
    case ErrorCode::kNotFound: return "not_found";
    case ErrorCode::kFailedPrecondition: return "failed_precondition";
    case ErrorCode::kSchemaMismatch: return "schema_mismatch";
    case ErrorCode::kEmptySubset: return "empty_subset";
  }
  return "unknown";
}

std::string_view KindName(ValueKind kind) {
  switch (kind) {
    case ValueKind::kNumeric: return "Numeric";
    case ValueKind::kCategorical: return "Categorical";
    case ValueKind::kDate: return "Date";
    case ValueKind::kDateTime: return "DateTime";
    case ValueKind::kIdentifier: return "Identifier";
  }
  return "?";
}

ValueKind ParseKind(std::string_view name) {
  for (ValueKind k : {ValueKind::kNumeric, ValueKind::kCategorical,
                      ValueKind::kDate, ValueKind::kDateTime,
                      ValueKind::kIdentifier}) {
    if (KindName(k) == name) return k;
  }
  Fail(ErrorCode::kInvalidArgument,
       "unknown value kind '" + std::string(name) + "'");
}

Date DateTime::day() const { return Date{FloorDiv(seconds, kSecondsPerDay)}; }

int64_t DateTime::second_of_day() const {
  return seconds - FloorDiv(seconds, kSecondsPerDay) * kSecondsPerDay;
}

Date MakeDate(int year, unsigned month, unsigned day) {
  using namespace std::chrono;
  year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                     std::chrono::day{day}};
  if (!ymd.ok()) {
    Fail(ErrorCode::kInvalidArgument, "invalid calendar date");
  }
  return Date{sys_days{ymd}.time_since_epoch().count()};
}

std::optional<Date> ParseDate(std::string_view text) {
  // YYYY/MM/DD or YYYY-MM-DD, fixed width.
  if (text.size() != 10) return std::nullopt;
  char sep = text[4];
  if ((sep != '/' && sep != '-') || text[7] != sep) return std::nullopt;
  int y, m, d;
  if (!ParseDigits(text.substr(0, 4), y) || !ParseDigits(text.substr(5, 2), m) ||
      !ParseDigits(text.substr(8, 2), d)) {
    return std::nullopt;
  }
  using namespace std::chrono;
  year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(m)},
                     std::chrono::day{unsigned(d)}};
  if (!ymd.ok()) return std::nullopt;
  return Date{sys_days{ymd}.time_since_epoch().count()};
}

std::optional<DateTime> ParseDateTime(std::string_view text) {
  if (text.size() != 19 || (text[10] != ' ' && text[10] != 'T')) {
    return std::nullopt;
  }
  auto date = ParseDate(text.substr(0, 10));
  if (!date) return std::nullopt;
  std::string_view clock = text.substr(11);
  if (clock[2] != ':' || clock[5] != ':') return std::nullopt;
  int h, mi, s;
  if (!ParseDigits(clock.substr(0, 2), h) ||
      !ParseDigits(clock.substr(3, 2), mi) ||
      !ParseDigits(clock.substr(6, 2), s)) {
    return std::nullopt;
  }
  if (h > 23 || mi > 59 || s > 59) return std::nullopt;
  return DateTime{date->days * kSecondsPerDay + h * 3600 + mi * 60 + s};
}

std::optional<double> ParseNumber(std::string_view text) {
  if (text.empty()) return std::nullopt;
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (*begin == '+') ++begin;
  double v = 0;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

std::string FormatDate(Date d) {
  using namespace std::chrono;
  year_month_day ymd{sys_days{days{d.days}}};
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d/%02u/%02u", int(ymd.year()),
                unsigned(ymd.month()), unsigned(ymd.day()));
  return buf;
}

std::string FormatDateTime(DateTime t) {
  int64_t sod = t.second_of_day();
  char buf[16];
  std::snprintf(buf, sizeof(buf), " %02d:%02d:%02d", int(sod / 3600),
                int(sod / 60 % 60), int(sod % 60));
  return FormatDate(t.day()) + buf;
}

std::string FormatNumber(double v) {
  if (v == 0) return "0";  // also folds -0
  if (std::nearbyint(v) == v && std::fabs(v) < 9.0e15) {
    return std::to_string(static_cast<long long>(v));
  }
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string FormatValue(const Value& v) {
  struct Visitor {
    std::string operator()(const Missing& m) const { return m.token; }
    std::string operator()(double d) const { return FormatNumber(d); }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(Date d) const { return FormatDate(d); }
    std::string operator()(DateTime t) const { return FormatDateTime(t); }
  };
  return std::visit(Visitor{}, v);
}

bool MatchesKind(const Value& v, ValueKind kind) {
  switch (kind) {
    case ValueKind::kNumeric:
      return IsMissing(v) || std::holds_alternative<double>(v);
    case ValueKind::kCategorical:
    case ValueKind::kIdentifier:
      return IsMissing(v) || std::holds_alternative<std::string>(v);
    case ValueKind::kDate:
      return IsMissing(v) || std::holds_alternative<Date>(v);
    case ValueKind::kDateTime:
      return IsMissing(v) || std::holds_alternative<DateTime>(v);
  }
  return false;
}

}  // namespace sdc
