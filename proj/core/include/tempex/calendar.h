// Copyright 2026 The tempex Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Proleptic Gregorian calendar helpers used to anchor relative expressions.

#ifndef TEMPEX_CALENDAR_H_
#define TEMPEX_CALENDAR_H_

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace tempex {

using Date = std::chrono::year_month_day;

// Document creation time: a calendar date with an optional time of day.
struct Anchor {
  Date date;
  std::optional<std::chrono::minutes> time_of_day;

  // Accepts YYYY-MM-DD, optionally followed by Thh:mm or Thh:mm:ss
  // (seconds are dropped). Throws Error on anything else.
  static Anchor Parse(std::string_view iso);

  std::string ToIso() const;

  bool operator==(const Anchor&) const = default;
};

enum class PeriodUnit { kDay, kWeek, kMonth, kYear };

// Calendar arithmetic. Month and year steps clamp the day of month to the
// length of the target month (Jan 31 + 1 month = Feb 28/29).
Date AddPeriod(Date date, long n, PeriodUnit unit);

enum class WeekdayDirection {
  kLast,           // latest matching date strictly before the anchor
  kNext,           // earliest matching date strictly after the anchor
  kNearestPast,    // latest matching date on or before the anchor
  kNearestFuture,  // earliest matching date on or after the anchor
};

Date ResolveWeekday(std::chrono::weekday day, WeekdayDirection direction,
                    Date anchor);

struct IsoWeek {
  int year;
  unsigned week;
};
IsoWeek IsoWeekOf(Date date);

std::string FormatYear(int year);           // YYYY
std::string FormatYearMonth(Date date);     // YYYY-MM
std::string FormatDate(Date date);          // YYYY-MM-DD
std::string FormatIsoWeek(IsoWeek week);    // YYYY-Wnn

}  // namespace tempex

#endif  // TEMPEX_CALENDAR_H_
