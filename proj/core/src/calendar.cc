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

#include "tempex/calendar.h"

#include <charconv>
#include <cstdio>

#include "tempex/error.h"

namespace tempex {

using namespace std::chrono;

namespace {

bool ParseFixed(std::string_view s, size_t pos, size_t len, int* out) {
  if (pos + len > s.size()) return false;
  for (size_t i = pos; i < pos + len; ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  std::from_chars(s.data() + pos, s.data() + pos + len, *out);
  return true;
}

}  // namespace

Anchor Anchor::Parse(std::string_view iso) {
  auto fail = [&]() -> Anchor {
    throw Error("invalid ISO-8601 date: '" + std::string(iso) + "'");
  };
  int y, m, d;
  if (iso.size() < 10 || iso[4] != '-' || iso[7] != '-' ||
      !ParseFixed(iso, 0, 4, &y) || !ParseFixed(iso, 5, 2, &m) ||
      !ParseFixed(iso, 8, 2, &d)) {
    return fail();
  }
  Anchor anchor{Date{year{y}, month{static_cast<unsigned>(m)},
                     day{static_cast<unsigned>(d)}},
                std::nullopt};
  if (!anchor.date.ok()) return fail();
  if (iso.size() == 10) return anchor;

  int hh, mm, ss = 0;
  if (iso[10] != 'T' || !ParseFixed(iso, 11, 2, &hh) || iso.size() < 16 ||
      iso[13] != ':' || !ParseFixed(iso, 14, 2, &mm)) {
    return fail();
  }
  if (iso.size() == 19) {
    if (iso[16] != ':' || !ParseFixed(iso, 17, 2, &ss)) return fail();
  } else if (iso.size() != 16) {
    return fail();
  }
  if (hh > 23 || mm > 59 || ss > 59) return fail();
  anchor.time_of_day = hours{hh} + minutes{mm};
  return anchor;
}

std::string Anchor::ToIso() const {
  std::string out = FormatDate(date);
  if (time_of_day) {
    char buf[48];
    auto total = time_of_day->count();
    std::snprintf(buf, sizeof(buf), "T%02lld:%02lld",
                  static_cast<long long>(total / 60),
                  static_cast<long long>(total % 60));
    out += buf;
  }
  return out;
}

Date AddPeriod(Date date, long n, PeriodUnit unit) {
  switch (unit) {
    case PeriodUnit::kDay:
      return Date{sys_days{date} + days{n}};
    case PeriodUnit::kWeek:
      return Date{sys_days{date} + days{7 * n}};
    case PeriodUnit::kMonth:
    case PeriodUnit::kYear: {
      Date shifted = unit == PeriodUnit::kMonth ? date + months{n}
                                                : date + years{n};
      if (!shifted.ok()) {
        // Day of month overflowed the target month: clamp.
        shifted = shifted.year() / shifted.month() / last;
      }
      return shifted;
    }
  }
  return date;
}

Date ResolveWeekday(weekday target, WeekdayDirection direction, Date anchor) {
  const sys_days base{anchor};
  const weekday current{base};
  switch (direction) {
    case WeekdayDirection::kLast: {
      auto back = current - target;  // in [0, 6]
      return Date{base - (back == days{0} ? days{7} : back)};
    }
    case WeekdayDirection::kNext: {
      auto ahead = target - current;
      return Date{base + (ahead == days{0} ? days{7} : ahead)};
    }
    case WeekdayDirection::kNearestPast:
      return Date{base - (current - target)};
    case WeekdayDirection::kNearestFuture:
      return Date{base + (target - current)};
  }
  return anchor;
}

IsoWeek IsoWeekOf(Date date) {
  // The ISO week belongs to the year containing its Thursday.
  const sys_days day_point{date};
  const weekday wd{day_point};
  const unsigned iso_day = wd.iso_encoding();  // Monday = 1
  const sys_days thursday = day_point + days{4 - static_cast<int>(iso_day)};
  const Date thursday_date{thursday};
  const sys_days jan1{thursday_date.year() / January / 1};
  const auto ordinal = (thursday - jan1).count();
  return IsoWeek{static_cast<int>(thursday_date.year()),
                 static_cast<unsigned>(ordinal / 7 + 1)};
}

std::string FormatYear(int y) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d", y);
  return buf;
}

std::string FormatYearMonth(Date date) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%04d-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()));
  return buf;
}

std::string FormatDate(Date date) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u",
                static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()),
                static_cast<unsigned>(date.day()));
  return buf;
}

std::string FormatIsoWeek(IsoWeek week) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%04d-W%02u", week.year, week.week);
  return buf;
}

}  // namespace tempex
