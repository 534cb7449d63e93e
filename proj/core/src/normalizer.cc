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

#include "tempex/normalizer.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>

#include "tempex/error.h"
#include "tempex/lexicon.h"
#include "tempex/tokenizer.h"

namespace tempex {

using namespace std::chrono;

namespace {

// ---------------------------------------------------------------------------
// Lexical tables

const std::map<std::string, long, std::less<>>& NumberWords() {
  static const std::map<std::string, long, std::less<>> words = {
      {"zero", 0},     {"one", 1},        {"two", 2},        {"three", 3},
      {"four", 4},     {"five", 5},       {"six", 6},        {"seven", 7},
      {"eight", 8},    {"nine", 9},       {"ten", 10},       {"eleven", 11},
      {"twelve", 12},  {"thirteen", 13},  {"fourteen", 14},  {"fifteen", 15},
      {"sixteen", 16}, {"seventeen", 17}, {"eighteen", 18},  {"nineteen", 19},
      {"twenty", 20},  {"thirty", 30},    {"forty", 40},     {"fifty", 50},
      {"sixty", 60},   {"seventy", 70},   {"eighty", 80},    {"ninety", 90},
      {"hundred", 100}, {"dozen", 12},    {"a", 1},          {"an", 1},
  };
  return words;
}

const std::map<std::string, long, std::less<>>& OrdinalWords() {
  static const std::map<std::string, long, std::less<>> words = {
      {"first", 1},        {"second", 2},       {"third", 3},
      {"fourth", 4},       {"fifth", 5},        {"sixth", 6},
      {"seventh", 7},      {"eighth", 8},       {"ninth", 9},
      {"tenth", 10},       {"eleventh", 11},    {"twelfth", 12},
      {"thirteenth", 13},  {"fourteenth", 14},  {"fifteenth", 15},
      {"sixteenth", 16},   {"seventeenth", 17}, {"eighteenth", 18},
      {"nineteenth", 19},  {"twentieth", 20},   {"thirtieth", 30},
  };
  return words;
}

const std::map<std::string, unsigned, std::less<>>& MonthNames() {
  static const std::map<std::string, unsigned, std::less<>> months = {
      {"january", 1},   {"jan", 1},  {"february", 2}, {"feb", 2},
      {"march", 3},     {"mar", 3},  {"april", 4},    {"apr", 4},
      {"may", 5},       {"june", 6}, {"jun", 6},      {"july", 7},
      {"jul", 7},       {"august", 8}, {"aug", 8},    {"september", 9},
      {"sep", 9},       {"sept", 9}, {"october", 10}, {"oct", 10},
      {"november", 11}, {"nov", 11}, {"december", 12}, {"dec", 12},
  };
  return months;
}

const std::map<std::string, unsigned, std::less<>>& WeekdayNames() {
  // C encoding: Sunday = 0.
  static const std::map<std::string, unsigned, std::less<>> days = {
      {"sunday", 0},   {"sun", 0},   {"monday", 1},   {"mon", 1},
      {"tuesday", 2},  {"tue", 2},   {"tues", 2},     {"wednesday", 3},
      {"wed", 3},      {"thursday", 4}, {"thu", 4},   {"thur", 4},
      {"thurs", 4},    {"friday", 5}, {"fri", 5},     {"saturday", 6},
      {"sat", 6},
  };
  return days;
}

std::string Alternation(const std::vector<std::string>& words) {
  // Longest first so that prefixes never shadow a full word.
  std::vector<std::string> sorted = words;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const std::string& a, const std::string& b) {
                     return a.size() > b.size();
                   });
  std::string out;
  for (const std::string& w : sorted) {
    if (!out.empty()) out += '|';
    out += w;
  }
  return out;
}

template <typename Map>
std::vector<std::string> Keys(const Map& map) {
  std::vector<std::string> keys;
  for (const auto& [k, v] : map) keys.push_back(k);
  return keys;
}

const std::map<std::string, std::string, std::less<>>& Atoms() {
  static const std::map<std::string, std::string, std::less<>> atoms = [] {
    const std::string tens = "twenty|thirty|forty|fifty|sixty|seventy|eighty|ninety";
    const std::string ones = "one|two|three|four|five|six|seven|eight|nine";
    const std::string ordinal_ones =
        "first|second|third|fourth|fifth|sixth|seventh|eighth|ninth";
    std::vector<std::string> number_words = Keys(NumberWords());
    const std::string num = "(?:\\d+|(?:" + tens + ")-(?:" + ones + ")|" +
                            Alternation(number_words) + ")";
    const std::string ordinal_word =
        "(?:(?:twenty|thirty)-(?:" + ordinal_ones + ")|" +
        Alternation(Keys(OrdinalWords())) + ")";
    std::map<std::string, std::string, std::less<>> m;
    m["NUM"] = num;
    m["UNIT"] =
        "(?:seconds?|minutes?|hours?|days?|weeks?|fortnights?|months?|"
        "quarters?|years?|decades?|century|centuries)";
    m["MONTH"] = "(?:(?:" + Alternation(Keys(MonthNames())) + ")(?: \\.)?)";
    m["WEEKDAY"] = "(?:(?:" + Alternation(Keys(WeekdayNames())) + ")(?: \\.)?)";
    m["DAYNUM"] =
        "(?:(?:[12]\\d|3[01]|0?[1-9])(?:st|nd|rd|th)?|" + ordinal_word + ")";
    m["ORD"] = "(?:\\d+(?:st|nd|rd|th)|" + ordinal_word + ")";
    m["YEAR"] = "(?:\\d{4})";
    m["SEASON"] = "(?:spring|summer|autumn|fall|winter)";
    m["POD"] =
        "(?:morning|afternoon|evening|night|dawn|dusk|nightfall|daybreak|"
        "sunrise|sunset|overnight)";
    m["FUZZY"] =
        "(?:several|a few|few|some|many|a couple of|couple of|numerous|"
        "a number of)";
    m["AMPM"] = "(?:a\\.m\\.?|p\\.m\\.?|am|pm)";
    return m;
  }();
  return atoms;
}

std::string ExpandAtoms(const std::string& pattern) {
  std::string out;
  size_t i = 0;
  while (i < pattern.size()) {
    if (pattern[i] == '{') {
      const size_t close = pattern.find('}', i);
      if (close != std::string::npos) {
        const std::string name = pattern.substr(i + 1, close - i - 1);
        auto it = Atoms().find(name);
        if (it != Atoms().end()) {
          out += it->second;
          i = close + 1;
          continue;
        }
      }
    }
    out += pattern[i++];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing helpers for captured groups

std::string StripTrailingDot(std::string_view s) {
  std::string out(s);
  if (out.size() > 2 && out.ends_with(" .")) out.resize(out.size() - 2);
  return out;
}

std::optional<long> ParseDigits(std::string_view s) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    return std::nullopt;
  }
  return value;
}

std::optional<long> ParseNumber(std::string_view s) {
  if (auto v = ParseDigits(s)) return v;
  auto& words = NumberWords();
  if (auto it = words.find(s); it != words.end()) return it->second;
  const size_t dash = s.find('-');
  if (dash != std::string_view::npos) {
    auto tens = words.find(s.substr(0, dash));
    auto ones = words.find(s.substr(dash + 1));
    if (tens != words.end() && ones != words.end()) {
      return tens->second + ones->second;
    }
  }
  return std::nullopt;
}

std::optional<long> ParseOrdinal(std::string_view s) {
  if (s.size() > 2) {
    const std::string_view suffix = s.substr(s.size() - 2);
    if (suffix == "st" || suffix == "nd" || suffix == "rd" || suffix == "th") {
      if (auto v = ParseDigits(s.substr(0, s.size() - 2))) return v;
    }
  }
  if (auto v = ParseDigits(s)) return v;
  auto& words = OrdinalWords();
  if (auto it = words.find(s); it != words.end()) return it->second;
  const size_t dash = s.find('-');
  if (dash != std::string_view::npos) {
    auto tens = NumberWords().find(s.substr(0, dash));
    auto ones = words.find(s.substr(dash + 1));
    if (tens != NumberWords().end() && ones != words.end()) {
      return tens->second + ones->second;
    }
  }
  return std::nullopt;
}

std::optional<unsigned> ParseMonth(std::string_view s) {
  const std::string name = StripTrailingDot(s);
  auto it = MonthNames().find(name);
  if (it == MonthNames().end()) return std::nullopt;
  return it->second;
}

std::optional<weekday> ParseWeekday(std::string_view s) {
  const std::string name = StripTrailingDot(s);
  auto it = WeekdayNames().find(name);
  if (it == WeekdayNames().end()) return std::nullopt;
  return weekday{it->second};
}

int ExpandTwoDigitYear(long y) { return static_cast<int>(y < 50 ? 2000 + y : 1900 + y); }

std::optional<int> ParseYear(std::string_view s) {
  auto v = ParseDigits(s);
  if (!v) return std::nullopt;
  if (s.size() == 2) return ExpandTwoDigitYear(*v);
  if (s.size() == 4) return static_cast<int>(*v);
  return std::nullopt;
}

std::optional<Date> MakeDate(int y, long m, long d) {
  if (m < 1 || m > 12 || d < 1 || d > 31) return std::nullopt;
  Date date{year{y}, month{static_cast<unsigned>(m)},
            day{static_cast<unsigned>(d)}};
  if (!date.ok()) return std::nullopt;
  return date;
}

enum class Unit {
  kSecond, kMinute, kHour, kDay, kWeek, kFortnight, kMonth, kQuarter, kYear,
  kDecade, kCentury
};

std::optional<Unit> ParseUnit(std::string_view s) {
  static const std::map<std::string, Unit, std::less<>> units = {
      {"second", Unit::kSecond},   {"minute", Unit::kMinute},
      {"hour", Unit::kHour},       {"day", Unit::kDay},
      {"week", Unit::kWeek},       {"fortnight", Unit::kFortnight},
      {"month", Unit::kMonth},     {"quarter", Unit::kQuarter},
      {"year", Unit::kYear},       {"decade", Unit::kDecade},
      {"century", Unit::kCentury}, {"centuries", Unit::kCentury},
  };
  if (auto it = units.find(s); it != units.end()) return it->second;
  if (s.ends_with('s')) {
    if (auto it = units.find(s.substr(0, s.size() - 1)); it != units.end()) {
      return it->second;
    }
  }
  return std::nullopt;
}

bool IsClockUnit(Unit u) {
  return u == Unit::kSecond || u == Unit::kMinute || u == Unit::kHour;
}

// ISO 8601 period for n units; "X" for an unspecified amount.
std::string Period(const std::string& amount, Unit unit) {
  switch (unit) {
    case Unit::kSecond: return "PT" + amount + "S";
    case Unit::kMinute: return "PT" + amount + "M";
    case Unit::kHour: return "PT" + amount + "H";
    case Unit::kDay: return "P" + amount + "D";
    case Unit::kWeek: return "P" + amount + "W";
    case Unit::kFortnight:
      if (amount == "X") return "PXW";
      return "P" + std::to_string(2 * std::stol(amount)) + "W";
    case Unit::kMonth: return "P" + amount + "M";
    case Unit::kQuarter: return "P" + amount + "Q";
    case Unit::kYear: return "P" + amount + "Y";
    case Unit::kDecade: return "P" + amount + "DE";
    case Unit::kCentury: return "P" + amount + "CE";
  }
  return "P" + amount + "D";
}

std::string FormatDecade(long decade_index) {  // 199 for the 1990s
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%03ld", decade_index);
  return buf;
}

std::string FormatCentury(long century_index) {  // 19 for the 1900s
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%02ld", century_index);
  return buf;
}

std::string FormatQuarter(int y, unsigned q) {
  return FormatYear(y) + "-Q" + std::to_string(q);
}

std::string FormatClock(Date date, long hour, long minute) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "T%02ld:%02ld", hour, minute);
  return FormatDate(date) + buf;
}

// Date of `anchor` moved n units, rendered at the unit's granularity.
std::optional<Normalization> ShiftedValue(const Anchor& anchor, long n,
                                          Unit unit) {
  const Date base = anchor.date;
  const int y = static_cast<int>(base.year());
  switch (unit) {
    case Unit::kSecond:
    case Unit::kMinute:
    case Unit::kHour: {
      if (!anchor.time_of_day) {
        return Normalization{TimexType::kDate,
                             n < 0 ? "PAST_REF" : "FUTURE_REF", ""};
      }
      const long step = unit == Unit::kHour ? 60 : unit == Unit::kMinute ? 1 : 0;
      long total = anchor.time_of_day->count() + n * step;
      const long day_shift = total >= 0 ? total / 1440 : -((-total + 1439) / 1440);
      total -= day_shift * 1440;
      const Date date = AddPeriod(base, day_shift, PeriodUnit::kDay);
      return Normalization{TimexType::kTime,
                           FormatClock(date, total / 60, total % 60), ""};
    }
    case Unit::kDay:
      return Normalization{TimexType::kDate,
                           FormatDate(AddPeriod(base, n, PeriodUnit::kDay)), ""};
    case Unit::kWeek:
    case Unit::kFortnight: {
      const long weeks = unit == Unit::kFortnight ? 2 * n : n;
      return Normalization{
          TimexType::kDate,
          FormatIsoWeek(IsoWeekOf(AddPeriod(base, weeks, PeriodUnit::kWeek))),
          ""};
    }
    case Unit::kMonth:
      return Normalization{
          TimexType::kDate,
          FormatYearMonth(AddPeriod(base, n, PeriodUnit::kMonth)), ""};
    case Unit::kQuarter: {
      const long index = y * 4L + (static_cast<unsigned>(base.month()) - 1) / 3 + n;
      const long qy = index >= 0 ? index / 4 : -((-index + 3) / 4);
      return Normalization{
          TimexType::kDate,
          FormatQuarter(static_cast<int>(qy), static_cast<unsigned>(index - qy * 4 + 1)),
          ""};
    }
    case Unit::kYear:
      return Normalization{TimexType::kDate, FormatYear(y + static_cast<int>(n)),
                           ""};
    case Unit::kDecade:
      return Normalization{TimexType::kDate, FormatDecade(y / 10 + n), ""};
    case Unit::kCentury:
      return Normalization{TimexType::kDate, FormatCentury(y / 100 + n), ""};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Value functions

struct Context {
  const Anchor& anchor;
  std::string_view args;
  const NormalizerOptions& options;
  TimexType type;
};

using Groups = std::vector<std::string>;
using ValueFn = std::optional<Normalization> (*)(const Groups&, const Context&);

std::optional<Normalization> Make(const Context& ctx, std::string value) {
  return Normalization{ctx.type, std::move(value), ""};
}

std::optional<long> ArgAsLong(const Context& ctx) {
  std::string_view a = ctx.args;
  if (!a.empty() && a[0] == '+') a.remove_prefix(1);
  if (!a.empty() && a[0] == '-') {
    auto v = ParseDigits(a.substr(1));
    if (!v) return std::nullopt;
    return -*v;
  }
  return ParseDigits(a);
}

std::optional<Normalization> FnLiteral(const Groups&, const Context& ctx) {
  return Make(ctx, std::string(ctx.args));
}

std::optional<Normalization> FnDeicticDay(const Groups&, const Context& ctx) {
  auto offset = ArgAsLong(ctx);
  if (!offset) return std::nullopt;
  return Make(ctx, FormatDate(AddPeriod(ctx.anchor.date, *offset,
                                        PeriodUnit::kDay)));
}

// groups: amount, unit; args: +1 or -1
std::optional<Normalization> FnOffset(const Groups& g, const Context& ctx) {
  auto sign = ArgAsLong(ctx);
  auto n = ParseNumber(g[0]);
  auto unit = ParseUnit(g[1]);
  if (!sign || !n || !unit) return std::nullopt;
  return ShiftedValue(ctx.anchor, *sign * *n, *unit);
}

// groups: modifier, unit
std::optional<Normalization> FnRelativeUnit(const Groups& g,
                                            const Context& ctx) {
  static const std::map<std::string, long, std::less<>> direction = {
      {"last", -1}, {"previous", -1}, {"past", -1}, {"this", 0},
      {"current", 0}, {"next", 1}, {"coming", 1}, {"following", 1},
  };
  auto it = direction.find(g[0]);
  auto unit = ParseUnit(g[1]);
  if (it == direction.end() || !unit || IsClockUnit(*unit)) return std::nullopt;
  return ShiftedValue(ctx.anchor, it->second, *unit);
}

std::optional<Normalization> FnDuration(const Groups& g, const Context& ctx) {
  auto n = ParseNumber(g[0]);
  auto unit = ParseUnit(g[1]);
  if (!n || !unit) return std::nullopt;
  return Make(ctx, Period(std::to_string(*n), *unit));
}

// The last group is the unit; the amount is unspecified.
std::optional<Normalization> FnFuzzyDuration(const Groups& g,
                                             const Context& ctx) {
  auto unit = ParseUnit(g.back());
  if (!unit) return std::nullopt;
  return Make(ctx, Period("X", *unit));
}

std::optional<Normalization> FnSetEvery(const Groups& g, const Context& ctx) {
  auto unit = ParseUnit(g.back());
  if (!unit) return std::nullopt;
  long n = 1;
  if (g.size() > 1) {
    auto parsed = ParseNumber(g[0]);
    if (!parsed) return std::nullopt;
    n = *parsed;
  }
  return Make(ctx, Period(std::to_string(n), *unit));
}

std::optional<Normalization> FnSetAdverb(const Groups& g, const Context& ctx) {
  static const std::map<std::string, std::string, std::less<>> values = {
      {"hourly", "PT1H"}, {"daily", "P1D"},    {"nightly", "P1D"},
      {"weekly", "P1W"},  {"biweekly", "P2W"}, {"monthly", "P1M"},
      {"quarterly", "P3M"}, {"yearly", "P1Y"}, {"annually", "P1Y"},
  };
  auto it = values.find(g[0]);
  if (it == values.end()) return std::nullopt;
  return Make(ctx, it->second);
}

std::optional<Normalization> DateValue(const Context& ctx, int y, long m,
                                       long d) {
  auto date = MakeDate(y, m, d);
  if (!date) return std::nullopt;
  return Make(ctx, FormatDate(*date));
}

// groups: month, day, year
std::optional<Normalization> FnDateMdy(const Groups& g, const Context& ctx) {
  auto m = ParseMonth(g[0]);
  auto d = ParseOrdinal(g[1]);
  auto y = ParseYear(g[2]);
  if (!m || !d || !y) return std::nullopt;
  return DateValue(ctx, *y, *m, *d);
}

// groups: day, month, year
std::optional<Normalization> FnDateDmy(const Groups& g, const Context& ctx) {
  return FnDateMdy({g[1], g[0], g[2]}, ctx);
}

// groups: month, day (year of the anchor)
std::optional<Normalization> FnDateMd(const Groups& g, const Context& ctx) {
  auto m = ParseMonth(g[0]);
  auto d = ParseOrdinal(g[1]);
  if (!m || !d) return std::nullopt;
  return DateValue(ctx, static_cast<int>(ctx.anchor.date.year()), *m, *d);
}

std::optional<Normalization> FnDateDm(const Groups& g, const Context& ctx) {
  return FnDateMd({g[1], g[0]}, ctx);
}

// groups: month, year
std::optional<Normalization> FnMonthYear(const Groups& g, const Context& ctx) {
  auto m = ParseMonth(g[0]);
  auto y = ParseYear(g[1]);
  if (!m || !y) return std::nullopt;
  return Make(ctx, FormatYearMonth(Date{year{*y}, month{*m}, day{1}}));
}

std::optional<Normalization> FnMonthOnly(const Groups& g, const Context& ctx) {
  auto m = ParseMonth(g[0]);
  if (!m) return std::nullopt;
  return Make(ctx, FormatYearMonth(
                       Date{ctx.anchor.date.year(), month{*m}, day{1}}));
}

// groups: a, b, year where a/b are month/day per options.day_first
std::optional<Normalization> FnNumericDate(const Groups& g,
                                           const Context& ctx) {
  auto a = ParseDigits(g[0]);
  auto b = ParseDigits(g[1]);
  auto y = ParseYear(g[2]);
  if (!a || !b || !y) return std::nullopt;
  return ctx.options.day_first ? DateValue(ctx, *y, *b, *a)
                               : DateValue(ctx, *y, *a, *b);
}

// groups: year, month, day
std::optional<Normalization> FnIsoDate(const Groups& g, const Context& ctx) {
  auto y = ParseDigits(g[0]);
  auto m = ParseDigits(g[1]);
  auto d = ParseDigits(g[2]);
  if (!y || !m || !d) return std::nullopt;
  return DateValue(ctx, static_cast<int>(*y), *m, *d);
}

std::optional<Normalization> FnIsoMonth(const Groups& g, const Context& ctx) {
  auto y = ParseDigits(g[0]);
  auto m = ParseDigits(g[1]);
  if (!y || !m || *m < 1 || *m > 12) return std::nullopt;
  return Make(ctx, FormatYear(static_cast<int>(*y)) + "-" +
                       (*m < 10 ? "0" : "") + std::to_string(*m));
}

std::optional<Normalization> FnYear(const Groups& g, const Context& ctx) {
  auto y = ParseYear(g[0]);
  if (!y) return std::nullopt;
  return Make(ctx, FormatYear(*y));
}

// group: first three digits of the decade, e.g. 199
std::optional<Normalization> FnDecade(const Groups& g, const Context& ctx) {
  auto v = ParseDigits(g[0]);
  if (!v) return std::nullopt;
  return Make(ctx, FormatDecade(*v));
}

// group: one digit, '90s -> 199
std::optional<Normalization> FnDecadeShort(const Groups& g,
                                           const Context& ctx) {
  auto v = ParseDigits(g[0]);
  if (!v) return std::nullopt;
  return Make(ctx, FormatDecade(190 + *v));
}

// group: ordinal; the 20th century -> 19
std::optional<Normalization> FnCentury(const Groups& g, const Context& ctx) {
  auto n = ParseOrdinal(g[0]);
  if (!n || *n < 1 || *n > 100) return std::nullopt;
  return Make(ctx, FormatCentury(*n - 1));
}

// groups: ordinal, optional year
std::optional<Normalization> FnQuarter(const Groups& g, const Context& ctx) {
  auto q = ParseOrdinal(g[0]);
  if (!q || *q < 1 || *q > 4) return std::nullopt;
  int y = static_cast<int>(ctx.anchor.date.year());
  if (g.size() > 1 && !g[1].empty()) {
    auto parsed = ParseYear(g[1]);
    if (!parsed) return std::nullopt;
    y = *parsed;
  }
  return Make(ctx, FormatQuarter(y, static_cast<unsigned>(*q)));
}

WeekdayDirection DirectionFromArgs(std::string_view args,
                                   const NormalizerOptions& options) {
  if (args == "last") return WeekdayDirection::kLast;
  if (args == "next") return WeekdayDirection::kNext;
  if (args == "nearest_past") return WeekdayDirection::kNearestPast;
  if (args == "nearest_future") return WeekdayDirection::kNearestFuture;
  return options.bare_weekday;
}

// group: weekday; args: last | next | nearest_past | nearest_future | bare
std::optional<Normalization> FnWeekday(const Groups& g, const Context& ctx) {
  auto wd = ParseWeekday(g[0]);
  if (!wd) return std::nullopt;
  const Date date = ResolveWeekday(
      *wd, DirectionFromArgs(ctx.args, ctx.options), ctx.anchor.date);
  return Make(ctx, FormatDate(date));
}

std::optional<std::string> PartOfDayCode(std::string_view pod) {
  static const std::map<std::string, std::string, std::less<>> codes = {
      {"morning", "MO"},  {"dawn", "MO"},     {"daybreak", "MO"},
      {"sunrise", "MO"},  {"afternoon", "AF"}, {"evening", "EV"},
      {"dusk", "EV"},     {"sunset", "EV"},   {"nightfall", "EV"},
      {"night", "NI"},    {"tonight", "NI"},  {"overnight", "NI"},
  };
  auto it = codes.find(pod);
  if (it == codes.end()) return std::nullopt;
  return it->second;
}

// group: part of day; args: day offset
std::optional<Normalization> FnPartOfDay(const Groups& g, const Context& ctx) {
  auto offset = ArgAsLong(ctx);
  auto code = PartOfDayCode(g.back());
  if (!offset || !code) return std::nullopt;
  return Make(ctx, FormatDate(AddPeriod(ctx.anchor.date, *offset,
                                        PeriodUnit::kDay)) +
                       "T" + *code);
}

// groups: weekday, part of day
std::optional<Normalization> FnWeekdayPartOfDay(const Groups& g,
                                                const Context& ctx) {
  auto wd = ParseWeekday(g[0]);
  auto code = PartOfDayCode(g[1]);
  if (!wd || !code) return std::nullopt;
  const Date date = ResolveWeekday(*wd, ctx.options.bare_weekday,
                                   ctx.anchor.date);
  return Make(ctx, FormatDate(date) + "T" + *code);
}

// groups: hour, optional minute, optional am/pm
std::optional<Normalization> FnClock(const Groups& g, const Context& ctx) {
  auto hour = ParseNumber(g[0]);
  if (!hour) return std::nullopt;
  long minute = 0;
  if (g.size() > 1 && !g[1].empty()) {
    auto m = ParseDigits(g[1]);
    if (!m) return std::nullopt;
    minute = *m;
  }
  if (g.size() > 2 && !g[2].empty()) {
    if (*hour < 1 || *hour > 12) return std::nullopt;
    const bool pm = g[2][0] == 'p';
    if (pm && *hour != 12) *hour += 12;
    if (!pm && *hour == 12) *hour = 0;
  }
  if (*hour > 23 || minute > 59) return std::nullopt;
  return Make(ctx, FormatClock(ctx.anchor.date, *hour, minute));
}

std::optional<Normalization> FnClockNamed(const Groups& g, const Context& ctx) {
  if (g[0] == "noon" || g[0] == "midday") {
    return Make(ctx, FormatClock(ctx.anchor.date, 12, 0));
  }
  if (g[0] == "midnight") {
    return Make(ctx, FormatClock(ctx.anchor.date, 24, 0));
  }
  return std::nullopt;
}

std::string SeasonCode(std::string_view season) {
  if (season == "spring") return "SP";
  if (season == "summer") return "SU";
  if (season == "winter") return "WI";
  return "FA";
}

// group: season; args: year offset
std::optional<Normalization> FnSeason(const Groups& g, const Context& ctx) {
  auto offset = ArgAsLong(ctx);
  if (!offset) return std::nullopt;
  const int y = static_cast<int>(ctx.anchor.date.year()) + static_cast<int>(*offset);
  return Make(ctx, FormatYear(y) + "-" + SeasonCode(g.back()));
}

// groups: season, year
std::optional<Normalization> FnSeasonYear(const Groups& g, const Context& ctx) {
  auto y = ParseYear(g[1]);
  if (!y) return std::nullopt;
  return Make(ctx, FormatYear(*y) + "-" + SeasonCode(g[0]));
}

// groups: modifier, season
std::optional<Normalization> FnSeasonRelative(const Groups& g,
                                              const Context& ctx) {
  int offset = 0;
  if (g[0] == "last" || g[0] == "previous") offset = -1;
  if (g[0] == "next" || g[0] == "coming") offset = 1;
  const int y = static_cast<int>(ctx.anchor.date.year()) + offset;
  return Make(ctx, FormatYear(y) + "-" + SeasonCode(g[1]));
}

const std::map<std::string, ValueFn, std::less<>>& ValueFunctions() {
  static const std::map<std::string, ValueFn, std::less<>> fns = {
      {"literal", FnLiteral},
      {"deictic_day", FnDeicticDay},
      {"offset", FnOffset},
      {"relative_unit", FnRelativeUnit},
      {"duration", FnDuration},
      {"fuzzy_duration", FnFuzzyDuration},
      {"set_every", FnSetEvery},
      {"set_adverb", FnSetAdverb},
      {"date_mdy", FnDateMdy},
      {"date_dmy", FnDateDmy},
      {"date_md", FnDateMd},
      {"date_dm", FnDateDm},
      {"month_year", FnMonthYear},
      {"month_only", FnMonthOnly},
      {"numeric_date", FnNumericDate},
      {"iso_date", FnIsoDate},
      {"iso_month", FnIsoMonth},
      {"year", FnYear},
      {"decade", FnDecade},
      {"decade_short", FnDecadeShort},
      {"century", FnCentury},
      {"quarter", FnQuarter},
      {"weekday", FnWeekday},
      {"weekday_pod", FnWeekdayPartOfDay},
      {"part_of_day", FnPartOfDay},
      {"clock", FnClock},
      {"clock_named", FnClockNamed},
      {"season", FnSeason},
      {"season_year", FnSeasonYear},
      {"season_relative", FnSeasonRelative},
  };
  return fns;
}

NormRule R(std::string id, int priority, std::string pattern, TimexType type,
           std::string fn, std::string args = "") {
  return NormRule{std::move(id), priority,   std::move(pattern),
                  type,          std::move(fn), std::move(args)};
}

std::vector<NormRule> SortedRules(std::vector<NormRule> rules) {
  std::stable_sort(rules.begin(), rules.end(),
                   [](const NormRule& a, const NormRule& b) {
                     if (a.priority != b.priority) return a.priority > b.priority;
                     return a.id < b.id;
                   });
  return rules;
}

const std::regex& DateGrammar() {
  static const std::regex re(
      R"(^(\d{4}(-(0[1-9]|1[0-2])(-(0[1-9]|[12]\d|3[01]))?)?|\d{4}-W(0[1-9]|[1-4]\d|5[0-3])|\d{4}-Q[1-4]|\d{3}|\d{2}|PAST_REF|PRESENT_REF|FUTURE_REF|\d{4}-(SP|SU|FA|WI))$)");
  return re;
}

const std::regex& TimeGrammar() {
  static const std::regex re(
      R"(^(\d{4}-(0[1-9]|1[0-2])-(0[1-9]|[12]\d|3[01]))T(([01]\d|2[0-3])(:[0-5]\d)?|24(:00)?|MO|AF|EV|NI)$)");
  return re;
}

const std::regex& PeriodGrammar() {
  static const std::regex re(
      R"(^P((\d+|X)(Y|M|W|D|Q|DE|CE))*(T((\d+|X)(H|M|S))+)?$)");
  return re;
}

// Rejects calendar-impossible days such as 2013-02-30.
bool DayExists(std::string_view value) {
  if (value.size() < 10 || value[4] != '-' || value[7] != '-') return true;
  auto y = ParseDigits(value.substr(0, 4));
  auto m = ParseDigits(value.substr(5, 2));
  auto d = ParseDigits(value.substr(8, 2));
  if (!y || !m || !d) return true;
  return MakeDate(static_cast<int>(*y), *m, *d).has_value();
}

}  // namespace

bool ValidateValue(TimexType type, std::string_view value) {
  const std::string v(value);
  switch (type) {
    case TimexType::kDate:
      return std::regex_match(v, DateGrammar()) && DayExists(v);
    case TimexType::kTime:
      return std::regex_match(v, TimeGrammar()) && DayExists(v);
    case TimexType::kDuration:
    case TimexType::kSet:
      return v != "P" && v.find_first_of("0123456789X") != std::string::npos &&
             !v.ends_with("T") && std::regex_match(v, PeriodGrammar());
  }
  return false;
}

const std::vector<NormRule>& BuiltinRules() {
  using T = TimexType;
  static const std::vector<NormRule> rules = SortedRules({
      // Explicit calendar dates.
      R("date_iso", 80, R"((\d{4})-(\d{2})-(\d{2}))", T::kDate, "iso_date"),
      R("date_iso_month", 80, R"((\d{4})-(\d{2}))", T::kDate, "iso_month"),
      R("date_numeric", 80, R"((\d{1,2})[/-](\d{1,2})[/-](\d{4}|\d{2}))",
        T::kDate, "numeric_date"),
      R("date_mdy", 75,
        R"((?:on )?(?:{WEEKDAY} (?:, )?)?({MONTH}) ({DAYNUM})(?: ,)? ({YEAR}))",
        T::kDate, "date_mdy"),
      R("date_dmy", 75,
        R"((?:on )?(?:{WEEKDAY} (?:, )?)?(?:the )?({DAYNUM}) (?:of )?({MONTH})(?: ,)? ({YEAR}))",
        T::kDate, "date_dmy"),
      R("date_md", 70, R"((?:on )?(?:{WEEKDAY} (?:, )?)?({MONTH}) ({DAYNUM}))",
        T::kDate, "date_md"),
      R("date_dm", 70,
        R"((?:on )?(?:{WEEKDAY} (?:, )?)?(?:the )?({DAYNUM}) (?:of )?({MONTH}))",
        T::kDate, "date_dm"),
      R("date_month_year", 68, R"((?:in )?({MONTH})(?: ,| of)? ({YEAR}))",
        T::kDate, "month_year"),
      R("date_month_year_token", 68, R"(({MONTH})[-/](\d{4}|\d{2}))", T::kDate,
        "month_year"),
      R("date_month", 40, R"((?:in |early |late |mid-)?({MONTH}))", T::kDate,
        "month_only"),
      // Years, decades, centuries, quarters.
      R("year", 60, R"((?:in |the year |fiscal |mid-|early |late )?({YEAR}))",
        T::kDate, "year"),
      R("decade", 60, R"((?:the |in the |early |late |mid-)?(\d{3})0 ?' ?s)",
        T::kDate, "decade"),
      R("decade_full", 60, R"((?:the |in the )?(\d{3})0s)", T::kDate, "decade"),
      R("decade_short", 60, R"((?:the |in the )?' ?(\d)0s)", T::kDate,
        "decade_short"),
      R("century", 60, R"((?:the |in the )?({ORD}) century)", T::kDate,
        "century"),
      R("quarter_year", 62,
        R"((?:the )?({ORD}) (?:fiscal )?quarter (?:of |, )?(?:fiscal )?({YEAR}))",
        T::kDate, "quarter"),
      R("quarter", 58, R"((?:the )?({ORD}) (?:fiscal )?quarter)", T::kDate,
        "quarter"),
      // Deictic days.
      R("today", 65, R"((?:today|this day))", T::kDate, "deictic_day", "0"),
      R("yesterday", 65, R"(yesterday)", T::kDate, "deictic_day", "-1"),
      R("tomorrow", 65, R"(tomorrow)", T::kDate, "deictic_day", "1"),
      R("day_before_yesterday", 66, R"(the day before yesterday)", T::kDate,
        "deictic_day", "-2"),
      R("day_after_tomorrow", 66, R"(the day after tomorrow)", T::kDate,
        "deictic_day", "2"),
      // N units ago / later.
      R("offset_ago", 55, R"(({NUM}) ({UNIT}) (?:ago|earlier|before))",
        T::kDate, "offset", "-1"),
      R("offset_later", 55,
        R"(({NUM}) ({UNIT}) (?:later|ahead|from now|hence|after))", T::kDate,
        "offset", "1"),
      R("offset_in", 52, R"(in ({NUM}) ({UNIT}))", T::kDate,
        "offset", "1"),
      R("offset_fuzzy_ago", 55, R"({FUZZY} {UNIT} (?:ago|earlier|before))",
        T::kDate, "literal", "PAST_REF"),
      R("offset_fuzzy_later", 55,
        R"({FUZZY} {UNIT} (?:later|ahead|from now|hence))", T::kDate,
        "literal", "FUTURE_REF"),
      // last/this/next unit.
      R("relative_unit", 50,
        R"((?:the )?(last|previous|this|current|next|coming|following) (week|month|quarter|year|decade|century))",
        T::kDate, "relative_unit"),
      R("relative_unit_earlier", 50,
        R"((?:earlier|later) (this) (week|month|year))", T::kDate,
        "relative_unit"),
      R("past_duration", 51,
        R"((?:over |for |during |in )?(?:the )?(?:past|last|previous|next|coming) ({NUM}) ({UNIT}))",
        T::kDuration, "duration"),
      // Weekdays.
      R("weekday_last", 50, R"((?:last|previous|past) ({WEEKDAY}))", T::kDate,
        "weekday", "last"),
      R("weekday_next", 50, R"((?:next|coming|this coming) ({WEEKDAY}))",
        T::kDate, "weekday", "next"),
      R("weekday_this", 50, R"(this ({WEEKDAY}))", T::kDate, "weekday",
        "nearest_future"),
      R("weekday_pod", 48, R"((?:on )?({WEEKDAY}) ({POD}))", T::kTime,
        "weekday_pod"),
      R("weekday", 40, R"((?:on )?({WEEKDAY}))", T::kDate, "weekday", "bare"),
      // Parts of the day.
      R("pod_today", 50, R"((?:this |today |early |late |this early |this late )?({POD}|tonight))",
        T::kTime, "part_of_day", "0"),
      R("pod_yesterday", 50, R"((?:yesterday|last) (?:early |late )?({POD}))",
        T::kTime, "part_of_day", "-1"),
      R("pod_tomorrow", 50, R"(tomorrow (?:early |late )?({POD}))", T::kTime,
        "part_of_day", "1"),
      // Clock times.
      R("clock_ampm", 56, R"((?:at )?(\d{1,2})(?:[:.](\d{2}))? ?({AMPM}))",
        T::kTime, "clock"),
      R("clock_24h", 54, R"((?:at )?(\d{1,2}):(\d{2}))", T::kTime, "clock"),
      R("clock_oclock", 54, R"((?:at )?({NUM}) o'clock)", T::kTime, "clock"),
      R("clock_named", 56, R"((?:at )?(noon|midday|midnight))", T::kTime,
        "clock_named"),
      // Durations.
      R("duration", 45,
        R"((?:for |about |nearly |almost |more than |over |at least |the )?({NUM}) ({UNIT})(?: long)?)",
        T::kDuration, "duration"),
      R("duration_fuzzy", 45, R"((?:for |over )?({FUZZY}) ({UNIT}))",
        T::kDuration, "fuzzy_duration"),
      R("duration_plural", 35,
        R"((?:for |over )?(seconds|minutes|hours|days|weeks|months|years|decades|centuries))",
        T::kDuration, "fuzzy_duration"),
      // Sets.
      R("set_adverb", 60,
        R"((hourly|daily|nightly|weekly|biweekly|monthly|quarterly|yearly|annually))",
        T::kSet, "set_adverb"),
      R("set_every", 60, R"((?:every|each|per|once a|once an|twice a|once every) ({UNIT}))",
        T::kSet, "set_every"),
      R("set_every_n", 60, R"(every ({NUM}) ({UNIT}))", T::kSet, "set_every"),
      R("set_every_weekday", 60,
        R"((?:every|each) {WEEKDAY}|(?:on )?(?:mondays|tuesdays|wednesdays|thursdays|fridays|saturdays|sundays))",
        T::kSet, "literal", "P1W"),
      R("set_every_pod", 60, R"((?:every|each) {POD})", T::kSet, "literal",
        "P1D"),
      // Seasons.
      R("season_year", 50, R"((?:the |in (?:the )?)?({SEASON}) (?:of )?({YEAR}))",
        T::kDate, "season_year"),
      R("season_relative", 50,
        R"((last|previous|next|coming|this) ({SEASON}))", T::kDate,
        "season_relative"),
      R("season", 42, R"((?:the |in (?:the )?)?({SEASON}))", T::kDate,
        "season", "0"),
      // Fuzzy references.
      R("ref_past", 30,
        R"((?:recently|recent|lately|formerly|previously|earlier|once|the past|in the past|before|some time ago|long ago|years ago))",
        T::kDate, "literal", "PAST_REF"),
      R("ref_present", 30,
        R"((?:now|right now|just now|currently|current|at present|the present|nowadays|presently|at the moment|these days|this time))",
        T::kDate, "literal", "PRESENT_REF"),
      R("ref_future", 30,
        R"((?:soon|in the future|the future|future|shortly|eventually|later|in the coming (?:days|weeks|months|years)|the coming (?:days|weeks|months|years)))",
        T::kDate, "literal", "FUTURE_REF"),
  });
  return rules;
}

const std::vector<std::string>& ValueFunctionNames() {
  static const std::vector<std::string> names = Keys(ValueFunctions());
  return names;
}

std::vector<NormRule> ParseRules(std::istream& in, const std::string& source) {
  std::vector<NormRule> rules;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    size_t start = 0;
    while (true) {
      const size_t tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (fields.size() != 5) {
      throw ParseError(source, line_no,
                       "rule needs 5 tab-separated columns, found " +
                           std::to_string(fields.size()));
    }
    NormRule rule;
    rule.id = fields[0];
    auto priority = ParseDigits(fields[1][0] == '-' ? fields[1].substr(1)
                                                    : fields[1]);
    if (!priority) throw ParseError(source, line_no, "invalid priority");
    rule.priority = static_cast<int>(fields[1][0] == '-' ? -*priority : *priority);
    rule.pattern = fields[2];
    auto type = ParseTimexType(fields[3]);
    if (!type) throw ParseError(source, line_no, "unknown type '" + fields[3] + "'");
    rule.type = *type;
    const size_t colon = fields[4].find(':');
    rule.value_fn = fields[4].substr(0, colon);
    if (colon != std::string::npos) rule.args = fields[4].substr(colon + 1);
    if (!ValueFunctions().contains(rule.value_fn)) {
      throw ParseError(source, line_no,
                       "unknown value function '" + rule.value_fn + "'");
    }
    rules.push_back(std::move(rule));
  }
  return rules;
}

void WriteRules(std::span<const NormRule> rules, std::ostream& out) {
  for (const NormRule& r : rules) {
    out << r.id << '\t' << r.priority << '\t' << r.pattern << '\t'
        << TimexTypeName(r.type) << '\t' << r.value_fn;
    if (!r.args.empty()) out << ':' << r.args;
    out << '\n';
  }
}

Normalizer::Normalizer(NormalizerOptions options)
    : options_(options), rules_(BuiltinRules()) {
  Compile();
}

Normalizer::Normalizer(std::span<const NormRule> overrides,
                       NormalizerOptions options)
    : options_(options) {
  std::map<std::string, NormRule> by_id;
  for (const NormRule& r : BuiltinRules()) by_id[r.id] = r;
  std::set<std::string> seen;
  for (const NormRule& r : overrides) {
    if (!seen.insert(r.id).second) {
      throw Error("duplicate rule id '" + r.id + "' in overrides");
    }
    if (!ValueFunctions().contains(r.value_fn)) {
      throw Error("rule '" + r.id + "' uses unknown value function '" +
                  r.value_fn + "'");
    }
    by_id[r.id] = r;
  }
  std::vector<NormRule> merged;
  for (auto& [id, rule] : by_id) merged.push_back(std::move(rule));
  rules_ = SortedRules(std::move(merged));
  Compile();
}

Normalizer Normalizer::FromOverrideFile(const std::string& path,
                                        NormalizerOptions options) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open rule file '" + path + "'");
  const std::vector<NormRule> overrides = ParseRules(in, path);
  return Normalizer(overrides, options);
}

void Normalizer::Compile() {
  compiled_.clear();
  compiled_.reserve(rules_.size());
  for (const NormRule& rule : rules_) {
    try {
      compiled_.emplace_back(ExpandAtoms(rule.pattern),
                             std::regex::ECMAScript | std::regex::optimize);
    } catch (const std::regex_error& e) {
      throw Error("rule '" + rule.id + "' has an invalid pattern: " + e.what());
    }
  }
}

std::optional<Normalization> Normalizer::Normalize(
    std::span<const std::string> tokens, const Anchor& anchor) const {
  std::string expression;
  for (const std::string& token : tokens) {
    if (!expression.empty()) expression += ' ';
    expression += ToLower(token);
  }
  if (expression.empty()) return std::nullopt;

  std::smatch match;
  for (size_t r = 0; r < rules_.size(); ++r) {
    if (!std::regex_match(expression, match, compiled_[r])) continue;
    const NormRule& rule = rules_[r];
    Groups groups;
    for (size_t k = 1; k < match.size(); ++k) groups.push_back(match[k].str());
    if (groups.empty()) groups.push_back(match[0].str());
    const Context ctx{anchor, rule.args, options_, rule.type};
    auto fn = ValueFunctions().find(rule.value_fn);
    auto result = fn->second(groups, ctx);
    if (!result || !ValidateValue(result->type, result->value)) continue;
    result->rule_id = rule.id;
    return result;
  }
  return std::nullopt;
}

std::optional<Normalization> Normalizer::Normalize(std::string_view expression,
                                                   const Anchor& anchor) const {
  std::vector<std::string> tokens;
  for (const Token& t : Tokenize(expression)) tokens.push_back(t.surface);
  return Normalize(tokens, anchor);
}

DocumentNormalization NormalizeSpans(const Normalizer& normalizer,
                                     const Document& doc,
                                     std::span<const TimexSpan> spans,
                                     bool fallback) {
  DocumentNormalization out;
  for (const TimexSpan& span : spans) {
    const Sequence& seq = doc.sequences.at(span.sequence_index);
    std::vector<std::string> tokens;
    for (size_t i = span.first_token; i <= span.last_token; ++i) {
      tokens.push_back(seq.tokens[i].surface);
    }
    if (auto norm = normalizer.Normalize(tokens, doc.dct)) {
      out.timexes.push_back(Timex{span, norm->type, norm->value});
    } else if (fallback) {
      out.timexes.push_back(Timex{span, TimexType::kDate, "PRESENT_REF"});
    } else {
      out.unmatched.push_back(span);
    }
  }
  return out;
}

}  // namespace tempex
