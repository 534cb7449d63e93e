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

// Rule-based TIMEX3 normalization.
//
// An expression is lower-cased and its tokens joined by single spaces. Each
// rule is a regular expression that must match that whole string, plus a
// named value function that builds the value from the capture groups and
// the anchor. Rules are tried by descending priority, then ascending id;
// the first rule whose function yields a grammatical value wins.
//
// Rule files hold one rule per line:
//
//   id TAB priority TAB pattern TAB type TAB value_fn[:args]
//
// Patterns may use these atoms, each expanding to a non-capturing group:
//
//   {NUM}      digits, number words, hyphenated compounds, "a", "an"
//   {UNIT}     second ... century, singular or plural
//   {MONTH}    month names and abbreviations ("jan ." included)
//   {WEEKDAY}  day names and abbreviations
//   {DAYNUM}   1-31 with optional st/nd/rd/th, or an ordinal word
//   {ORD}      ordinal number, digits or word
//   {YEAR}     four digits
//   {SEASON}   spring, summer, autumn, fall, winter
//   {POD}      parts of the day
//   {FUZZY}    several, a few, some, many, ...
//   {AMPM}     am, pm, a.m., p.m.

#ifndef TEMPEX_NORMALIZER_H_
#define TEMPEX_NORMALIZER_H_

#include <iosfwd>
#include <optional>
#include <regex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tempex/calendar.h"
#include "tempex/corpus.h"

namespace tempex {

// True iff `value` is grammatical for `type`:
//   DATE      YYYY[-MM[-DD]] | YYYY-Wnn | YYYY-Qn | YYY | YY
//             | PAST_REF | PRESENT_REF | FUTURE_REF | YYYY-(SP|SU|FA|WI)
//   TIME      YYYY-MM-DD T (hh[:mm] | MO | AF | EV | NI)
//   DURATION  ISO 8601 period, amounts are digits or X
//   SET       as DURATION
bool ValidateValue(TimexType type, std::string_view value);

struct NormRule {
  std::string id;
  int priority = 0;
  std::string pattern;  // before atom expansion
  TimexType type = TimexType::kDate;
  std::string value_fn;
  std::string args;

  bool operator==(const NormRule&) const = default;
};

std::vector<NormRule> ParseRules(std::istream& in, const std::string& source);
void WriteRules(std::span<const NormRule> rules, std::ostream& out);

// The built-in inventory, in evaluation order.
const std::vector<NormRule>& BuiltinRules();

// Names accepted in the value_fn column.
const std::vector<std::string>& ValueFunctionNames();

struct NormalizerOptions {
  // Read ambiguous numeric dates such as 04/05/2013 as day/month.
  bool day_first = false;
  // Direction used for a weekday without last/next/this.
  WeekdayDirection bare_weekday = WeekdayDirection::kNearestPast;
};

struct Normalization {
  TimexType type = TimexType::kDate;
  std::string value;
  std::string rule_id;

  bool operator==(const Normalization&) const = default;
};

class Normalizer {
 public:
  explicit Normalizer(NormalizerOptions options = {});

  // Built-in rules with `overrides` merged in: an override with an existing
  // id replaces that rule, a new id is added. Throws Error for an unknown
  // value function, a duplicate id within `overrides`, or a bad pattern.
  Normalizer(std::span<const NormRule> overrides, NormalizerOptions options);

  static Normalizer FromOverrideFile(const std::string& path,
                                     NormalizerOptions options = {});

  // Returns nullopt when no rule matches; never invents a value.
  std::optional<Normalization> Normalize(std::span<const std::string> tokens,
                                         const Anchor& anchor) const;
  std::optional<Normalization> Normalize(std::string_view expression,
                                         const Anchor& anchor) const;

  const std::vector<NormRule>& rules() const { return rules_; }
  const NormalizerOptions& options() const { return options_; }

 private:
  void Compile();

  NormalizerOptions options_;
  std::vector<NormRule> rules_;
  std::vector<std::regex> compiled_;
};

// Normalizes every span of a document. Spans no rule can interpret are
// returned in `unmatched`, or typed DATE / PRESENT_REF when `fallback`.
struct DocumentNormalization {
  std::vector<Timex> timexes;
  std::vector<TimexSpan> unmatched;
};
DocumentNormalization NormalizeSpans(const Normalizer& normalizer,
                                     const Document& doc,
                                     std::span<const TimexSpan> spans,
                                     bool fallback);

}  // namespace tempex

#endif  // TEMPEX_NORMALIZER_H_
