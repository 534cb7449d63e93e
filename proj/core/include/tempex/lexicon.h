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

// Word lists behind the lexical feature flags and the normalizer.
//
// Lexicon files are UTF-8, one entry per line, '#' starts a comment, and
// matching is case-insensitive. The files under core/data/lexicons are
// compiled into the library; a directory of same-named files overrides
// them at runtime.

#ifndef TEMPEX_LEXICON_H_
#define TEMPEX_LEXICON_H_

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace tempex {

std::string ToLower(std::string_view text);  // ASCII only

// Splits lexicon text into trimmed, lower-cased, non-comment lines.
std::vector<std::string> ParseLexiconLines(std::string_view text);

class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(const std::vector<std::string>& entries);

  bool Contains(std::string_view word) const;  // case-insensitive
  size_t size() const { return entries_.size(); }

 private:
  struct Hash {
    using is_transparent = void;
    size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::unordered_set<std::string, Hash, std::equal_to<>> entries_;
};

// Names of the lexicons the library expects to find.
inline constexpr std::string_view kLexiconNames[] = {
    "conjunctions",   "fuzzy_quantifiers", "future_refs",
    "modifiers",      "months",            "number_words",
    "ordinal_words",  "past_refs",         "periods_of_day",
    "prepositions",   "present_refs",      "seasons",
    "stopwords",      "temporal_adverbs",  "temporal_signals",
    "time_units",     "weekdays",
};

class LexiconSet {
 public:
  // The compiled-in lexicons.
  static const LexiconSet& Builtin();

  // Built-in lexicons, with any <name>.txt found in `dir` replacing the
  // built-in of the same name. Throws Error if `dir` is not a directory.
  static LexiconSet Load(const std::string& dir);

  // Throws Error for an unknown name.
  const Lexicon& Get(std::string_view name) const;

 private:
  std::map<std::string, Lexicon, std::less<>> lexicons_;
};

// Generated at build time from core/data/lexicons.
const std::map<std::string, std::string_view, std::less<>>&
BuiltinLexiconSources();

}  // namespace tempex

#endif  // TEMPEX_LEXICON_H_
