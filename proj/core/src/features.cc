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

#include "tempex/features.h"

#include <algorithm>
#include <regex>

#include "tempex/error.h"
#include "tempex/stemmer.h"

namespace tempex {

namespace {

bool IsUpper(char c) { return c >= 'A' && c <= 'Z'; }
bool IsLower(char c) { return c >= 'a' && c <= 'z'; }
bool IsDigit(char c) { return c >= '0' && c <= '9'; }
bool IsLetter(char c) { return IsUpper(c) || IsLower(c); }

const char* Flag(bool value) { return value ? "y" : "n"; }

template <typename Pred>
bool AllOf(std::string_view s, Pred pred) {
  return !s.empty() && std::all_of(s.begin(), s.end(), pred);
}

std::string VerbTense(const std::optional<std::string>& pos) {
  if (!pos) return "_";
  const std::string& tag = *pos;
  if (tag == "VBD") return "past";
  if (tag == "VBN") return "participle";
  if (tag == "VBG") return "gerund";
  if (tag == "VBZ" || tag == "VBP") return "present";
  if (tag == "VB") return "base";
  if (tag == "MD") return "modal";
  return "_";
}

// Number words joined by a hyphen, e.g. twenty-five or twenty-first.
bool IsCompoundNumberWord(std::string_view lower, const Lexicon& cardinals,
                          const Lexicon& ordinals, bool ordinal) {
  const size_t dash = lower.find('-');
  if (dash == std::string_view::npos) return false;
  std::string_view head = lower.substr(0, dash);
  std::string_view tail = lower.substr(dash + 1);
  if (!cardinals.Contains(head)) return false;
  return ordinal ? ordinals.Contains(tail) : cardinals.Contains(tail);
}

struct Regexes {
  std::regex number{R"(^[+-]?\d+([.,]\d+)*$)"};
  std::regex decimal{R"(^\d+\.\d+$)"};
  std::regex dotted_number{R"(^\d+(\.\d+)+$)"};
  std::regex acronym{R"(^([A-Z]\.)+[A-Z]?$)"};
  std::regex ordinal{R"(^\d+(st|nd|rd|th)$)", std::regex::icase};
  std::regex time{R"(^(\d{1,2}[:.]\d{2}([:.]\d{2})?|\d{1,2}[ap]\.?m\.?|[ap]\.m\.?|[ap]m)$)",
                  std::regex::icase};
  std::regex date{
      R"(^(\d{1,2}[/-]\d{1,2}[/-]\d{2,4}|\d{4}-\d{2}(-\d{2})?|(1[5-9]|20)\d{2}s?|'\d{2}s?|\d{2}s|[a-z]{3,9}[-/]\d{2,4})$)",
      std::regex::icase};
  std::regex adjective{R"(^[a-z]{2,}(al|ous|ful|ive|able|ible|ic|less|ish|ary)$)"};
};

const Regexes& GetRegexes() {
  static const Regexes regexes;
  return regexes;
}

}  // namespace

std::string Pattern(std::string_view surface) {
  std::string out(surface);
  for (char& c : out) {
    if (IsUpper(c)) {
      c = 'X';
    } else if (IsLower(c)) {
      c = 'x';
    } else if (IsDigit(c)) {
      c = 'd';
    }
  }
  return out;
}

std::string CollapsedPattern(std::string_view surface) {
  std::string pattern = Pattern(surface);
  pattern.erase(std::unique(pattern.begin(), pattern.end()), pattern.end());
  return pattern;
}

const std::vector<std::string>& MorphologicalFeatureNames() {
  static const std::vector<std::string> names = {
      "word", "lemma", "stem", "pattern", "cpattern", "prefix3", "suffix3",
      "upper_first", "ends_s", "no_letters", "no_alnum", "verb_tense",
      "is_lower", "is_alpha", "is_digit", "is_alnum", "is_title",
      "is_capitalized", "is_acronym", "is_number", "is_decimal",
      "is_dotted_number", "is_stopword",
      // Lexical flags; keep in sync with LexicalFlagNames().
      "re_cardinal", "re_ordinal", "re_time", "re_date", "re_period",
      "re_weekday", "re_season", "re_past", "re_present", "re_future",
      "re_signal", "re_fuzzy", "re_modifier", "re_tadverb", "re_adjective",
      "re_conjunction", "re_preposition"};
  return names;
}

const std::vector<std::string>& LexicalFlagNames() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const std::string& name : MorphologicalFeatureNames()) {
      if (name.starts_with("re_")) out.push_back(name);
    }
    return out;
  }();
  return names;
}

std::string_view ProfileName(ModelProfile profile) {
  switch (profile) {
    case ModelProfile::kModel1: return "model1";
    case ModelProfile::kModel2: return "model2";
    case ModelProfile::kModel3: return "model3";
    case ModelProfile::kModel4: return "model4";
  }
  return "model1";
}

std::optional<ModelProfile> ParseProfile(std::string_view name) {
  if (name == "model1") return ModelProfile::kModel1;
  if (name == "model2") return ModelProfile::kModel2;
  if (name == "model3") return ModelProfile::kModel3;
  if (name == "model4") return ModelProfile::kModel4;
  return std::nullopt;
}

bool ProfileUsesGazetteers(ModelProfile profile) {
  return profile == ModelProfile::kModel3 || profile == ModelProfile::kModel4;
}

FeatureMatrix::FeatureMatrix(
    std::shared_ptr<const std::vector<std::string>> names, size_t num_tokens)
    : names_(std::move(names)),
      values_(num_tokens, std::vector<std::string>(names_->size())) {}

std::optional<size_t> FeatureMatrix::Column(std::string_view name) const {
  auto it = std::find(names_->begin(), names_->end(), name);
  if (it == names_->end()) return std::nullopt;
  return static_cast<size_t>(it - names_->begin());
}

std::map<std::string, std::string> FeatureMatrix::Row(size_t token) const {
  std::map<std::string, std::string> row;
  for (size_t c = 0; c < names_->size(); ++c) {
    row.emplace((*names_)[c], values_[token][c]);
  }
  return row;
}

FeatureExtractor::FeatureExtractor(ModelProfile profile,
                                   const LexiconSet& lexicons,
                                   std::vector<Gazetteer> gazetteers,
                                   size_t extra_columns)
    : profile_(profile),
      lexicons_(&lexicons),
      gazetteers_(std::move(gazetteers)),
      extra_columns_(profile == ModelProfile::kModel4 ? extra_columns : 0) {
  if (!ProfileUsesGazetteers(profile)) gazetteers_.clear();
  auto names = std::make_shared<std::vector<std::string>>(
      MorphologicalFeatureNames());
  if (profile == ModelProfile::kModel2) {
    names->push_back("chunk");
    names->push_back("pnp");
  }
  for (const Gazetteer& gaz : gazetteers_) names->push_back("gaz_" + gaz.name());
  for (size_t k = 0; k < extra_columns_; ++k) {
    names->push_back("wn" + std::to_string(k));
  }
  names_ = std::move(names);
}

void FeatureExtractor::ExtractMorphological(const Token& token,
                                            FeatureMatrix& out,
                                            size_t row) const {
  const Regexes& re = GetRegexes();
  const LexiconSet& lex = *lexicons_;
  const std::string& s = token.surface;
  const std::string lower = ToLower(s);

  std::string no_letters, no_alnum;
  for (char c : s) {
    if (!IsLetter(c)) no_letters.push_back(c);
    if (!IsLetter(c) && !IsDigit(c)) no_alnum.push_back(c);
  }
  const bool has_letter = std::any_of(s.begin(), s.end(), IsLetter);
  const bool has_upper = std::any_of(s.begin(), s.end(), IsUpper);
  const bool has_lower = std::any_of(s.begin(), s.end(), IsLower);
  const bool is_digit = AllOf(s, IsDigit);
  const bool is_title =
      IsUpper(s[0]) && std::none_of(s.begin() + 1, s.end(), IsUpper);

  const Lexicon& cardinals = lex.Get("number_words");
  const Lexicon& ordinals = lex.Get("ordinal_words");
  const bool cardinal = is_digit || std::regex_match(s, re.number) ||
                        cardinals.Contains(lower) ||
                        IsCompoundNumberWord(lower, cardinals, cardinals, false);
  const bool ordinal = std::regex_match(s, re.ordinal) ||
                       ordinals.Contains(lower) ||
                       IsCompoundNumberWord(lower, cardinals, ordinals, true);
  const bool date = lex.Get("months").Contains(lower) ||
                    std::regex_match(s, re.date);

  const std::string values[] = {
      s,
      token.lemma ? *token.lemma : lower,
      PorterStem(s),
      Pattern(s),
      CollapsedPattern(s),
      s.substr(0, 3),
      s.size() > 3 ? s.substr(s.size() - 3) : s,
      Flag(IsUpper(s[0])),
      Flag(s.back() == 's'),
      no_letters,
      no_alnum,
      VerbTense(token.pos),
      Flag(has_lower && !has_upper),
      Flag(AllOf(s, IsLetter)),
      Flag(is_digit),
      Flag(AllOf(s, [](char c) { return IsLetter(c) || IsDigit(c); })),
      Flag(is_title && has_letter),
      Flag(has_upper && !has_lower),
      Flag(std::regex_match(s, re.acronym)),
      Flag(std::regex_match(s, re.number)),
      Flag(std::regex_match(s, re.decimal)),
      Flag(std::regex_match(s, re.dotted_number)),
      Flag(lex.Get("stopwords").Contains(lower)),
      Flag(cardinal),
      Flag(ordinal),
      Flag(std::regex_match(s, re.time)),
      Flag(date),
      Flag(lex.Get("periods_of_day").Contains(lower)),
      Flag(lex.Get("weekdays").Contains(lower)),
      Flag(lex.Get("seasons").Contains(lower)),
      Flag(lex.Get("past_refs").Contains(lower)),
      Flag(lex.Get("present_refs").Contains(lower)),
      Flag(lex.Get("future_refs").Contains(lower)),
      Flag(lex.Get("temporal_signals").Contains(lower)),
      Flag(lex.Get("fuzzy_quantifiers").Contains(lower)),
      Flag(lex.Get("modifiers").Contains(lower)),
      Flag(lex.Get("temporal_adverbs").Contains(lower)),
      Flag(std::regex_match(lower, re.adjective)),
      Flag(lex.Get("conjunctions").Contains(lower)),
      Flag(lex.Get("prepositions").Contains(lower)),
  };
  static_assert(std::size(values) == 40);
  for (size_t c = 0; c < std::size(values); ++c) out.at(row, c) = values[c];
}

FeatureMatrix FeatureExtractor::Extract(const Sequence& seq) const {
  FeatureMatrix out(names_, seq.size());
  const size_t morph = MorphologicalFeatureNames().size();
  std::vector<std::vector<Label>> gaz_labels;
  for (const Gazetteer& gaz : gazetteers_) gaz_labels.push_back(gaz.Match(seq));

  for (size_t i = 0; i < seq.size(); ++i) {
    const Token& token = seq.tokens[i];
    ExtractMorphological(token, out, i);
    size_t c = morph;
    if (profile_ == ModelProfile::kModel2) {
      out.at(i, c++) = token.chunk.value_or("_");
      out.at(i, c++) = token.pnp.value_or("_");
    }
    for (const auto& labels : gaz_labels) {
      out.at(i, c++) = std::string(1, LabelChar(labels[i]));
    }
    for (size_t k = 0; k < extra_columns_; ++k) {
      out.at(i, c++) = k < token.extra.size() ? token.extra[k] : "_";
    }
  }
  return out;
}

const std::vector<Template>& DefaultTopology() {
  static const std::vector<Template> topology = {
      {"T00", {0}},         {"T01", {-1}},       {"T02", {-2}},
      {"T03", {1}},         {"T04", {2}},        {"T05", {-1, 0}},
      {"T06", {0, 1}},      {"T07", {-2, -1}},   {"T08", {1, 2}},
      {"T09", {-1, 1}},     {"T10", {-2, 2}},    {"T11", {-2, -1, 0}},
      {"T12", {-1, 0, 1}},  {"T13", {0, 1, 2}},
  };
  return topology;
}

ExpansionPlan DefaultPlan(const std::vector<std::string>& feature_names) {
  ExpansionPlan plan;
  plan.templates = DefaultTopology();
  plan.unigram_features = feature_names;
  plan.conjunction_features = {"word", "pattern"};
  for (const std::string& flag : LexicalFlagNames()) {
    plan.conjunction_features.push_back(flag);
  }
  return plan;
}

std::vector<std::vector<std::string>> ExpandTemplates(
    const FeatureMatrix& rows, const ExpansionPlan& plan) {
  auto resolve = [&](const std::vector<std::string>& names) {
    std::vector<std::pair<std::string_view, size_t>> columns;
    for (const std::string& name : names) {
      auto column = rows.Column(name);
      if (!column) {
        throw Error("expansion plan refers to unknown feature '" + name + "'");
      }
      columns.emplace_back(name, *column);
    }
    return columns;
  };
  const auto unigram = resolve(plan.unigram_features);
  const auto conjunction = resolve(plan.conjunction_features);

  const long n = static_cast<long>(rows.num_tokens());
  std::vector<std::vector<std::string>> out(rows.num_tokens());
  for (long p = 0; p < n; ++p) {
    auto& strings = out[p];
    for (const Template& tmpl : plan.templates) {
      const auto& columns = tmpl.offsets.size() == 1 ? unigram : conjunction;
      for (const auto& [name, column] : columns) {
        std::string feature = tmpl.id;
        feature.push_back(':');
        for (size_t k = 0; k < tmpl.offsets.size(); ++k) {
          const int offset = tmpl.offsets[k];
          const long at = p + offset;
          if (k > 0) feature.push_back('|');
          feature += name;
          feature += '[' + std::to_string(offset) + "]=";
          if (at < 0) {
            feature += kBeginSentinel;
          } else if (at >= n) {
            feature += kEndSentinel;
          } else {
            feature += rows.at(static_cast<size_t>(at), column);
          }
        }
        strings.push_back(std::move(feature));
      }
    }
  }
  return out;
}

std::vector<Label> MatchGazetteer(const Sequence& seq, const Gazetteer& gaz) {
  return gaz.Match(seq);
}

}  // namespace tempex
