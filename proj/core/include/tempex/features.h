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

// Per-token feature extraction and template expansion.
//
// Feature catalog (booleans are rendered "y"/"n"):
//
//   word              surface as written
//   lemma             lemma column, else the lower-cased surface
//   stem              Porter stem of the surface
//   pattern           X for upper, x for lower, d for digit (Jan-2003 -> Xxx-dddd)
//   cpattern          pattern with runs collapsed (Jan-2003 -> Xx-d)
//   prefix3 suffix3   first / last three bytes
//   upper_first       first character is an uppercase letter
//   ends_s            last character is 's'
//   no_letters        surface with letters removed
//   no_alnum          surface with letters and digits removed
//   verb_tense        from the Penn POS column: past, participle, gerund,
//                     present, base, modal; "_" otherwise or when absent
//   is_lower is_alpha is_digit is_alnum is_title (Xxxx) is_capitalized
//   (XXXX) is_acronym (U.S.) is_number is_decimal is_dotted_number
//   is_stopword
//   re_cardinal re_ordinal re_time re_date re_period re_weekday re_season
//   re_past re_present re_future re_signal re_fuzzy re_modifier re_tadverb
//   re_adjective re_conjunction re_preposition
//
// Profiles add columns on top of the morphological catalog:
//   model1  morphological only
//   model2  + chunk, pnp
//   model3  + one gaz_<name> BIO column per gazetteer
//   model4  + gazetteers + wn0..wnK (extra corpus columns, e.g. WordNet)

#ifndef TEMPEX_FEATURES_H_
#define TEMPEX_FEATURES_H_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tempex/corpus.h"
#include "tempex/gazetteer.h"
#include "tempex/lexicon.h"

namespace tempex {

std::string Pattern(std::string_view surface);
std::string CollapsedPattern(std::string_view surface);

const std::vector<std::string>& MorphologicalFeatureNames();
// The re_* subset of the catalog.
const std::vector<std::string>& LexicalFlagNames();

enum class ModelProfile { kModel1, kModel2, kModel3, kModel4 };

std::string_view ProfileName(ModelProfile profile);
std::optional<ModelProfile> ParseProfile(std::string_view name);
bool ProfileUsesGazetteers(ModelProfile profile);

// Feature values of one sequence, tokens x features.
class FeatureMatrix {
 public:
  FeatureMatrix(std::shared_ptr<const std::vector<std::string>> names,
                size_t num_tokens);

  const std::vector<std::string>& names() const { return *names_; }
  size_t num_tokens() const { return values_.size(); }
  std::optional<size_t> Column(std::string_view name) const;

  const std::string& at(size_t token, size_t column) const {
    return values_[token][column];
  }
  std::string& at(size_t token, size_t column) {
    return values_[token][column];
  }

  // Named view of one token's features.
  std::map<std::string, std::string> Row(size_t token) const;

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
  std::vector<std::vector<std::string>> values_;
};

class FeatureExtractor {
 public:
  // `extra_columns` is the number of wn<k> columns read under model4.
  FeatureExtractor(ModelProfile profile,
                   const LexiconSet& lexicons = LexiconSet::Builtin(),
                   std::vector<Gazetteer> gazetteers = {},
                   size_t extra_columns = 0);

  ModelProfile profile() const { return profile_; }
  const std::vector<std::string>& feature_names() const { return *names_; }
  const std::vector<Gazetteer>& gazetteers() const { return gazetteers_; }

  FeatureMatrix Extract(const Sequence& seq) const;

 private:
  void ExtractMorphological(const Token& token, FeatureMatrix& out,
                            size_t row) const;

  ModelProfile profile_;
  const LexiconSet* lexicons_;
  std::vector<Gazetteer> gazetteers_;
  size_t extra_columns_;
  std::shared_ptr<const std::vector<std::string>> names_;
};

// A window over neighboring tokens; offsets in [-2, 2], arity 1 to 3.
struct Template {
  std::string id;
  std::vector<int> offsets;

  bool operator==(const Template&) const = default;
};

// The 14 windows of the factor-graph topology, numbered by arity:
//   T00 w0       T01 w-1      T02 w-2      T03 w+1      T04 w+2
//   T05 w-1,w0   T06 w0,w+1   T07 w-2,w-1  T08 w+1,w+2  T09 w-1,w+1
//   T10 w-2,w+2  T11 w-2,w-1,w0            T12 w-1,w0,w+1
//   T13 w0,w+1,w+2
const std::vector<Template>& DefaultTopology();

// Which features each template reads. Single-offset templates read
// `unigram_features`; conjunctions read `conjunction_features`.
struct ExpansionPlan {
  std::vector<Template> templates;
  std::vector<std::string> unigram_features;
  std::vector<std::string> conjunction_features;

  bool operator==(const ExpansionPlan&) const = default;
};

// Default plan: every extracted feature for unigrams; word, pattern and the
// re_* flags for conjunctions.
ExpansionPlan DefaultPlan(const std::vector<std::string>& feature_names);

inline constexpr std::string_view kBeginSentinel = "_BOS_";
inline constexpr std::string_view kEndSentinel = "_EOS_";

// For each position, one string per (template, feature) in plan order:
//   T05:word[-1]=_BOS_|word[0]=three
// Throws Error if the plan names a feature the matrix lacks.
std::vector<std::vector<std::string>> ExpandTemplates(
    const FeatureMatrix& rows, const ExpansionPlan& plan);

// BIO labels of a gazetteer rendered as a feature column.
std::vector<Label> MatchGazetteer(const Sequence& seq, const Gazetteer& gaz);

}  // namespace tempex

#endif  // TEMPEX_FEATURES_H_
