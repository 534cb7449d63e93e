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

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "tempex/error.h"
#include "tempex/gazetteer.h"
#include "tempex/tokenizer.h"

namespace tempex {
namespace {

using L = Label;

Sequence Sentence(std::string_view text) {
  Sequence seq;
  seq.tokens = Tokenize(text);
  return seq;
}

TEST(PatternTest, Examples) {
  EXPECT_EQ(Pattern("Jan-2003"), "Xxx-dddd");
  EXPECT_EQ(Pattern(""), "");
  EXPECT_EQ(Pattern("iPhone7"), "xXxxxxd");
  EXPECT_EQ(CollapsedPattern("Jan-2003"), "Xx-d");
  EXPECT_EQ(CollapsedPattern("2003"), "d");
  EXPECT_EQ(CollapsedPattern("NATO"), "X");
}

TEST(PatternTest, CollapsedHasNoRepeatedClassAndSameClasses) {
  std::mt19937_64 rng(1);
  const std::string alphabet = "aZ9-./xQ3";
  for (int i = 0; i < 2000; ++i) {
    std::string s;
    const size_t n = rng() % 12;
    for (size_t k = 0; k < n; ++k) s.push_back(alphabet[rng() % alphabet.size()]);
    const std::string p = Pattern(s);
    const std::string c = CollapsedPattern(s);
    ASSERT_EQ(p.size(), s.size());
    for (size_t k = 1; k < c.size(); ++k) ASSERT_NE(c[k], c[k - 1]) << s;
    std::string expanded_back;
    for (char ch : p) {
      if (expanded_back.empty() || expanded_back.back() != ch) {
        expanded_back.push_back(ch);
      }
    }
    EXPECT_EQ(c, expanded_back);
  }
}

std::map<std::string, std::string> RowFor(std::string_view word) {
  FeatureExtractor extractor(ModelProfile::kModel1);
  return extractor.Extract(Sentence(word)).Row(0);
}

TEST(FeatureExtractorTest, LexicalFlags) {
  EXPECT_EQ(RowFor("morning").at("re_period"), "y");
  EXPECT_EQ(RowFor("ago").at("re_past"), "y");
  auto seven = RowFor("7");
  EXPECT_EQ(seven.at("is_digit"), "y");
  EXPECT_EQ(seven.at("is_number"), "y");
  EXPECT_EQ(seven.at("re_cardinal"), "y");
  EXPECT_EQ(seven.at("is_alpha"), "n");
  EXPECT_EQ(RowFor("now").at("re_present"), "y");
  EXPECT_EQ(RowFor("soon").at("re_future"), "y");
  EXPECT_EQ(RowFor("Wednesday").at("re_weekday"), "y");
  EXPECT_EQ(RowFor("twenty-first").at("re_ordinal"), "y");
  EXPECT_EQ(RowFor("10:30").at("re_time"), "y");
  EXPECT_EQ(RowFor("3.5").at("is_decimal"), "y");
  EXPECT_EQ(RowFor("U.S.").at("is_acronym"), "y");
  EXPECT_EQ(RowFor("dog").at("re_period"), "n");
}

TEST(FeatureExtractorTest, MorphologicalColumns) {
  auto row = RowFor("Jan-2003");
  EXPECT_EQ(row.at("word"), "Jan-2003");
  EXPECT_EQ(row.at("lemma"), "jan-2003");
  EXPECT_EQ(row.at("pattern"), "Xxx-dddd");
  EXPECT_EQ(row.at("cpattern"), "Xx-d");
  EXPECT_EQ(row.at("prefix3"), "Jan");
  EXPECT_EQ(row.at("suffix3"), "003");
  EXPECT_EQ(row.at("no_letters"), "-2003");
  EXPECT_EQ(row.at("no_alnum"), "-");
  EXPECT_EQ(row.at("upper_first"), "y");
  EXPECT_EQ(row.at("verb_tense"), "_");
  EXPECT_EQ(RowFor("days").at("stem"), "dai");
  EXPECT_EQ(RowFor("days").at("ends_s"), "y");
}

TEST(FeatureExtractorTest, VerbTenseFromPos) {
  Sequence seq = Sentence("He arrived");
  seq.tokens[1].pos = "VBD";
  seq.tokens[1].lemma = "arrive";
  FeatureExtractor extractor(ModelProfile::kModel1);
  auto row = extractor.Extract(seq).Row(1);
  EXPECT_EQ(row.at("verb_tense"), "past");
  EXPECT_EQ(row.at("lemma"), "arrive");
}

TEST(FeatureExtractorTest, ProfilesAddColumns) {
  const size_t morph = MorphologicalFeatureNames().size();
  EXPECT_EQ(FeatureExtractor(ModelProfile::kModel1).feature_names().size(),
            morph);
  FeatureExtractor m2(ModelProfile::kModel2);
  EXPECT_EQ(m2.feature_names().size(), morph + 2);
  EXPECT_EQ(m2.feature_names()[morph], "chunk");

  Gazetteer cities("cities", {"new york city", "paris"});
  FeatureExtractor m3(ModelProfile::kModel3, LexiconSet::Builtin(), {cities});
  EXPECT_EQ(m3.feature_names().back(), "gaz_cities");

  FeatureExtractor m4(ModelProfile::kModel4, LexiconSet::Builtin(), {cities},
                      2);
  ASSERT_EQ(m4.feature_names().size(), morph + 3);
  EXPECT_EQ(m4.feature_names().back(), "wn1");
  Sequence seq = Sentence("in New York City");
  seq.tokens[1].extra = {"wn:a"};
  FeatureMatrix rows = m4.Extract(seq);
  EXPECT_EQ(rows.Row(1).at("gaz_cities"), "B");
  EXPECT_EQ(rows.Row(3).at("gaz_cities"), "I");
  EXPECT_EQ(rows.Row(1).at("wn0"), "wn:a");
  EXPECT_EQ(rows.Row(1).at("wn1"), "_");
}

TEST(ProfileTest, Names) {
  for (auto p : {ModelProfile::kModel1, ModelProfile::kModel2,
                 ModelProfile::kModel3, ModelProfile::kModel4}) {
    EXPECT_EQ(ParseProfile(ProfileName(p)), p);
  }
  EXPECT_FALSE(ParseProfile("model5").has_value());
  EXPECT_TRUE(ProfileUsesGazetteers(ModelProfile::kModel3));
  EXPECT_FALSE(ProfileUsesGazetteers(ModelProfile::kModel2));
}

TEST(GazetteerTest, Matching) {
  Gazetteer gaz("cities", {"new york", "new york city", "york"});
  EXPECT_EQ(MatchGazetteer(Sentence("New York City"), gaz),
            (std::vector<Label>{L::kB, L::kI, L::kI}));
  EXPECT_EQ(MatchGazetteer(Sentence("in old town"), gaz),
            (std::vector<Label>{L::kO, L::kO, L::kO}));
  EXPECT_EQ(MatchGazetteer(Sentence("new york , york"), gaz),
            (std::vector<Label>{L::kB, L::kI, L::kO, L::kB}));
}

ExpansionPlan WordOnlyPlan() {
  ExpansionPlan plan;
  plan.templates = DefaultTopology();
  plan.unigram_features = {"word"};
  plan.conjunction_features = {"word"};
  return plan;
}

TEST(ExpandTemplatesTest, BoundarySentinel) {
  FeatureExtractor extractor(ModelProfile::kModel1);
  auto out = ExpandTemplates(extractor.Extract(Sentence("three")),
                             WordOnlyPlan());
  ASSERT_EQ(out.size(), 1u);
  EXPECT_NE(std::find(out[0].begin(), out[0].end(),
                      "T05:word[-1]=_BOS_|word[0]=three"),
            out[0].end());
  EXPECT_NE(std::find(out[0].begin(), out[0].end(),
                      "T08:word[1]=_EOS_|word[2]=_EOS_"),
            out[0].end());
}

TEST(ExpandTemplatesTest, Unigram) {
  FeatureExtractor extractor(ModelProfile::kModel1);
  auto out = ExpandTemplates(extractor.Extract(Sentence("three days ago")),
                             WordOnlyPlan());
  EXPECT_EQ(out[1][0], "T00:word[0]=days");
  EXPECT_EQ(out[1][12], "T12:word[-1]=three|word[0]=days|word[1]=ago");
}

TEST(ExpandTemplatesTest, FourteenPerFeature) {
  FeatureExtractor extractor(ModelProfile::kModel1);
  FeatureMatrix rows = extractor.Extract(Sentence("See you on Jan-2003 ."));
  EXPECT_EQ(DefaultTopology().size(), 14u);
  for (size_t k = 1; k <= 4; ++k) {
    ExpansionPlan plan;
    plan.templates = DefaultTopology();
    for (size_t f = 0; f < k; ++f) {
      plan.unigram_features.push_back(MorphologicalFeatureNames()[f]);
    }
    plan.conjunction_features = plan.unigram_features;
    for (const auto& position : ExpandTemplates(rows, plan)) {
      EXPECT_EQ(position.size(), 14 * k);
    }
  }
}

TEST(ExpandTemplatesTest, UnknownFeature) {
  FeatureExtractor extractor(ModelProfile::kModel1);
  ExpansionPlan plan = WordOnlyPlan();
  plan.unigram_features.push_back("chunk");
  EXPECT_THROW(ExpandTemplates(extractor.Extract(Sentence("a")), plan), Error);
}

std::string Render(const std::vector<std::vector<std::string>>& expanded) {
  std::ostringstream out;
  for (size_t p = 0; p < expanded.size(); ++p) {
    for (const std::string& s : expanded[p]) out << p << '\t' << s << '\n';
  }
  return out.str();
}

TEST(ExpandTemplatesTest, GoldenFile) {
  FeatureExtractor extractor(ModelProfile::kModel1);
  Sequence seq = Sentence("On Jan-2003, I left three days ago.");
  const std::string actual =
      Render(ExpandTemplates(extractor.Extract(seq),
                             DefaultPlan(extractor.feature_names())));
  const std::string path =
      std::string(TEMPEX_TEST_DATA_DIR) + "/features_golden.tsv";
  if (std::getenv("TEMPEX_UPDATE_GOLDEN")) {
    std::ofstream(path) << actual;
  }
  std::ifstream in(path);
  ASSERT_TRUE(in) << "missing " << path;
  std::stringstream expected;
  expected << in.rdbuf();
  EXPECT_EQ(actual, expected.str());
  EXPECT_EQ(actual, Render(ExpandTemplates(
                        extractor.Extract(seq),
                        DefaultPlan(extractor.feature_names()))));
}

}  // namespace
}  // namespace tempex
