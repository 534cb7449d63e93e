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


#include "tempex/lexicon.h"

#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "tempex/error.h"
#include "tempex/stemmer.h"

namespace tempex {
namespace {

TEST(LexiconTest, ParseLines) {
  EXPECT_EQ(ParseLexiconLines("# comment\n  Monday \n\nTUE  # trailing\n"),
            (std::vector<std::string>{"monday", "tue"}));
}

TEST(LexiconTest, CaseInsensitive) {
  Lexicon lex({"morning", "noon"});
  EXPECT_TRUE(lex.Contains("Morning"));
  EXPECT_TRUE(lex.Contains("NOON"));
  EXPECT_FALSE(lex.Contains("night"));
}

TEST(LexiconSetTest, BuiltinHasEveryName) {
  const LexiconSet& set = LexiconSet::Builtin();
  for (std::string_view name : kLexiconNames) {
    EXPECT_GT(set.Get(name).size(), 0u) << name;
  }
  EXPECT_THROW(set.Get("colors"), Error);
  EXPECT_TRUE(set.Get("periods_of_day").Contains("nightfall"));
  EXPECT_TRUE(set.Get("past_refs").Contains("recent"));
}

TEST(LexiconSetTest, DirectoryOverrides) {
  const auto dir = std::filesystem::temp_directory_path() / "tempex_lex_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "seasons.txt") << "monsoon\n";
  LexiconSet set = LexiconSet::Load(dir.string());
  EXPECT_TRUE(set.Get("seasons").Contains("monsoon"));
  EXPECT_FALSE(set.Get("seasons").Contains("winter"));
  EXPECT_TRUE(set.Get("weekdays").Contains("monday"));
  std::filesystem::remove_all(dir);
  EXPECT_THROW(LexiconSet::Load((dir / "missing").string()), Error);
}

TEST(PorterStemTest, KnownStems) {
  const std::pair<const char*, const char*> cases[] = {
      {"caresses", "caress"}, {"ponies", "poni"},      {"cats", "cat"},
      {"feed", "feed"},       {"agreed", "agre"},      {"plastered", "plaster"},
      {"motoring", "motor"},  {"happy", "happi"},      {"relational", "relat"},
      {"hopeful", "hope"},    {"generalization", "gener"},
      {"days", "dai"},        {"Months", "month"},     {"by", "by"},
      {"2013", "2013"},
  };
  for (const auto& [word, stem] : cases) EXPECT_EQ(PorterStem(word), stem) << word;
}

}  // namespace
}  // namespace tempex
