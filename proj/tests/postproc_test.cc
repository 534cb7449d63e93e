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


#include "tempex/postproc.h"

#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "tempex/error.h"
#include "tempex/tokenizer.h"
#include "testing/synthetic.h"

namespace tempex {
namespace {

using L = Label;

std::vector<Token> Toks(std::string_view text) { return Tokenize(text); }

std::vector<Label> Parse(std::string_view s) {
  std::vector<Label> out;
  for (char c : s) out.push_back(*ParseLabel(std::string_view(&c, 1)));
  return out;
}

PriorTable TableFrom(const std::vector<std::string>& markup) {
  Document doc = testing::MakeLabeledDocument("p", markup);
  return PriorTable::Build(std::vector<Document>{doc});
}

TEST(PriorTableTest, CountsAllOccurrences) {
  PriorTable t = TableFrom({"[three days ago] .", "[two weeks ago] .",
                            "[a year ago] .", "ago"});
  auto ago = t.Find("AGO");
  ASSERT_TRUE(ago);
  EXPECT_DOUBLE_EQ((*ago)[0], 0.0);
  EXPECT_DOUBLE_EQ((*ago)[1], 0.75);
  EXPECT_DOUBLE_EQ((*ago)[2], 0.25);
  EXPECT_FALSE(t.Find("three"));  // in a span once
  EXPECT_FALSE(t.Find("."));      // never in a span
}

TEST(PriorTableTest, RowsSumToOne) {
  PriorTable t = PriorTable::Build(
      testing::SyntheticCorpus({.sentences = 120}));
  ASSERT_FALSE(t.empty());
  for (const auto& [token, entry] : t.entries()) {
    auto d = entry.Distribution();
    EXPECT_NEAR(d[0] + d[1] + d[2], 1.0, 1e-9) << token;
    EXPECT_GE(entry.in_span, PriorTable::kMinInSpan);
  }
}

TEST(PriorTableTest, NeedsLabels) {
  Document doc = MakeDocument("u", Anchor::Parse("2013-04-11"), "today");
  EXPECT_THROW(PriorTable::Build(std::vector<Document>{doc}), Error);
}

TEST(PriorTableTest, TsvRoundTrip) {
  PriorTable t = TableFrom({"[today] and [today]", "[next week] [next week]"});
  std::stringstream buffer;
  t.Write(buffer);
  EXPECT_EQ(PriorTable::Read(buffer, "priors"), t);
  std::istringstream bad("ago\t1\t2\n");
  EXPECT_THROW(PriorTable::Read(bad, "priors"), ParseError);
}

MarginalTable Rows(std::vector<std::array<double, 3>> rows) {
  MarginalTable m;
  m.probs = std::move(rows);
  return m;
}

TEST(ProbabilisticCorrectionTest, AveragesKnownTokens) {
  PriorTable t = TableFrom({"[yesterday] .", "[yesterday] .", "[yesterday] .",
                            "[yesterday] .", "yesterday"});
  // yesterday prior: B 0.8, I 0, O 0.2
  auto toks = Toks("yesterday dog");
  auto r = ProbabilisticCorrection(
      Rows({{0.2, 0.1, 0.7}, {0.3, 0.3, 0.4}}), toks, t);
  EXPECT_NEAR(r.marginals.probs[0][0], 0.5, 1e-12);
  EXPECT_NEAR(r.marginals.probs[0][1], 0.05, 1e-12);
  EXPECT_NEAR(r.marginals.probs[0][2], 0.45, 1e-12);
  EXPECT_EQ(r.labels[0], L::kB);
  EXPECT_EQ(r.marginals.probs[1], (std::array<double, 3>{0.3, 0.3, 0.4}));
  EXPECT_EQ(r.labels[1], L::kO);
}

TEST(ProbabilisticCorrectionTest, MeanIdentity) {
  PriorTable t = TableFrom({"[today] .", "[today] ."});
  auto r = ProbabilisticCorrection(Rows({{1.0, 0.0, 0.0}}), Toks("today"), t);
  EXPECT_EQ(r.marginals.probs[0], (std::array<double, 3>{1.0, 0.0, 0.0}));
}

TEST(BioFixerTest, WorkedExamples) {
  EXPECT_EQ(BioFixer(Parse("OIIO"), Toks("Three days ago .")), Parse("BIIO"));
  EXPECT_EQ(BioFixer(Parse("BB"), Toks("Wednesday morning")), Parse("BI"));
  EXPECT_EQ(BioFixer(Parse("BOB"), Toks("Friday . Monday")), Parse("BOB"));
  EXPECT_EQ(BioFixer(Parse("BB"), Toks("Friday , ")), Parse("BB"));
  EXPECT_EQ(BioFixer(Parse("I"), Toks("today")), Parse("B"));
}

TEST(BioFixerTest, ValidAndIdempotentOnRandomInput) {
  std::mt19937_64 rng(99);
  const std::vector<std::string> words = {"today", ",", "the", "3", "-", "week"};
  for (int trial = 0; trial < 5000; ++trial) {
    const size_t n = rng() % 15;
    std::vector<Token> toks;
    std::vector<Label> labels;
    for (size_t i = 0; i < n; ++i) {
      toks.push_back(Token{words[rng() % words.size()], 2 * i, 2 * i + 1});
      labels.push_back(static_cast<Label>(rng() % 3));
    }
    auto fixed = BioFixer(labels, toks);
    ASSERT_TRUE(IsValidBio(fixed));
    ASSERT_EQ(BioFixer(fixed, toks), fixed);
  }
}

PriorTable Yesterday95() {
  // 19 B and 1 O over 20 occurrences: max prior 0.95.
  std::vector<std::string> markup(19, "[yesterday] .");
  markup.push_back("yesterday");
  return TableFrom(markup);
}

TEST(ThresholdSwitcherTest, SwitchesAboveThreshold) {
  PriorTable t = Yesterday95();
  EXPECT_EQ(ThresholdLabelSwitcher(Parse("O"), Toks("yesterday"), t, 0.87),
            Parse("B"));
  EXPECT_EQ(ThresholdLabelSwitcher(Parse("O"), Toks("yesterday"), t, 0.95),
            Parse("O"));
  EXPECT_EQ(ThresholdLabelSwitcher(Parse("O"), Toks("dog"), t, 0.0),
            Parse("O"));
}

TEST(ThresholdSwitcherTest, StrictComparison) {
  // 87 of 100 occurrences are B: prior exactly 0.87.
  std::vector<std::string> markup(87, "[soon] .");
  for (int i = 0; i < 13; ++i) markup.push_back("soon");
  PriorTable t = TableFrom(markup);
  ASSERT_EQ((*t.Find("soon"))[0], 0.87);
  EXPECT_EQ(ThresholdLabelSwitcher(Parse("O"), Toks("soon"), t, 0.87),
            Parse("O"));
  EXPECT_EQ(ThresholdLabelSwitcher(Parse("O"), Toks("soon"), t, 0.86),
            Parse("B"));
}

TEST(ThresholdSwitcherTest, ThetaOneIsIdentity) {
  PriorTable t = TableFrom({"[today] .", "[today] ."});
  EXPECT_EQ(ThresholdLabelSwitcher(Parse("O"), Toks("today"), t, 1.0),
            Parse("O"));
}

TEST(RunPipelineTest, EmptyTableEqualsFixer) {
  auto toks = Toks("Three days ago .");
  MarginalTable m = Rows({{0.1, 0.1, 0.8}, {0.1, 0.8, 0.1}, {0.1, 0.8, 0.1},
                          {0, 0, 1}});
  EXPECT_EQ(RunPipeline(m, Parse("OIIO"), toks, PriorTable{}, PipelineConfig{}),
            Parse("BIIO"));
}

TEST(RunPipelineTest, SingleStage) {
  auto toks = Toks("Wednesday morning");
  MarginalTable m = Rows({{0.9, 0.05, 0.05}, {0.9, 0.05, 0.05}});
  PipelineConfig config;
  config.stages = {Stage::kBioFixer};
  EXPECT_EQ(RunPipeline(m, Parse("BB"), toks, PriorTable{}, config),
            BioFixer(Parse("BB"), toks));
}

TEST(RunPipelineTest, AlwaysValidBio) {
  PriorTable t = Yesterday95();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 500; ++trial) {
    const size_t n = 1 + rng() % 8;
    std::vector<Token> toks;
    MarginalTable m;
    std::vector<Label> labels;
    for (size_t i = 0; i < n; ++i) {
      toks.push_back(Token{rng() % 2 ? "yesterday" : "x", 2 * i, 2 * i + 1});
      double a = u(rng), b = u(rng), c = u(rng);
      const double s = a + b + c;
      m.probs.push_back({a / s, b / s, c / s});
      labels.push_back(static_cast<Label>(rng() % 3));
    }
    for (const auto& stages :
         {PipelineConfig{}.stages,
          std::vector<Stage>{Stage::kThresholdSwitcher},
          std::vector<Stage>{Stage::kProbCorrection}}) {
      PipelineConfig config;
      config.stages = stages;
      EXPECT_TRUE(IsValidBio(RunPipeline(m, labels, toks, t, config)));
    }
  }
}

TEST(StageListTest, Parsing) {
  EXPECT_EQ(ParseStageList("prob_correction, bio_fixer"),
            (std::vector<Stage>{Stage::kProbCorrection, Stage::kBioFixer}));
  EXPECT_THROW(ParseStageList("bio_fixer,sorter"), Error);
  PipelineConfig bad;
  bad.threshold = 1.5;
  EXPECT_THROW(RunPipeline(MarginalTable{}, {}, {}, PriorTable{}, bad), Error);
}

}  // namespace
}  // namespace tempex
