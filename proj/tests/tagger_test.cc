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


#include "tempex/tagger.h"

#include <memory>

#include <gtest/gtest.h>

#include "tempex/error.h"
#include "tempex/experiment.h"
#include "tempex/tokenizer.h"
#include "testing/synthetic.h"

namespace tempex {
namespace {

class TaggerTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    docs_ = new std::vector<Document>(
        testing::SyntheticCorpus({.sentences = 150, .seed = 3}));
    auto sentences = Sentences(*docs_);
    model_ = new std::shared_ptr<const CrfModel>(std::make_shared<CrfModel>(
        TrainModel(sentences, Resources::Builtin(), {})));
  }
  static void TearDownTestSuite() {
    delete docs_;
    delete model_;
  }
  static std::vector<Document>* docs_;
  static std::shared_ptr<const CrfModel>* model_;
};

std::vector<Document>* TaggerTest::docs_ = nullptr;
std::shared_ptr<const CrfModel>* TaggerTest::model_ = nullptr;

TEST_F(TaggerTest, MetadataDescribesFeatures) {
  const CrfModel& m = **model_;
  EXPECT_EQ(m.metadata.profile, ModelProfile::kModel1);
  EXPECT_EQ(m.metadata.plan.templates.size(), 14u);
  EXPECT_GT(m.metadata.log.iterations, 0);
  EXPECT_EQ(m.weights.size(), m.index.num_weights());
}

TEST_F(TaggerTest, EndToEndSentence) {
  Tagger tagger(*model_, Resources::Builtin());
  Document doc = MakeDocument("d", Anchor::Parse("2013-04-11"),
                              "I arrived three days ago.");
  Document tagged = tagger.TagDocument(doc, nullptr, nullptr);
  auto spans = GoldSpans(tagged);
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0].text, "three days ago");

  PriorTable priors = PriorTable::Build(*docs_);
  PipelineConfig pipeline;
  TaggedSequence t = tagger.Tag(doc.sequences[0], &priors, &pipeline);
  EXPECT_TRUE(IsValidBio(t.labels));
  EXPECT_EQ(t.marginals.size(), 6u);
  EXPECT_EQ(LabelsToString(t.labels), "OOBIIO");
}

TEST_F(TaggerTest, MissingGazetteer) {
  auto model = std::make_shared<CrfModel>(**model_);
  model->metadata.profile = ModelProfile::kModel3;
  model->metadata.gazetteers = {"cities"};
  EXPECT_THROW(Tagger(model, Resources::Builtin()), Error);
  Resources with = Resources::Builtin();
  with.gazetteers.emplace_back("cities", std::vector<std::string>{"paris"});
  EXPECT_NO_THROW(Tagger(model, with));
}

TEST(TrainModelTest, RequiresLabels) {
  Document doc = MakeDocument("u", Anchor::Parse("2013-04-11"), "today");
  EXPECT_THROW(TrainModel(doc.sequences, Resources::Builtin(), {}), Error);
}

}  // namespace
}  // namespace tempex
