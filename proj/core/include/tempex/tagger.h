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


// Training and tagging on top of the feature extractor and the CRF.

#ifndef TEMPEX_TAGGER_H_
#define TEMPEX_TAGGER_H_

#include <memory>
#include <span>
#include <vector>

#include "tempex/corpus.h"
#include "tempex/crf.h"
#include "tempex/features.h"
#include "tempex/gazetteer.h"
#include "tempex/lexicon.h"
#include "tempex/postproc.h"

namespace tempex {

// Lexical resources shared by training and tagging.
struct Resources {
  std::shared_ptr<const LexiconSet> lexicons;
  std::vector<Gazetteer> gazetteers;

  // Built-in lexicons, no gazetteers.
  static Resources Builtin();
};

struct TrainOptions {
  ModelProfile profile = ModelProfile::kModel1;
  CrfHyperparams hyperparams;
  size_t extra_columns = 0;  // wn<k> columns, model4 only
};

// Converts sequences to CRF attribute strings for one model configuration.
class FeaturePipeline {
 public:
  FeaturePipeline(ModelProfile profile, Resources resources,
                  size_t extra_columns);
  FeaturePipeline(ModelProfile profile, Resources resources,
                  size_t extra_columns, ExpansionPlan plan);

  const FeatureExtractor& extractor() const { return extractor_; }
  const ExpansionPlan& plan() const { return plan_; }
  PositionFeatures Features(const Sequence& seq) const;

 private:
  Resources resources_;
  FeatureExtractor extractor_;
  ExpansionPlan plan_;
};

// Trains on every sequence. Throws Error if a sequence has no gold labels.
CrfModel TrainModel(std::span<const Sequence> sequences,
                    const Resources& resources, const TrainOptions& options);

struct TaggedSequence {
  std::vector<Label> crf_labels;
  MarginalTable marginals;
  // Valid BIO: post-processed, or the Viterbi labels with each orphan I
  // turned into B.
  std::vector<Label> labels;
};

class Tagger {
 public:
  // Throws Error if `resources` lacks a gazetteer the model was trained
  // with, or carries gazetteers in a different order.
  Tagger(std::shared_ptr<const CrfModel> model, Resources resources);

  const CrfModel& model() const { return *model_; }

  // `priors` and `pipeline` may be null, which skips post-processing.
  TaggedSequence Tag(const Sequence& seq, const PriorTable* priors,
                     const PipelineConfig* pipeline) const;

  // Copy of `doc` whose labels are the tagger's output.
  Document TagDocument(const Document& doc, const PriorTable* priors,
                       const PipelineConfig* pipeline) const;

 private:
  std::shared_ptr<const CrfModel> model_;
  FeaturePipeline features_;
};

}  // namespace tempex

#endif  // TEMPEX_TAGGER_H_
