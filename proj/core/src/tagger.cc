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

#include <utility>

#include "tempex/error.h"

namespace tempex {

Resources Resources::Builtin() {
  return Resources{std::shared_ptr<const LexiconSet>(
                       std::shared_ptr<const LexiconSet>{},
                       &LexiconSet::Builtin()),
                   {}};
}

FeaturePipeline::FeaturePipeline(ModelProfile profile, Resources resources,
                                 size_t extra_columns)
    : resources_(std::move(resources)),
      extractor_(profile, *resources_.lexicons, resources_.gazetteers,
                 extra_columns),
      plan_(DefaultPlan(extractor_.feature_names())) {}

FeaturePipeline::FeaturePipeline(ModelProfile profile, Resources resources,
                                 size_t extra_columns, ExpansionPlan plan)
    : resources_(std::move(resources)),
      extractor_(profile, *resources_.lexicons, resources_.gazetteers,
                 extra_columns),
      plan_(std::move(plan)) {}

PositionFeatures FeaturePipeline::Features(const Sequence& seq) const {
  return ExpandTemplates(extractor_.Extract(seq), plan_);
}

CrfModel TrainModel(std::span<const Sequence> sequences,
                    const Resources& resources, const TrainOptions& options) {
  FeaturePipeline pipeline(options.profile, resources, options.extra_columns);
  std::vector<PositionFeatures> features;
  std::vector<std::vector<Label>> labels;
  features.reserve(sequences.size());
  labels.reserve(sequences.size());
  for (const Sequence& seq : sequences) {
    if (!seq.gold_labels) throw Error("training sentence without labels");
    features.push_back(pipeline.Features(seq));
    labels.push_back(*seq.gold_labels);
  }
  ModelMetadata metadata;
  metadata.profile = options.profile;
  for (const Gazetteer& gaz : pipeline.extractor().gazetteers()) {
    metadata.gazetteers.push_back(gaz.name());
  }
  metadata.extra_columns =
      options.profile == ModelProfile::kModel4 ? options.extra_columns : 0;
  metadata.plan = pipeline.plan();
  metadata.hyperparams = options.hyperparams;
  return TrainCrf(features, labels, std::move(metadata));
}

namespace {

Resources SelectGazetteers(const ModelMetadata& metadata, Resources resources) {
  std::vector<Gazetteer> selected;
  for (const std::string& name : metadata.gazetteers) {
    const Gazetteer* found = nullptr;
    for (const Gazetteer& gaz : resources.gazetteers) {
      if (gaz.name() == name) found = &gaz;
    }
    if (!found) {
      throw Error("model needs gazetteer '" + name + "' which was not given");
    }
    selected.push_back(*found);
  }
  resources.gazetteers = std::move(selected);
  return resources;
}

}  // namespace

Tagger::Tagger(std::shared_ptr<const CrfModel> model, Resources resources)
    : model_(std::move(model)),
      features_(model_->metadata.profile,
                SelectGazetteers(model_->metadata, std::move(resources)),
                model_->metadata.extra_columns, model_->metadata.plan) {}

TaggedSequence Tagger::Tag(const Sequence& seq, const PriorTable* priors,
                           const PipelineConfig* pipeline) const {
  TaggedSequence out;
  if (seq.size() == 0) return out;
  const Potentials potentials = model_->Score(features_.Features(seq));
  out.crf_labels = Viterbi(potentials);
  out.marginals = ForwardBackward(potentials);
  if (priors != nullptr && pipeline != nullptr) {
    out.labels = RunPipeline(out.marginals, out.crf_labels, seq.tokens,
                             *priors, *pipeline);
  } else {
    // Tolerant decoding: an orphan I opens a new expression.
    out.labels = out.crf_labels;
    for (size_t t = 0; t < out.labels.size(); ++t) {
      if (out.labels[t] == Label::kI &&
          (t == 0 || out.labels[t - 1] == Label::kO)) {
        out.labels[t] = Label::kB;
      }
    }
  }
  return out;
}

Document Tagger::TagDocument(const Document& doc, const PriorTable* priors,
                             const PipelineConfig* pipeline) const {
  Document out = doc;
  for (Sequence& seq : out.sequences) {
    seq.gold_labels = Tag(seq, priors, pipeline).labels;
  }
  return out;
}

}  // namespace tempex
