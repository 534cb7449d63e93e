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

// First-order linear-chain CRF over the labels B, I, O.
//
// The score of a labeling y of a sequence x is
//
//   sum_t sum_{a in attrs(x_t)} w[a, y_t]  +  sum_{t>0} w[y_{t-1} -> y_t]
//
// Observation attributes are the expanded template strings of a position;
// each pairs with all three labels. Transitions are a dense 3x3 block
// independent of the observations. All probability math is in log space.

#ifndef TEMPEX_CRF_H_
#define TEMPEX_CRF_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tempex/corpus.h"
#include "tempex/features.h"

namespace tempex {

// Expanded observation strings, per position, of one sequence.
using PositionFeatures = std::vector<std::vector<std::string>>;

// A sequence with its attributes mapped to ids. Unknown strings are dropped.
struct EncodedSequence {
  std::vector<std::vector<uint32_t>> attributes;
  std::vector<Label> labels;  // empty when unlabeled

  size_t size() const { return attributes.size(); }
};

// Maps attribute strings to ids and (attribute, label) pairs to weight
// slots. Slot layout: attribute a, label y -> 3a + y; transitions follow
// all state slots in from-major order.
class FeatureIndex {
 public:
  FeatureIndex() = default;
  explicit FeatureIndex(std::vector<std::string> attribute_names);

  // Keeps every attribute seen at least `cutoff` times, sorted bytewise.
  // Throws Error for an empty corpus.
  static FeatureIndex Build(std::span<const PositionFeatures> corpus,
                            size_t cutoff = 1);

  size_t num_attributes() const { return names_.size(); }
  size_t num_weights() const { return names_.size() * kNumLabels + 9; }

  size_t StateSlot(uint32_t attribute, Label label) const {
    return static_cast<size_t>(attribute) * kNumLabels + LabelIndex(label);
  }
  size_t TransitionSlot(Label from, Label to) const {
    return names_.size() * kNumLabels + LabelIndex(from) * kNumLabels +
           LabelIndex(to);
  }

  std::optional<uint32_t> Find(std::string_view attribute) const;
  const std::string& AttributeName(uint32_t id) const { return names_[id]; }

  EncodedSequence Encode(const PositionFeatures& features,
                         std::span<const Label> labels = {}) const;

  bool operator==(const FeatureIndex& other) const {
    return names_ == other.names_;
  }

 private:
  struct Hash {
    using is_transparent = void;
    size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::vector<std::string> names_;
  std::unordered_map<std::string, uint32_t, Hash, std::equal_to<>> ids_;
};

// Unary scores per position and the transition block of one sequence.
struct Potentials {
  std::vector<std::array<double, kNumLabels>> unary;
  std::array<std::array<double, kNumLabels>, kNumLabels> transition{};

  size_t size() const { return unary.size(); }
};

Potentials ComputePotentials(const FeatureIndex& index,
                             std::span<const double> weights,
                             const EncodedSequence& seq);

struct MarginalTable {
  std::vector<std::array<double, kNumLabels>> probs;
  double log_z = 0.0;

  size_t size() const { return probs.size(); }
};

// Exact marginals and log partition. Empty input gives an empty table with
// log_z = 0.
MarginalTable ForwardBackward(const Potentials& potentials);

// Highest-scoring labeling; ties go to the earlier label in B < I < O.
std::vector<Label> Viterbi(const Potentials& potentials);

double PathScore(const Potentials& potentials, std::span<const Label> labels);

struct CrfHyperparams {
  double c = 1.0;       // L2 penalty is |w|^2 / (2C)
  double eta = 1e-4;    // relative objective change that stops training
  int max_iter = 300;
  size_t cutoff = 1;    // minimum attribute frequency
  int history = 5;      // L-BFGS memory

  bool operator==(const CrfHyperparams&) const = default;
};

struct ObjectiveValue {
  double value = 0.0;  // sum log p(y|x) - |w|^2 / (2C)
  std::vector<double> gradient;
};

// Penalized conditional log-likelihood of a labeled batch and its gradient
// (empirical - expected counts - w / C). Per-sequence work is sharded over
// a fixed number of partitions and reduced in partition order, so results
// are bit-identical regardless of thread count. Throws Error when a
// sequence's labels do not match its length.
ObjectiveValue LogLikelihoodAndGradient(const FeatureIndex& index,
                                        std::span<const double> weights,
                                        std::span<const EncodedSequence> batch,
                                        double c);

struct TrainingLog {
  int iterations = 0;
  double final_objective = 0.0;
  bool converged = false;
  std::string status;
  std::vector<double> objective_trace;
};

// What a model needs to reproduce its features at tagging time.
struct ModelMetadata {
  ModelProfile profile = ModelProfile::kModel1;
  std::vector<std::string> gazetteers;
  size_t extra_columns = 0;
  ExpansionPlan plan;
  CrfHyperparams hyperparams;
  TrainingLog log;
};

struct CrfModel {
  static constexpr int kFormatVersion = 1;

  ModelMetadata metadata;
  FeatureIndex index;
  std::vector<double> weights;

  Potentials Score(const PositionFeatures& features) const;
  std::vector<Label> Decode(const PositionFeatures& features) const;
  MarginalTable Marginals(const PositionFeatures& features) const;
};

// Builds the index and maximizes the penalized log-likelihood with L-BFGS
// from zero weights. Throws Error for an empty corpus, mismatched label
// counts, or a non-finite objective.
CrfModel TrainCrf(std::span<const PositionFeatures> features,
                  std::span<const std::vector<Label>> labels,
                  ModelMetadata metadata);

void SaveModel(const CrfModel& model, std::ostream& out);
void SaveModel(const CrfModel& model, const std::string& path);
CrfModel LoadModel(std::istream& in, const std::string& source = "<stream>");
CrfModel LoadModel(const std::string& path);

}  // namespace tempex

#endif  // TEMPEX_CRF_H_
