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

// Post-processing of CRF output: lexical priors from human-annotated data,
// probabilistic correction, BIO repair and a threshold label switcher.

#ifndef TEMPEX_POSTPROC_H_
#define TEMPEX_POSTPROC_H_

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tempex/corpus.h"
#include "tempex/crf.h"

namespace tempex {

using LabelDistribution = std::array<double, kNumLabels>;

// Lower-cased token -> empirical label distribution. Only tokens seen
// inside gold spans at least `kMinInSpan` times are kept; their
// distribution counts every occurrence, inside or outside spans.
class PriorTable {
 public:
  static constexpr size_t kMinInSpan = 2;

  struct Entry {
    std::array<size_t, kNumLabels> counts{};
    size_t in_span = 0;

    LabelDistribution Distribution() const;
    bool operator==(const Entry&) const = default;
  };

  PriorTable() = default;

  // Throws Error if any sequence lacks gold labels.
  static PriorTable Build(std::span<const Sequence> sequences);
  static PriorTable Build(std::span<const Document> docs);

  // Keys are lower-cased on lookup.
  std::optional<LabelDistribution> Find(std::string_view token) const;
  const std::map<std::string, Entry, std::less<>>& entries() const {
    return entries_;
  }
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // token TAB count_B TAB count_I TAB count_O TAB in_span_count
  void Write(std::ostream& out) const;
  void Save(const std::string& path) const;
  static PriorTable Read(std::istream& in, const std::string& source);
  static PriorTable Load(const std::string& path);

  bool operator==(const PriorTable&) const = default;

 private:
  std::map<std::string, Entry, std::less<>> entries_;
};

// Index of the largest entry; ties go to B, then I.
Label ArgMax(const LabelDistribution& dist);

struct CorrectionResult {
  MarginalTable marginals;
  std::vector<Label> labels;
};

// Averages each known token's marginal row with its prior and relabels
// every position by the adjusted row's argmax.
CorrectionResult ProbabilisticCorrection(const MarginalTable& marginals,
                                         std::span<const Token> tokens,
                                         const PriorTable& priors);

// (a) O followed by I becomes B, and a leading I becomes B.
// (b) A B right after a B or I becomes I, unless either of the two tokens
//     is punctuation. The result is always valid BIO; the function is
//     idempotent.
std::vector<Label> BioFixer(std::span<const Label> labels,
                            std::span<const Token> tokens);

// Replaces the label of every known token whose largest prior probability
// is strictly greater than `threshold` with that prior's argmax.
std::vector<Label> ThresholdLabelSwitcher(std::span<const Label> labels,
                                          std::span<const Token> tokens,
                                          const PriorTable& priors,
                                          double threshold);

enum class Stage { kProbCorrection, kBioFixer, kThresholdSwitcher };

std::string_view StageName(Stage stage);
std::optional<Stage> ParseStage(std::string_view name);

struct PipelineConfig {
  double threshold = 0.87;
  std::vector<Stage> stages = {Stage::kProbCorrection, Stage::kBioFixer,
                               Stage::kThresholdSwitcher, Stage::kBioFixer};
};

// Parses a comma-separated stage list. Throws Error naming an unknown stage.
std::vector<Stage> ParseStageList(std::string_view text);

// Applies the configured stages to the CRF's Viterbi labels. Throws Error if
// the threshold is outside [0, 1]. The output is valid BIO.
std::vector<Label> RunPipeline(const MarginalTable& marginals,
                               std::span<const Label> crf_labels,
                               std::span<const Token> tokens,
                               const PriorTable& priors,
                               const PipelineConfig& config);

}  // namespace tempex

#endif  // TEMPEX_POSTPROC_H_
