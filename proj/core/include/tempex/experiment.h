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


// Sentence-level shuffling, k-fold cross-validation and the harness that
// trains and scores one model per fold.
//
// Repeat r of a cross-validation run permutes the sentences with seed
// `seed + r` (see random.h) and cuts the permutation into k contiguous
// folds; the first n mod k folds hold one extra sentence.

#ifndef TEMPEX_EXPERIMENT_H_
#define TEMPEX_EXPERIMENT_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tempex/corpus.h"
#include "tempex/eval.h"
#include "tempex/features.h"
#include "tempex/postproc.h"
#include "tempex/stats.h"
#include "tempex/tagger.h"

namespace tempex {

struct SplitIndices {
  std::vector<size_t> part_a;
  std::vector<size_t> part_b;
};

// Permutes n items with `seed` and puts the first ceil(fraction * n) in
// part_a. Throws Error if n is 0 or fraction is outside (0, 1).
SplitIndices ShuffleAndSplit(size_t n, uint64_t seed, double fraction);

// Flattens the sentences of `docs` in document order.
std::vector<Sequence> Sentences(std::span<const Document> docs);

// folds[r][f] lists the sentence indices tested in fold f of repeat r.
struct CvPlan {
  size_t k = 10;
  size_t repeats = 5;
  uint64_t seed = 490;
  std::vector<std::vector<std::vector<size_t>>> folds;
};

// Throws Error if k < 2, repeats < 1 or n < k.
CvPlan MakeCvPlan(size_t n, size_t k, size_t repeats, uint64_t seed);

struct CvOptions {
  size_t k = 10;
  size_t repeats = 5;
  uint64_t seed = 490;
  std::vector<ModelProfile> profiles = {ModelProfile::kModel1};
  CrfHyperparams hyperparams;
  size_t extra_columns = 0;
  // Also score each fold with post-processing, priors taken from the
  // fold's training sentences.
  bool evaluate_pipeline = true;
  PipelineConfig pipeline;
  // 0 picks the hardware concurrency.
  unsigned threads = 0;
};

struct FoldResult {
  ModelProfile profile = ModelProfile::kModel1;
  size_t repeat = 0;
  size_t fold = 0;
  size_t train_size = 0;
  size_t test_size = 0;
  EvalReport crf;
  std::optional<EvalReport> pipeline;
};

struct CvResult {
  CvPlan plan;
  // Ordered by profile, then repeat, then fold.
  std::vector<FoldResult> folds;
};

// Trains one model per (profile, repeat, fold), in parallel, and evaluates
// the held-out sentences span by span. Results do not depend on the number
// of threads.
CvResult CrossValidate(std::span<const Sequence> sentences,
                       const Resources& resources, const CvOptions& options);

// Strict F1 of each fold for one profile; `pipeline` selects the condition.
std::vector<double> StrictF1Column(const CvResult& result,
                                   ModelProfile profile, bool pipeline);

// profile TAB condition TAB repeat TAB fold TAB train TAB test TAB strict
// P/R/F1 TAB lenient P/R/F1, fractions to six decimals.
void WriteCvMatrix(const CvResult& result, std::ostream& out);
// repeat TAB fold TAB sentence, one line per tested sentence.
void WriteFoldAssignments(const CvPlan& plan, std::ostream& out);
// Means per profile and condition, the paired t-test between conditions and,
// with several profiles, one-way ANOVA over the CRF-only strict F1.
void WriteCvSummary(const CvResult& result, const CvOptions& options,
                    std::ostream& out);

}  // namespace tempex

#endif  // TEMPEX_EXPERIMENT_H_
