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


// Run configuration: an INI-style file of `key = value` lines grouped in
// sections. Recognized keys, with defaults:
//
//   [model]       profile = model1, extra_columns = 0
//   [crf]         c = 1, eta = 0.0001, max_iter = 300, cutoff = 1
//   [pipeline]    enabled = true, threshold = 0.87,
//                 stages = prob_correction,bio_fixer,threshold_switcher,bio_fixer
//   [normalizer]  enabled = true, day_first = false,
//                 bare_weekday = nearest_past, fallback = false
//   [paths]       gazetteers = a.txt,b.txt  lexicons = dir  rules = file
//                 priors = file
//   [experiment]  seed = 490, k = 10, repeats = 5, split = 1,
//                 profiles = model1
//
// Relative paths are resolved against the directory of the file.

#ifndef TEMPEX_CONFIG_H_
#define TEMPEX_CONFIG_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tempex/crf.h"
#include "tempex/features.h"
#include "tempex/normalizer.h"
#include "tempex/postproc.h"

namespace tempex {

struct RunConfig {
  ModelProfile profile = ModelProfile::kModel1;
  size_t extra_columns = 0;
  CrfHyperparams hyperparams;

  bool pipeline_enabled = true;
  PipelineConfig pipeline;

  bool normalize = true;
  NormalizerOptions normalizer;
  bool fallback = false;

  std::vector<std::string> gazetteer_paths;
  std::optional<std::string> lexicon_dir;
  std::optional<std::string> rules_path;
  std::optional<std::string> priors_path;

  uint64_t seed = 490;
  size_t k = 10;
  size_t repeats = 5;
  double split = 1.0;  // share of sentences given to cross-validation
  std::vector<ModelProfile> profiles = {ModelProfile::kModel1};

  // Throws Error if a referenced path does not exist, the threshold is
  // outside [0, 1], or the split is outside (0, 1].
  void Validate() const;
};

// Throws ParseError for syntax errors, unknown sections or keys and bad
// values, naming the offending line where possible.
RunConfig ParseRunConfig(std::istream& in, const std::string& source,
                         const std::string& base_dir = "");
RunConfig LoadRunConfig(const std::string& path);

}  // namespace tempex

#endif  // TEMPEX_CONFIG_H_
