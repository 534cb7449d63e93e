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


#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "tempex/normalizer.h"
#include "tempex/tagger.h"
#include "tempex/tokenizer.h"

namespace tempex {
namespace {

constexpr const char* kText =
    "The committee met on Tuesday, two days after the vote of March 3, 2013. "
    "It will report again next month and every week until the summer. "
    "Three years ago the same proposal failed by a wide margin.";

void BM_Tokenize(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(Tokenize(kText));
}
BENCHMARK(BM_Tokenize);

void BM_Features(benchmark::State& state) {
  const Document doc =
      MakeDocument("bench", Anchor::Parse("2013-04-11"), kText);
  const FeaturePipeline pipeline(ModelProfile::kModel1, Resources::Builtin(), 0);
  size_t tokens = 0;
  for (const Sequence& seq : doc.sequences) tokens += seq.size();
  for (auto _ : state) {
    for (const Sequence& seq : doc.sequences) {
      benchmark::DoNotOptimize(pipeline.Features(seq));
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(tokens));
}
BENCHMARK(BM_Features);

void BM_Normalize(benchmark::State& state) {
  const Normalizer normalizer;
  const Anchor anchor = Anchor::Parse("2013-04-11");
  const std::vector<std::string> expressions = {
      "tuesday", "two days", "march 3 , 2013", "next month",
      "every week", "the summer", "three years ago", "yesterday"};
  for (auto _ : state) {
    for (const std::string& e : expressions) {
      benchmark::DoNotOptimize(normalizer.Normalize(e, anchor));
    }
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(expressions.size()));
}
BENCHMARK(BM_Normalize);

}  // namespace
}  // namespace tempex

BENCHMARK_MAIN();
