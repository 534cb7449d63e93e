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


// Synthetic labeled corpora of templated date and duration expressions.

#ifndef TEMPEX_TESTS_TESTING_SYNTHETIC_H_
#define TEMPEX_TESTS_TESTING_SYNTHETIC_H_

#include <cstdint>
#include <string>
#include <vector>

#include "tempex/corpus.h"

namespace tempex::testing {

struct SyntheticOptions {
  size_t sentences = 250;
  size_t sentences_per_document = 10;
  // Share of sentences without any expression.
  double plain_share = 0.2;
  uint64_t seed = 7;
};

// Every document is dated 2013-04-11. Sentences carry gold BIO labels;
// raw_text is the reconstructed text.
std::vector<Document> SyntheticCorpus(const SyntheticOptions& options);

// A document built from whitespace-separated tokens where a token written
// as [word] is inside a span; "[" opens a span with B, "]" closes it. Text
// between sentences is "\n".
//
//   MakeLabeledDocument("d", {"I left [three days ago] ."})
Document MakeLabeledDocument(const std::string& id,
                             const std::vector<std::string>& sentences,
                             const std::string& dct = "2013-04-11");

}  // namespace tempex::testing

#endif  // TEMPEX_TESTS_TESTING_SYNTHETIC_H_
