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

#ifndef TEMPEX_GAZETTEER_H_
#define TEMPEX_GAZETTEER_H_

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tempex/corpus.h"

namespace tempex {

// A phrase lexicon matched over token sequences. Phrases are tokenized with
// the document tokenizer and stored lower-cased.
class Gazetteer {
 public:
  Gazetteer(std::string name, const std::vector<std::string>& phrases);

  // Reads a lexicon-format file; the name defaults to the file stem.
  static Gazetteer Load(const std::string& path, std::string name = "");

  const std::string& name() const { return name_; }
  size_t size() const { return phrases_.size(); }

  // Leftmost-longest, case-insensitive matching: B on the first token of a
  // matched phrase, I on the rest, O elsewhere.
  std::vector<Label> Match(const Sequence& seq) const;

 private:
  std::string name_;
  std::set<std::vector<std::string>> phrases_;
  size_t longest_ = 0;
};

}  // namespace tempex

#endif  // TEMPEX_GAZETTEER_H_
