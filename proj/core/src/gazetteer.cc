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

#include "tempex/gazetteer.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tempex/error.h"
#include "tempex/lexicon.h"
#include "tempex/tokenizer.h"

namespace tempex {

Gazetteer::Gazetteer(std::string name, const std::vector<std::string>& phrases)
    : name_(std::move(name)) {
  for (const std::string& phrase : phrases) {
    std::vector<std::string> words;
    for (const Token& token : Tokenize(phrase)) {
      words.push_back(ToLower(token.surface));
    }
    if (words.empty()) continue;
    longest_ = std::max(longest_, words.size());
    phrases_.insert(std::move(words));
  }
}

Gazetteer Gazetteer::Load(const std::string& path, std::string name) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open gazetteer '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  if (name.empty()) name = std::filesystem::path(path).stem().string();
  return Gazetteer(std::move(name), ParseLexiconLines(buffer.str()));
}

std::vector<Label> Gazetteer::Match(const Sequence& seq) const {
  std::vector<Label> labels(seq.size(), Label::kO);
  std::vector<std::string> lower;
  lower.reserve(seq.size());
  for (const Token& token : seq.tokens) lower.push_back(ToLower(token.surface));

  std::vector<std::string> candidate;
  size_t i = 0;
  while (i < lower.size()) {
    size_t best = 0;
    const size_t max_len = std::min(longest_, lower.size() - i);
    for (size_t len = max_len; len >= 1; --len) {
      candidate.assign(lower.begin() + i, lower.begin() + i + len);
      if (phrases_.contains(candidate)) {
        best = len;
        break;
      }
    }
    if (best == 0) {
      ++i;
      continue;
    }
    labels[i] = Label::kB;
    for (size_t k = 1; k < best; ++k) labels[i + k] = Label::kI;
    i += best;
  }
  return labels;
}

}  // namespace tempex
