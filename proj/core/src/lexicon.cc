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

#include "tempex/lexicon.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tempex/error.h"

namespace tempex {

std::string ToLower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string> ParseLexiconLines(std::string_view text) {
  std::vector<std::string> lines;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    const size_t first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos) {
      const size_t last = line.find_last_not_of(" \t\r");
      lines.push_back(ToLower(line.substr(first, last - first + 1)));
    }
    start = end + 1;
  }
  return lines;
}

Lexicon::Lexicon(const std::vector<std::string>& entries)
    : entries_(entries.begin(), entries.end()) {}

bool Lexicon::Contains(std::string_view word) const {
  for (char c : word) {
    if (c >= 'A' && c <= 'Z') return entries_.contains(ToLower(word));
  }
  return entries_.contains(word);
}

const LexiconSet& LexiconSet::Builtin() {
  static const LexiconSet builtin = [] {
    LexiconSet set;
    for (const auto& [name, text] : BuiltinLexiconSources()) {
      set.lexicons_.emplace(name, Lexicon(ParseLexiconLines(text)));
    }
    return set;
  }();
  return builtin;
}

LexiconSet LexiconSet::Load(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) {
    throw Error("lexicon directory '" + dir + "' does not exist");
  }
  LexiconSet set = Builtin();
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".txt") continue;
    std::ifstream in(entry.path());
    if (!in) throw Error("cannot read lexicon " + entry.path().string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    set.lexicons_[entry.path().stem().string()] =
        Lexicon(ParseLexiconLines(buffer.str()));
  }
  return set;
}

const Lexicon& LexiconSet::Get(std::string_view name) const {
  auto it = lexicons_.find(name);
  if (it == lexicons_.end()) {
    throw Error("unknown lexicon '" + std::string(name) + "'");
  }
  return it->second;
}

}  // namespace tempex
