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

#include "tempex/tokenizer.h"

#include <utility>

namespace tempex {

namespace {

bool IsSpace(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}
bool IsDigit(unsigned char c) { return c >= '0' && c <= '9'; }
bool IsLetter(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}
bool IsWordChar(unsigned char c) { return IsDigit(c) || IsLetter(c); }

// Length of the letter segment ending at text[end - 1].
size_t LetterSegmentBefore(std::string_view text, size_t end, size_t floor) {
  size_t n = 0;
  while (end > floor && IsLetter(text[end - 1])) {
    --end;
    ++n;
  }
  return n;
}

// Whether the connector at `i` joins the run that started at `start`.
bool KeepsConnector(std::string_view text, size_t start, size_t i) {
  if (i + 1 >= text.size() || i == start) return false;
  const unsigned char prev = text[i - 1];
  const unsigned char next = text[i + 1];
  switch (text[i]) {
    case '-':
    case '/':
      return IsWordChar(prev) && IsWordChar(next);
    case '.':
      if (IsDigit(prev) && IsDigit(next)) return true;
      return IsLetter(prev) && IsLetter(next) &&
             LetterSegmentBefore(text, i, start) == 1 &&
             (i + 2 >= text.size() || !IsLetter(text[i + 2]));
    case ':':
      return IsDigit(prev) && IsDigit(next);
    case ',':
      // Thousands separator: exactly three digits follow.
      if (!IsDigit(prev)) return false;
      for (size_t k = 1; k <= 3; ++k) {
        if (i + k >= text.size() || !IsDigit(text[i + k])) return false;
      }
      return i + 4 >= text.size() || !IsDigit(text[i + 4]);
    case '\'':
      return IsLetter(prev) && IsLetter(next);
    default:
      return false;
  }
}

// A run like "U.S" or "p.m" (single letters joined by dots).
bool IsDottedAbbreviation(std::string_view run) {
  if (run.size() < 3) return false;
  for (size_t i = 0; i < run.size(); ++i) {
    if (i % 2 == 0 ? !IsLetter(run[i]) : run[i] != '.') return false;
  }
  return run.size() % 2 == 1;
}

}  // namespace

bool IsPunctuation(std::string_view surface) {
  for (unsigned char c : surface) {
    if (IsWordChar(c)) return false;
  }
  return !surface.empty();
}

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  size_t i = 0;
  auto emit = [&](size_t start, size_t end) {
    Token token;
    token.surface = std::string(text.substr(start, end - start));
    token.char_start = start;
    token.char_end = end;
    tokens.push_back(std::move(token));
  };
  while (i < text.size()) {
    const unsigned char c = text[i];
    if (IsSpace(c)) {
      ++i;
      continue;
    }
    if (!IsWordChar(c)) {
      emit(i, i + 1);
      ++i;
      continue;
    }
    const size_t start = i;
    while (i < text.size()) {
      if (IsWordChar(text[i])) {
        ++i;
      } else if (KeepsConnector(text, start, i)) {
        ++i;
      } else {
        break;
      }
    }
    // Trailing period of a dotted abbreviation belongs to it.
    if (i < text.size() && text[i] == '.' &&
        IsDottedAbbreviation(text.substr(start, i - start))) {
      ++i;
    }
    emit(start, i);
  }
  return tokens;
}

std::vector<Sequence> SplitSentences(std::string_view text,
                                     std::vector<Token> tokens) {
  std::vector<Sequence> sentences;
  Sequence current;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (!current.tokens.empty()) {
      const size_t gap_start = current.tokens.back().char_end;
      const std::string_view gap =
          text.substr(gap_start, tokens[i].char_start - gap_start);
      if (gap.find('\n') != std::string_view::npos) {
        sentences.push_back(std::move(current));
        current = Sequence{};
      }
    }
    const std::string& s = tokens[i].surface;
    const bool terminal = s == "." || s == "!" || s == "?";
    current.tokens.push_back(std::move(tokens[i]));
    if (terminal) {
      sentences.push_back(std::move(current));
      current = Sequence{};
    }
  }
  if (!current.tokens.empty()) sentences.push_back(std::move(current));
  return sentences;
}

Document MakeDocument(std::string id, Anchor dct, std::string text) {
  Document doc;
  doc.id = std::move(id);
  doc.dct = dct;
  doc.sequences = SplitSentences(text, Tokenize(text));
  doc.raw_text = std::move(text);
  return doc;
}

}  // namespace tempex
