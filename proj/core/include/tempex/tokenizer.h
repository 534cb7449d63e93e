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

#ifndef TEMPEX_TOKENIZER_H_
#define TEMPEX_TOKENIZER_H_

#include <string>
#include <string_view>
#include <vector>

#include "tempex/calendar.h"
#include "tempex/corpus.h"

namespace tempex {

// Splits text on whitespace and isolates punctuation as one-character
// tokens. A connector stays inside an alphanumeric run when it joins:
//   - or /    any two alphanumerics          Jan-2003, 04/05/2013
//   . , :     two digits                       3.5, 1.000.000, 10:30, 1,000
//   .         single-letter abbreviations      U.S., p.m.
//   '         two letters                      don't
// Bytes >= 0x80 count as letters, so UTF-8 words are never split.
std::vector<Token> Tokenize(std::string_view text);

// Groups tokens into sentences: a sentence ends after '.', '!' or '?' and
// wherever a newline separates two tokens.
std::vector<Sequence> SplitSentences(std::string_view text,
                                     std::vector<Token> tokens);

// Tokenizes and sentence-splits raw text into an unlabeled document.
Document MakeDocument(std::string id, Anchor dct, std::string text);

// True when the token has no letter or digit (punctuation and symbols).
bool IsPunctuation(std::string_view surface);

}  // namespace tempex

#endif  // TEMPEX_TOKENIZER_H_
