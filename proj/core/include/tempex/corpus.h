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

// Text units, BIO labels and the column corpus format.
//
// Column format, one document per block:
//
//   #doc <id> <DCT ISO-8601>
//   surface TAB start TAB end TAB pos TAB lemma TAB chunk TAB pnp TAB label
//   ...
//   <blank line ends a sentence>
//
// Missing annotations are written as "_". The label column is B, I, O or
// "_" for unlabeled data. Columns after the label are kept verbatim as extra
// annotations (e.g. precomputed WordNet features). Offsets are 0-based byte
// offsets into the UTF-8 document text, end exclusive.

#ifndef TEMPEX_CORPUS_H_
#define TEMPEX_CORPUS_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tempex/calendar.h"

namespace tempex {

enum class Label : uint8_t { kB = 0, kI = 1, kO = 2 };

inline constexpr int kNumLabels = 3;
inline constexpr std::array<Label, kNumLabels> kAllLabels = {
    Label::kB, Label::kI, Label::kO};

inline constexpr int LabelIndex(Label label) {
  return static_cast<int>(label);
}
char LabelChar(Label label);
std::optional<Label> ParseLabel(std::string_view text);

// Position of the first BIO violation (an I at position 0 or after an O).
std::optional<size_t> FirstBioViolation(std::span<const Label> labels);
inline bool IsValidBio(std::span<const Label> labels) {
  return !FirstBioViolation(labels).has_value();
}

std::string LabelsToString(std::span<const Label> labels);  // e.g. "BIIO"

struct Token {
  std::string surface;
  size_t char_start = 0;
  size_t char_end = 0;
  std::optional<std::string> pos;
  std::optional<std::string> lemma;
  std::optional<std::string> chunk;
  std::optional<std::string> pnp;
  std::vector<std::string> extra;

  bool operator==(const Token&) const = default;
};

struct Sequence {
  std::vector<Token> tokens;
  std::optional<std::vector<Label>> gold_labels;

  size_t size() const { return tokens.size(); }
  bool operator==(const Sequence&) const = default;
};

struct Document {
  std::string id;
  Anchor dct;
  std::vector<Sequence> sequences;
  std::string raw_text;

  bool operator==(const Document&) const = default;
};

// A run of tokens forming one temporal expression. Character extents are
// derived from the covered tokens.
struct TimexSpan {
  size_t sequence_index = 0;
  size_t first_token = 0;
  size_t last_token = 0;
  size_t char_start = 0;
  size_t char_end = 0;
  std::string text;

  bool operator==(const TimexSpan&) const = default;
};

// Builds a span over tokens [first, last] of `seq`; the text joins the
// surfaces padding each gap with as many spaces as the offsets leave.
TimexSpan MakeSpan(const Sequence& seq, size_t sequence_index, size_t first,
                   size_t last);

enum class TimexType { kDate, kTime, kDuration, kSet };

std::string_view TimexTypeName(TimexType type);
std::optional<TimexType> ParseTimexType(std::string_view name);

struct Timex {
  TimexSpan span;
  TimexType type = TimexType::kDate;
  std::string value;

  bool operator==(const Timex&) const = default;
};

// First token of each span becomes B, the rest I. Throws Error naming the
// offending pair when spans overlap or fall outside the sequence.
std::vector<Label> SpansToBio(std::span<const TimexSpan> spans,
                              const Sequence& seq);

enum class BioMode {
  kStrict,    // invalid BIO is an error
  kTolerant,  // an orphan I opens a new span
};

std::vector<TimexSpan> BioToSpans(std::span<const Label> labels,
                                  const Sequence& seq, size_t sequence_index,
                                  BioMode mode = BioMode::kStrict);

// Gold spans of every labeled sequence of a document.
std::vector<TimexSpan> GoldSpans(const Document& doc);

// Lays surfaces at their offsets and fills gaps with spaces; sentence
// boundaries that leave a gap get a newline in the first gap position.
std::string ReconstructText(const Document& doc);

std::vector<Document> ParseCorpus(std::istream& in,
                                  const std::string& source = "<stream>");
std::vector<Document> ReadCorpus(const std::string& path);
void WriteCorpus(std::span<const Document> docs, std::ostream& out);
void WriteCorpus(std::span<const Document> docs, const std::string& path);

// Wraps each timex in a TIMEX3 element with tids t1, t2, ... in textual
// order. Everything outside the inserted markup is copied byte for byte.
std::string EmitInlineTimex(const Document& doc, std::span<const Timex> timexes);
// As above, without type and value attributes.
std::string EmitInlineSpans(const Document& doc,
                            std::span<const TimexSpan> spans);

// One row of the gold/predicted attribute sidecar:
//   doc_id TAB first_char TAB last_char TAB type TAB value
// where last_char is exclusive, matching the corpus offsets.
struct TimexAttributes {
  std::string doc_id;
  size_t char_start = 0;
  size_t char_end = 0;
  TimexType type = TimexType::kDate;
  std::string value;

  bool operator==(const TimexAttributes&) const = default;
};

std::vector<TimexAttributes> ParseAttributes(std::istream& in,
                                             const std::string& source);
std::vector<TimexAttributes> ReadAttributes(const std::string& path);
void WriteAttributes(std::span<const TimexAttributes> rows, std::ostream& out);

}  // namespace tempex

#endif  // TEMPEX_CORPUS_H_
