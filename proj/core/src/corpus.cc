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

#include "tempex/corpus.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "tempex/error.h"

namespace tempex {

namespace {

constexpr std::string_view kMissing = "_";
constexpr size_t kFixedColumns = 8;

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t start = 0;
  while (true) {
    size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

std::optional<size_t> ParseOffset(std::string_view text) {
  size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    return std::nullopt;
  }
  return value;
}

std::optional<std::string> OptionalColumn(std::string_view text) {
  if (text == kMissing) return std::nullopt;
  return std::string(text);
}

std::string_view ColumnOrMissing(const std::optional<std::string>& value) {
  return value ? std::string_view(*value) : kMissing;
}

}  // namespace

char LabelChar(Label label) {
  switch (label) {
    case Label::kB: return 'B';
    case Label::kI: return 'I';
    case Label::kO: return 'O';
  }
  return '?';
}

std::optional<Label> ParseLabel(std::string_view text) {
  if (text == "B") return Label::kB;
  if (text == "I") return Label::kI;
  if (text == "O") return Label::kO;
  return std::nullopt;
}

std::optional<size_t> FirstBioViolation(std::span<const Label> labels) {
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == Label::kI && (i == 0 || labels[i - 1] == Label::kO)) {
      return i;
    }
  }
  return std::nullopt;
}

std::string LabelsToString(std::span<const Label> labels) {
  std::string out;
  out.reserve(labels.size());
  for (Label label : labels) out.push_back(LabelChar(label));
  return out;
}

TimexSpan MakeSpan(const Sequence& seq, size_t sequence_index, size_t first,
                   size_t last) {
  TimexSpan span;
  span.sequence_index = sequence_index;
  span.first_token = first;
  span.last_token = last;
  span.char_start = seq.tokens[first].char_start;
  span.char_end = seq.tokens[last].char_end;
  for (size_t i = first; i <= last; ++i) {
    if (i > first) {
      size_t gap = seq.tokens[i].char_start - seq.tokens[i - 1].char_end;
      span.text.append(gap, ' ');
    }
    span.text += seq.tokens[i].surface;
  }
  return span;
}

std::string_view TimexTypeName(TimexType type) {
  switch (type) {
    case TimexType::kDate: return "DATE";
    case TimexType::kTime: return "TIME";
    case TimexType::kDuration: return "DURATION";
    case TimexType::kSet: return "SET";
  }
  return "DATE";
}

std::optional<TimexType> ParseTimexType(std::string_view name) {
  if (name == "DATE") return TimexType::kDate;
  if (name == "TIME") return TimexType::kTime;
  if (name == "DURATION") return TimexType::kDuration;
  if (name == "SET") return TimexType::kSet;
  return std::nullopt;
}

std::vector<Label> SpansToBio(std::span<const TimexSpan> spans,
                              const Sequence& seq) {
  std::vector<Label> labels(seq.size(), Label::kO);
  std::vector<const TimexSpan*> owner(seq.size(), nullptr);
  for (const TimexSpan& span : spans) {
    if (span.first_token > span.last_token || span.last_token >= seq.size()) {
      throw Error("span [" + std::to_string(span.first_token) + ", " +
                  std::to_string(span.last_token) +
                  "] is outside a sequence of " + std::to_string(seq.size()) +
                  " tokens");
    }
    for (size_t i = span.first_token; i <= span.last_token; ++i) {
      if (owner[i] != nullptr) {
        throw Error("overlapping spans [" +
                    std::to_string(owner[i]->first_token) + ", " +
                    std::to_string(owner[i]->last_token) + "] and [" +
                    std::to_string(span.first_token) + ", " +
                    std::to_string(span.last_token) + "]");
      }
      owner[i] = &span;
      labels[i] = i == span.first_token ? Label::kB : Label::kI;
    }
  }
  return labels;
}

std::vector<TimexSpan> BioToSpans(std::span<const Label> labels,
                                  const Sequence& seq, size_t sequence_index,
                                  BioMode mode) {
  if (labels.size() != seq.size()) {
    throw Error("label count " + std::to_string(labels.size()) +
                " does not match token count " + std::to_string(seq.size()));
  }
  if (mode == BioMode::kStrict) {
    if (auto bad = FirstBioViolation(labels)) {
      throw Error("invalid BIO sequence: I at position " +
                  std::to_string(*bad) + " does not continue a span");
    }
  }
  std::vector<TimexSpan> spans;
  std::optional<size_t> open;
  auto close = [&](size_t end) {
    if (open) spans.push_back(MakeSpan(seq, sequence_index, *open, end));
    open.reset();
  };
  for (size_t i = 0; i < labels.size(); ++i) {
    switch (labels[i]) {
      case Label::kB:
        if (open) close(i - 1);
        open = i;
        break;
      case Label::kI:
        if (!open) open = i;  // tolerant: orphan I acts as B
        break;
      case Label::kO:
        if (open) close(i - 1);
        break;
    }
  }
  if (open) close(labels.size() - 1);
  return spans;
}

std::vector<TimexSpan> GoldSpans(const Document& doc) {
  std::vector<TimexSpan> spans;
  for (size_t s = 0; s < doc.sequences.size(); ++s) {
    const Sequence& seq = doc.sequences[s];
    if (!seq.gold_labels) continue;
    auto found = BioToSpans(*seq.gold_labels, seq, s, BioMode::kStrict);
    spans.insert(spans.end(), found.begin(), found.end());
  }
  return spans;
}

std::string ReconstructText(const Document& doc) {
  std::string text;
  for (size_t s = 0; s < doc.sequences.size(); ++s) {
    bool sentence_start = true;
    for (const Token& token : doc.sequences[s].tokens) {
      if (token.char_start > text.size()) {
        size_t first_gap = text.size();
        text.resize(token.char_start, ' ');
        if (sentence_start && s > 0) text[first_gap] = '\n';
      }
      text.replace(token.char_start, token.surface.size(), token.surface);
      text.resize(token.char_end);
      sentence_start = false;
    }
  }
  return text;
}

std::vector<Document> ParseCorpus(std::istream& in, const std::string& source) {
  std::vector<Document> docs;
  Sequence current;
  // Per sentence: did any token carry a label, did any lack one.
  bool any_labeled = false, any_unlabeled = false;
  size_t sentence_line = 0;
  size_t last_end = 0;
  bool have_token_in_doc = false;

  auto finish_sentence = [&](size_t line_no) {
    if (current.tokens.empty()) return;
    if (any_labeled && any_unlabeled) {
      throw ParseError(source, sentence_line,
                       "sentence mixes labeled and unlabeled tokens");
    }
    if (current.gold_labels) {
      if (auto bad = FirstBioViolation(*current.gold_labels)) {
        throw ParseError(source, sentence_line + *bad,
                         "invalid BIO sequence in gold labels");
      }
    }
    (void)line_no;
    docs.back().sequences.push_back(std::move(current));
    current = Sequence{};
    any_labeled = any_unlabeled = false;
  };

  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("#doc", 0) == 0) {
      if (!docs.empty()) {
        finish_sentence(line_no);
        docs.back().raw_text = ReconstructText(docs.back());
      }
      std::istringstream header(line.substr(4));
      std::string id, dct, trailing;
      if (!(header >> id >> dct) || (header >> trailing)) {
        throw ParseError(source, line_no,
                         "document header must be '#doc <id> <DCT>'");
      }
      Document doc;
      doc.id = id;
      try {
        doc.dct = Anchor::Parse(dct);
      } catch (const Error& e) {
        throw ParseError(source, line_no, e.what());
      }
      docs.push_back(std::move(doc));
      last_end = 0;
      have_token_in_doc = false;
      continue;
    }
    if (line.empty()) {
      if (!docs.empty()) finish_sentence(line_no);
      continue;
    }
    if (docs.empty()) {
      throw ParseError(source, line_no,
                       "token line before any '#doc' header (missing DCT)");
    }
    auto fields = SplitTabs(line);
    if (fields.size() < kFixedColumns) {
      throw ParseError(source, line_no,
                       "expected at least " + std::to_string(kFixedColumns) +
                           " columns, found " + std::to_string(fields.size()));
    }
    Token token;
    token.surface = std::string(fields[0]);
    auto start = ParseOffset(fields[1]);
    auto end = ParseOffset(fields[2]);
    if (!start || !end) {
      throw ParseError(source, line_no, "character offsets must be integers");
    }
    if (token.surface.empty() || *start >= *end ||
        *end - *start != token.surface.size()) {
      throw ParseError(source, line_no,
                       "offsets do not match surface '" + token.surface + "'");
    }
    if (token.surface.find_first_of(" \t\n\r") != std::string::npos) {
      throw ParseError(source, line_no, "surface contains whitespace");
    }
    if (have_token_in_doc && *start < last_end) {
      throw ParseError(source, line_no, "token offsets are not increasing");
    }
    token.char_start = *start;
    token.char_end = *end;
    token.pos = OptionalColumn(fields[3]);
    token.lemma = OptionalColumn(fields[4]);
    token.chunk = OptionalColumn(fields[5]);
    token.pnp = OptionalColumn(fields[6]);
    for (size_t i = kFixedColumns; i < fields.size(); ++i) {
      token.extra.emplace_back(fields[i]);
    }
    if (current.tokens.empty()) sentence_line = line_no;
    if (fields[7] == kMissing) {
      any_unlabeled = true;
    } else if (auto label = ParseLabel(fields[7])) {
      any_labeled = true;
      if (!current.gold_labels) current.gold_labels.emplace();
      current.gold_labels->push_back(*label);
    } else {
      throw ParseError(source, line_no,
                       "label must be B, I, O or _, found '" +
                           std::string(fields[7]) + "'");
    }
    if (any_labeled && any_unlabeled) {
      throw ParseError(source, line_no,
                       "sentence mixes labeled and unlabeled tokens");
    }
    last_end = *end;
    have_token_in_doc = true;
    current.tokens.push_back(std::move(token));
  }
  if (!docs.empty()) {
    finish_sentence(line_no);
    docs.back().raw_text = ReconstructText(docs.back());
  }
  return docs;
}

std::vector<Document> ReadCorpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open corpus file '" + path + "'");
  return ParseCorpus(in, path);
}

void WriteCorpus(std::span<const Document> docs, std::ostream& out) {
  for (size_t d = 0; d < docs.size(); ++d) {
    const Document& doc = docs[d];
    if (d > 0) out << '\n';
    out << "#doc " << doc.id << ' ' << doc.dct.ToIso() << '\n';
    for (size_t s = 0; s < doc.sequences.size(); ++s) {
      const Sequence& seq = doc.sequences[s];
      if (s > 0) out << '\n';
      for (size_t i = 0; i < seq.tokens.size(); ++i) {
        const Token& t = seq.tokens[i];
        out << t.surface << '\t' << t.char_start << '\t' << t.char_end << '\t'
            << ColumnOrMissing(t.pos) << '\t' << ColumnOrMissing(t.lemma)
            << '\t' << ColumnOrMissing(t.chunk) << '\t'
            << ColumnOrMissing(t.pnp) << '\t';
        if (seq.gold_labels) {
          out << LabelChar((*seq.gold_labels)[i]);
        } else {
          out << kMissing;
        }
        for (const std::string& extra : t.extra) out << '\t' << extra;
        out << '\n';
      }
    }
  }
}

void WriteCorpus(std::span<const Document> docs, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write corpus file '" + path + "'");
  WriteCorpus(docs, out);
}

namespace {

std::string EmitInline(const Document& doc, std::span<const Timex> timexes,
                       bool with_attributes) {
  std::vector<const Timex*> ordered;
  for (const Timex& t : timexes) ordered.push_back(&t);
  std::sort(ordered.begin(), ordered.end(), [](const Timex* a, const Timex* b) {
    return a->span.char_start < b->span.char_start;
  });
  for (size_t i = 0; i < ordered.size(); ++i) {
    const TimexSpan& span = ordered[i]->span;
    if (span.char_start >= span.char_end ||
        span.char_end > doc.raw_text.size()) {
      throw Error("timex extent [" + std::to_string(span.char_start) + ", " +
                  std::to_string(span.char_end) + ") is outside the text");
    }
    if (i > 0 && span.char_start < ordered[i - 1]->span.char_end) {
      throw Error("overlapping timexes at characters " +
                  std::to_string(ordered[i - 1]->span.char_start) + " and " +
                  std::to_string(span.char_start));
    }
  }
  std::string out;
  size_t cursor = 0;
  for (size_t i = 0; i < ordered.size(); ++i) {
    const Timex& t = *ordered[i];
    out.append(doc.raw_text, cursor, t.span.char_start - cursor);
    out += "<TIMEX3 tid=\"t" + std::to_string(i + 1) + "\"";
    if (with_attributes) {
      out += " type=\"";
      out += TimexTypeName(t.type);
      out += "\" value=\"" + t.value + "\"";
    }
    out += ">";
    out.append(doc.raw_text, t.span.char_start,
               t.span.char_end - t.span.char_start);
    out += "</TIMEX3>";
    cursor = t.span.char_end;
  }
  out.append(doc.raw_text, cursor);
  return out;
}

}  // namespace

std::string EmitInlineTimex(const Document& doc,
                            std::span<const Timex> timexes) {
  return EmitInline(doc, timexes, true);
}

std::string EmitInlineSpans(const Document& doc,
                            std::span<const TimexSpan> spans) {
  std::vector<Timex> timexes;
  for (const TimexSpan& s : spans) timexes.push_back(Timex{s, TimexType::kDate, ""});
  return EmitInline(doc, timexes, false);
}

std::vector<TimexAttributes> ParseAttributes(std::istream& in,
                                             const std::string& source) {
  std::vector<TimexAttributes> rows;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto fields = SplitTabs(line);
    if (fields.size() != 5) {
      throw ParseError(source, line_no,
                       "expected 5 columns, found " +
                           std::to_string(fields.size()));
    }
    auto start = ParseOffset(fields[1]);
    auto end = ParseOffset(fields[2]);
    auto type = ParseTimexType(fields[3]);
    if (!start || !end || *start >= *end) {
      throw ParseError(source, line_no, "invalid character extent");
    }
    if (!type) {
      throw ParseError(source, line_no,
                       "unknown timex type '" + std::string(fields[3]) + "'");
    }
    rows.push_back(TimexAttributes{std::string(fields[0]), *start, *end, *type,
                                   std::string(fields[4])});
  }
  return rows;
}

std::vector<TimexAttributes> ReadAttributes(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open attribute file '" + path + "'");
  return ParseAttributes(in, path);
}

void WriteAttributes(std::span<const TimexAttributes> rows, std::ostream& out) {
  for (const TimexAttributes& row : rows) {
    out << row.doc_id << '\t' << row.char_start << '\t' << row.char_end << '\t'
        << TimexTypeName(row.type) << '\t' << row.value << '\n';
  }
}

}  // namespace tempex
