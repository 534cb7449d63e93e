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

#include "tempex/postproc.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "tempex/error.h"
#include "tempex/lexicon.h"
#include "tempex/tokenizer.h"

namespace tempex {

LabelDistribution PriorTable::Entry::Distribution() const {
  const double total =
      static_cast<double>(counts[0] + counts[1] + counts[2]);
  LabelDistribution dist{};
  if (total == 0) return dist;
  for (int y = 0; y < kNumLabels; ++y) dist[y] = counts[y] / total;
  return dist;
}

PriorTable PriorTable::Build(std::span<const Sequence> sequences) {
  std::map<std::string, Entry, std::less<>> all;
  for (const Sequence& seq : sequences) {
    if (!seq.gold_labels) {
      throw Error("prior table needs gold labels on every sentence");
    }
    for (size_t i = 0; i < seq.size(); ++i) {
      const Label label = (*seq.gold_labels)[i];
      Entry& e = all[ToLower(seq.tokens[i].surface)];
      ++e.counts[LabelIndex(label)];
      if (label != Label::kO) ++e.in_span;
    }
  }
  PriorTable table;
  for (auto& [token, entry] : all) {
    if (entry.in_span >= kMinInSpan) table.entries_.emplace(token, entry);
  }
  return table;
}

PriorTable PriorTable::Build(std::span<const Document> docs) {
  std::vector<Sequence> sequences;
  for (const Document& doc : docs) {
    sequences.insert(sequences.end(), doc.sequences.begin(),
                     doc.sequences.end());
  }
  return Build(sequences);
}

std::optional<LabelDistribution> PriorTable::Find(
    std::string_view token) const {
  auto it = entries_.find(ToLower(token));
  if (it == entries_.end()) return std::nullopt;
  return it->second.Distribution();
}

void PriorTable::Write(std::ostream& out) const {
  for (const auto& [token, e] : entries_) {
    out << token << '\t' << e.counts[0] << '\t' << e.counts[1] << '\t'
        << e.counts[2] << '\t' << e.in_span << '\n';
  }
}

void PriorTable::Save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write prior table '" + path + "'");
  Write(out);
}

PriorTable PriorTable::Read(std::istream& in, const std::string& source) {
  PriorTable table;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest = line;
    while (true) {
      const size_t tab = rest.find('\t');
      fields.push_back(rest.substr(0, tab));
      if (tab == std::string_view::npos) break;
      rest = rest.substr(tab + 1);
    }
    if (fields.size() != 5) {
      throw ParseError(source, line_no, "prior table rows need 5 columns");
    }
    Entry e;
    size_t* targets[] = {&e.counts[0], &e.counts[1], &e.counts[2], &e.in_span};
    for (int k = 0; k < 4; ++k) {
      const std::string_view f = fields[k + 1];
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), *targets[k]);
      if (ec != std::errc() || ptr != f.data() + f.size()) {
        throw ParseError(source, line_no, "invalid count '" + std::string(f) + "'");
      }
    }
    if (e.in_span > e.counts[0] + e.counts[1]) {
      throw ParseError(source, line_no, "in-span count exceeds B+I counts");
    }
    table.entries_[ToLower(fields[0])] = e;
  }
  return table;
}

PriorTable PriorTable::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open prior table '" + path + "'");
  return Read(in, path);
}

Label ArgMax(const LabelDistribution& dist) {
  int best = 0;
  for (int y = 1; y < kNumLabels; ++y) {
    if (dist[y] > dist[best]) best = y;
  }
  return static_cast<Label>(best);
}

CorrectionResult ProbabilisticCorrection(const MarginalTable& marginals,
                                         std::span<const Token> tokens,
                                         const PriorTable& priors) {
  if (marginals.size() != tokens.size()) {
    throw Error("marginal table and token list differ in length");
  }
  CorrectionResult result{marginals, {}};
  result.labels.reserve(tokens.size());
  for (size_t t = 0; t < tokens.size(); ++t) {
    auto& row = result.marginals.probs[t];
    if (auto prior = priors.Find(tokens[t].surface)) {
      for (int y = 0; y < kNumLabels; ++y) row[y] = 0.5 * (row[y] + (*prior)[y]);
    }
    result.labels.push_back(ArgMax(row));
  }
  return result;
}

std::vector<Label> BioFixer(std::span<const Label> labels,
                            std::span<const Token> tokens) {
  if (labels.size() != tokens.size()) {
    throw Error("label and token lists differ in length");
  }
  std::vector<Label> out(labels.begin(), labels.end());
  if (!out.empty() && out[0] == Label::kI) out[0] = Label::kB;
  for (size_t t = 0; t + 1 < out.size(); ++t) {
    if (out[t] == Label::kO && out[t + 1] == Label::kI) out[t] = Label::kB;
  }
  for (size_t t = 1; t < out.size(); ++t) {
    if (out[t] == Label::kB && out[t - 1] != Label::kO &&
        !IsPunctuation(tokens[t - 1].surface) &&
        !IsPunctuation(tokens[t].surface)) {
      out[t] = Label::kI;
    }
  }
  return out;
}

std::vector<Label> ThresholdLabelSwitcher(std::span<const Label> labels,
                                          std::span<const Token> tokens,
                                          const PriorTable& priors,
                                          double threshold) {
  if (labels.size() != tokens.size()) {
    throw Error("label and token lists differ in length");
  }
  std::vector<Label> out(labels.begin(), labels.end());
  for (size_t t = 0; t < tokens.size(); ++t) {
    auto prior = priors.Find(tokens[t].surface);
    if (!prior) continue;
    const Label best = ArgMax(*prior);
    if ((*prior)[LabelIndex(best)] > threshold) out[t] = best;
  }
  return out;
}

std::string_view StageName(Stage stage) {
  switch (stage) {
    case Stage::kProbCorrection: return "prob_correction";
    case Stage::kBioFixer: return "bio_fixer";
    case Stage::kThresholdSwitcher: return "threshold_switcher";
  }
  return "bio_fixer";
}

std::optional<Stage> ParseStage(std::string_view name) {
  if (name == "prob_correction") return Stage::kProbCorrection;
  if (name == "bio_fixer") return Stage::kBioFixer;
  if (name == "threshold_switcher") return Stage::kThresholdSwitcher;
  return std::nullopt;
}

std::vector<Stage> ParseStageList(std::string_view text) {
  std::vector<Stage> stages;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view name = text.substr(start, comma - start);
    while (!name.empty() && name.front() == ' ') name.remove_prefix(1);
    while (!name.empty() && name.back() == ' ') name.remove_suffix(1);
    if (!name.empty()) {
      auto stage = ParseStage(name);
      if (!stage) {
        throw Error("unknown pipeline stage '" + std::string(name) + "'");
      }
      stages.push_back(*stage);
    }
    start = comma + 1;
  }
  return stages;
}

std::vector<Label> RunPipeline(const MarginalTable& marginals,
                               std::span<const Label> crf_labels,
                               std::span<const Token> tokens,
                               const PriorTable& priors,
                               const PipelineConfig& config) {
  if (!(config.threshold >= 0.0 && config.threshold <= 1.0)) {
    throw Error("pipeline threshold must lie in [0, 1]");
  }
  std::vector<Label> labels(crf_labels.begin(), crf_labels.end());
  for (Stage stage : config.stages) {
    switch (stage) {
      case Stage::kProbCorrection:
        labels = ProbabilisticCorrection(marginals, tokens, priors).labels;
        break;
      case Stage::kBioFixer:
        labels = BioFixer(labels, tokens);
        break;
      case Stage::kThresholdSwitcher:
        labels = ThresholdLabelSwitcher(labels, tokens, priors,
                                        config.threshold);
        break;
    }
  }
  // A stage list that does not end with the fixer can leave orphan I labels.
  if (!IsValidBio(labels)) labels = BioFixer(labels, tokens);
  return labels;
}

}  // namespace tempex
