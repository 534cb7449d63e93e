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


// Span matching, precision/recall/F1, attribute accuracies and the overall
// score.

#ifndef TEMPEX_EVAL_H_
#define TEMPEX_EVAL_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tempex/corpus.h"

namespace tempex {

struct MatchCounts {
  size_t true_positives = 0;
  size_t predicted_total = 0;
  size_t gold_total = 0;

  MatchCounts& operator+=(const MatchCounts& other);
  bool operator==(const MatchCounts&) const = default;
};

enum class MatchRegime { kStrict, kLenient };

struct AlignedPair {
  size_t gold = 0;  // index into the gold list
  size_t pred = 0;  // index into the predicted list

  bool operator==(const AlignedPair&) const = default;
};

struct MatchResult {
  MatchCounts counts;
  std::vector<AlignedPair> alignment;  // ordered by gold start
};

// Spans are compared by character extent [char_start, char_end). Strict
// pairs need identical extents; lenient pairs need any overlap and are
// aligned greedily left to right, one to one. Throws Error if spans within
// one list overlap.
MatchResult MatchSpans(std::span<const TimexSpan> gold,
                       std::span<const TimexSpan> pred, MatchRegime regime);

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Fractions in [0, 1]; an empty denominator gives 0.
Prf ComputePrf(const MatchCounts& counts);

// Harmonic mean on whatever scale p and r use; 0 when p + r = 0.
double F1FromPrecisionRecall(double p, double r);

enum class Attribute { kType, kValue };

struct AccuracyCounts {
  size_t correct = 0;
  size_t total = 0;

  AccuracyCounts& operator+=(const AccuracyCounts& other);
};

struct AccuracyResult {
  double accuracy = 0.0;
  size_t correct = 0;
  size_t total = 0;
  // Set when the alignment is empty; accuracy is then 0.
  bool empty_alignment = false;
};

AccuracyResult Accuracy(const AccuracyCounts& counts);

// Share of aligned pairs whose attribute strings are equal. Values compare
// as exact, case-sensitive strings.
AccuracyResult AttributeAccuracy(std::span<const AlignedPair> alignment,
                                 std::span<const Timex> gold,
                                 std::span<const Timex> pred,
                                 Attribute attribute);

// Scale-tagged reals so that the overall score cannot mix a fraction with a
// percentage.
struct Fraction {
  double value = 0.0;
};
struct Percent {
  double value = 0.0;
};

constexpr Fraction OverallScore(Fraction lenient_f1, Fraction value_accuracy) {
  return Fraction{lenient_f1.value * value_accuracy.value};
}
constexpr Percent OverallScore(Percent lenient_f1, Percent value_accuracy) {
  return Percent{lenient_f1.value * value_accuracy.value / 100.0};
}
Fraction OverallScore(Fraction, Percent) = delete;
Fraction OverallScore(Percent, Fraction) = delete;

constexpr Percent ToPercent(Fraction f) { return Percent{f.value * 100.0}; }
constexpr Fraction ToFraction(Percent p) { return Fraction{p.value / 100.0}; }

// Which alignment the attribute accuracies are computed over.
enum class AccuracyBasis { kLenient, kStrict };

struct EvalReport {
  MatchCounts strict_counts;
  MatchCounts lenient_counts;
  AccuracyCounts type_counts;
  AccuracyCounts value_counts;
  bool has_attributes = false;

  Prf strict() const { return ComputePrf(strict_counts); }
  Prf lenient() const { return ComputePrf(lenient_counts); }
  // nullopt when no attributes were evaluated.
  std::optional<AccuracyResult> type_accuracy() const;
  std::optional<AccuracyResult> value_accuracy() const;
  // Lenient F1 times value accuracy; nullopt without attributes.
  std::optional<Fraction> overall() const;
};

// Accumulates counts over documents or sentences.
class Evaluator {
 public:
  explicit Evaluator(AccuracyBasis basis = AccuracyBasis::kLenient)
      : basis_(basis) {}

  // Spans only.
  void AddSpans(std::span<const TimexSpan> gold,
                std::span<const TimexSpan> pred);
  // Spans plus type and value.
  void AddTimexes(std::span<const Timex> gold, std::span<const Timex> pred);

  const EvalReport& report() const { return report_; }

 private:
  AccuracyBasis basis_;
  EvalReport report_;
};

// Evaluates predicted documents against gold ones. Documents are paired by
// id; any id present on only one side raises Error listing the ids. When
// both attribute lists are non-empty, each span's type and value come from
// the sidecar row with the same document and character extent.
EvalReport EvaluateCorpora(std::span<const Document> gold,
                           std::span<const TimexAttributes> gold_attributes,
                           std::span<const Document> pred,
                           std::span<const TimexAttributes> pred_attributes,
                           AccuracyBasis basis = AccuracyBasis::kLenient);

// Aligned table with percentages to two decimals.
void WriteReportText(const EvalReport& report, std::ostream& out);
// metric TAB value, one line per metric, percentages to two decimals.
void WriteReportTsv(const EvalReport& report, std::ostream& out);

}  // namespace tempex

#endif  // TEMPEX_EVAL_H_
