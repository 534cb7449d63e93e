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


#include "tempex/eval.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <tuple>

#include "tempex/error.h"

namespace tempex {

namespace {

std::vector<size_t> SortedByStart(std::span<const TimexSpan> spans,
                                  const char* which) {
  std::vector<size_t> order(spans.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return spans[a].char_start < spans[b].char_start;
  });
  for (size_t k = 1; k < order.size(); ++k) {
    const TimexSpan& prev = spans[order[k - 1]];
    const TimexSpan& cur = spans[order[k]];
    if (cur.char_start < prev.char_end) {
      throw Error(std::string(which) + " spans overlap at characters " +
                  std::to_string(cur.char_start) + "-" +
                  std::to_string(prev.char_end));
    }
  }
  return order;
}

std::string Pct(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", fraction * 100.0);
  return buf;
}

}  // namespace

MatchCounts& MatchCounts::operator+=(const MatchCounts& other) {
  true_positives += other.true_positives;
  predicted_total += other.predicted_total;
  gold_total += other.gold_total;
  return *this;
}

AccuracyCounts& AccuracyCounts::operator+=(const AccuracyCounts& other) {
  correct += other.correct;
  total += other.total;
  return *this;
}

MatchResult MatchSpans(std::span<const TimexSpan> gold,
                       std::span<const TimexSpan> pred, MatchRegime regime) {
  const std::vector<size_t> g = SortedByStart(gold, "gold");
  const std::vector<size_t> p = SortedByStart(pred, "predicted");
  MatchResult result;
  result.counts.gold_total = gold.size();
  result.counts.predicted_total = pred.size();
  size_t i = 0;
  size_t j = 0;
  while (i < g.size() && j < p.size()) {
    const TimexSpan& a = gold[g[i]];
    const TimexSpan& b = pred[p[j]];
    if (regime == MatchRegime::kStrict) {
      if (a.char_start == b.char_start && a.char_end == b.char_end) {
        result.alignment.push_back({g[i], p[j]});
        ++i;
        ++j;
      } else if (std::tie(a.char_start, a.char_end) <
                 std::tie(b.char_start, b.char_end)) {
        ++i;
      } else {
        ++j;
      }
      continue;
    }
    if (a.char_end <= b.char_start) {
      ++i;
    } else if (b.char_end <= a.char_start) {
      ++j;
    } else {
      result.alignment.push_back({g[i], p[j]});
      ++i;
      ++j;
    }
  }
  result.counts.true_positives = result.alignment.size();
  return result;
}

double F1FromPrecisionRecall(double p, double r) {
  if (p + r <= 0.0) return 0.0;
  return 2.0 * p * r / (p + r);
}

Prf ComputePrf(const MatchCounts& counts) {
  Prf out;
  if (counts.predicted_total > 0) {
    out.precision = static_cast<double>(counts.true_positives) /
                    static_cast<double>(counts.predicted_total);
  }
  if (counts.gold_total > 0) {
    out.recall = static_cast<double>(counts.true_positives) /
                 static_cast<double>(counts.gold_total);
  }
  out.f1 = F1FromPrecisionRecall(out.precision, out.recall);
  return out;
}

AccuracyResult Accuracy(const AccuracyCounts& counts) {
  AccuracyResult out;
  out.correct = counts.correct;
  out.total = counts.total;
  if (counts.total == 0) {
    out.empty_alignment = true;
    return out;
  }
  out.accuracy =
      static_cast<double>(counts.correct) / static_cast<double>(counts.total);
  return out;
}

AccuracyResult AttributeAccuracy(std::span<const AlignedPair> alignment,
                                 std::span<const Timex> gold,
                                 std::span<const Timex> pred,
                                 Attribute attribute) {
  AccuracyCounts counts;
  for (const AlignedPair& pair : alignment) {
    const Timex& g = gold[pair.gold];
    const Timex& p = pred[pair.pred];
    const bool equal = attribute == Attribute::kType ? g.type == p.type
                                                     : g.value == p.value;
    counts.correct += equal ? 1 : 0;
    ++counts.total;
  }
  return Accuracy(counts);
}

std::optional<AccuracyResult> EvalReport::type_accuracy() const {
  if (!has_attributes) return std::nullopt;
  return Accuracy(type_counts);
}

std::optional<AccuracyResult> EvalReport::value_accuracy() const {
  if (!has_attributes) return std::nullopt;
  return Accuracy(value_counts);
}

std::optional<Fraction> EvalReport::overall() const {
  auto value = value_accuracy();
  if (!value) return std::nullopt;
  return OverallScore(Fraction{lenient().f1}, Fraction{value->accuracy});
}

void Evaluator::AddSpans(std::span<const TimexSpan> gold,
                         std::span<const TimexSpan> pred) {
  report_.strict_counts += MatchSpans(gold, pred, MatchRegime::kStrict).counts;
  report_.lenient_counts +=
      MatchSpans(gold, pred, MatchRegime::kLenient).counts;
}

void Evaluator::AddTimexes(std::span<const Timex> gold,
                           std::span<const Timex> pred) {
  std::vector<TimexSpan> gold_spans;
  std::vector<TimexSpan> pred_spans;
  for (const Timex& t : gold) gold_spans.push_back(t.span);
  for (const Timex& t : pred) pred_spans.push_back(t.span);
  const MatchResult strict =
      MatchSpans(gold_spans, pred_spans, MatchRegime::kStrict);
  const MatchResult lenient =
      MatchSpans(gold_spans, pred_spans, MatchRegime::kLenient);
  report_.strict_counts += strict.counts;
  report_.lenient_counts += lenient.counts;
  report_.has_attributes = true;
  const auto& alignment = basis_ == AccuracyBasis::kLenient
                              ? lenient.alignment
                              : strict.alignment;
  const AccuracyResult type =
      AttributeAccuracy(alignment, gold, pred, Attribute::kType);
  const AccuracyResult value =
      AttributeAccuracy(alignment, gold, pred, Attribute::kValue);
  report_.type_counts += AccuracyCounts{type.correct, type.total};
  report_.value_counts += AccuracyCounts{value.correct, value.total};
}

EvalReport EvaluateCorpora(std::span<const Document> gold,
                           std::span<const TimexAttributes> gold_attributes,
                           std::span<const Document> pred,
                           std::span<const TimexAttributes> pred_attributes,
                           AccuracyBasis basis) {
  std::map<std::string, const Document*> pred_by_id;
  for (const Document& d : pred) {
    if (!pred_by_id.emplace(d.id, &d).second) {
      throw Error("duplicate predicted document id '" + d.id + "'");
    }
  }
  std::set<std::string> gold_ids;
  std::vector<std::string> missing;
  for (const Document& d : gold) {
    if (!gold_ids.insert(d.id).second) {
      throw Error("duplicate gold document id '" + d.id + "'");
    }
    if (!pred_by_id.contains(d.id)) missing.push_back("gold-only " + d.id);
  }
  for (const auto& [id, doc] : pred_by_id) {
    if (!gold_ids.contains(id)) missing.push_back("predicted-only " + id);
  }
  if (!missing.empty()) {
    std::string msg = "document ids do not match:";
    for (const std::string& m : missing) msg += " " + m;
    throw Error(msg);
  }

  using Key = std::tuple<std::string, size_t, size_t>;
  auto index = [](std::span<const TimexAttributes> rows) {
    std::map<Key, const TimexAttributes*> out;
    for (const TimexAttributes& r : rows) {
      out[{r.doc_id, r.char_start, r.char_end}] = &r;
    }
    return out;
  };
  const auto gold_index = index(gold_attributes);
  const auto pred_index = index(pred_attributes);
  const bool with_attributes =
      !gold_attributes.empty() && !pred_attributes.empty();

  Evaluator evaluator(basis);
  for (const Document& g : gold) {
    const Document& p = *pred_by_id.at(g.id);
    const std::vector<TimexSpan> gold_spans = GoldSpans(g);
    const std::vector<TimexSpan> pred_spans = GoldSpans(p);
    if (!with_attributes) {
      evaluator.AddSpans(gold_spans, pred_spans);
      continue;
    }
    std::vector<Timex> gold_timexes;
    for (const TimexSpan& s : gold_spans) {
      auto it = gold_index.find({g.id, s.char_start, s.char_end});
      if (it == gold_index.end()) {
        throw Error("gold span " + g.id + ":" + std::to_string(s.char_start) +
                    "-" + std::to_string(s.char_end) +
                    " has no attribute row");
      }
      gold_timexes.push_back(Timex{s, it->second->type, it->second->value});
    }
    std::vector<Timex> pred_timexes;
    for (const TimexSpan& s : pred_spans) {
      auto it = pred_index.find({p.id, s.char_start, s.char_end});
      if (it == pred_index.end()) {
        pred_timexes.push_back(Timex{s, TimexType::kDate, ""});
      } else {
        pred_timexes.push_back(Timex{s, it->second->type, it->second->value});
      }
    }
    evaluator.AddTimexes(gold_timexes, pred_timexes);
  }
  return evaluator.report();
}

void WriteReportText(const EvalReport& report, std::ostream& out) {
  const Prf strict = report.strict();
  const Prf lenient = report.lenient();
  char line[160];
  std::snprintf(line, sizeof(line), "%-10s %9s %9s %9s %6s %6s %6s\n",
                "matching", "precision", "recall", "f1", "tp", "pred",
                "gold");
  out << line;
  auto row = [&](const char* name, const Prf& prf, const MatchCounts& c) {
    std::snprintf(line, sizeof(line), "%-10s %9s %9s %9s %6zu %6zu %6zu\n",
                  name, Pct(prf.precision).c_str(), Pct(prf.recall).c_str(),
                  Pct(prf.f1).c_str(), c.true_positives, c.predicted_total,
                  c.gold_total);
    out << line;
  };
  row("strict", strict, report.strict_counts);
  row("lenient", lenient, report.lenient_counts);
  if (auto type = report.type_accuracy()) {
    const AccuracyResult value = *report.value_accuracy();
    std::snprintf(line, sizeof(line), "%-10s %9s  (%zu/%zu)%s\n", "type",
                  Pct(type->accuracy).c_str(), type->correct, type->total,
                  type->empty_alignment ? "  warning: empty alignment" : "");
    out << line;
    std::snprintf(line, sizeof(line), "%-10s %9s  (%zu/%zu)%s\n", "value",
                  Pct(value.accuracy).c_str(), value.correct, value.total,
                  value.empty_alignment ? "  warning: empty alignment" : "");
    out << line;
    std::snprintf(line, sizeof(line), "%-10s %9s\n", "overall",
                  Pct(report.overall()->value).c_str());
    out << line;
  }
}

void WriteReportTsv(const EvalReport& report, std::ostream& out) {
  const Prf strict = report.strict();
  const Prf lenient = report.lenient();
  out << "strict_precision\t" << Pct(strict.precision) << '\n'
      << "strict_recall\t" << Pct(strict.recall) << '\n'
      << "strict_f1\t" << Pct(strict.f1) << '\n'
      << "lenient_precision\t" << Pct(lenient.precision) << '\n'
      << "lenient_recall\t" << Pct(lenient.recall) << '\n'
      << "lenient_f1\t" << Pct(lenient.f1) << '\n'
      << "strict_tp\t" << report.strict_counts.true_positives << '\n'
      << "lenient_tp\t" << report.lenient_counts.true_positives << '\n'
      << "predicted\t" << report.strict_counts.predicted_total << '\n'
      << "gold\t" << report.strict_counts.gold_total << '\n';
  if (auto type = report.type_accuracy()) {
    out << "type_accuracy\t" << Pct(type->accuracy) << '\n'
        << "value_accuracy\t" << Pct(report.value_accuracy()->accuracy) << '\n'
        << "overall_score\t" << Pct(report.overall()->value) << '\n';
  }
}

}  // namespace tempex
