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


// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria, capped at 1.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "tempex/corpus.h"
#include "tempex/crf.h"
#include "tempex/eval.h"
#include "tempex/experiment.h"
#include "tempex/normalizer.h"
#include "tempex/postproc.h"
#include "tempex/stats.h"
#include "tempex/tagger.h"
#include "tempex/tokenizer.h"
#include "testing/oracles.h"
#include "testing/synthetic.h"

namespace tempex {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = true;
  std::string detail;

  void Require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

// Published TempEval-3 submission results: strict P/R/F1, lenient P/R/F1,
// type and value accuracy, overall score.
struct RunRow {
  int run;
  double strict_p, strict_r, strict_f1;
  double lenient_p, lenient_r, lenient_f1;
  double type_acc, value_acc, overall;
};
constexpr RunRow kTable1[] = {
    {1, 78.57, 63.77, 70.40, 97.32, 78.99, 87.20, 88.99, 77.06, 67.20},
    {2, 79.82, 65.94, 72.22, 97.37, 80.43, 88.10, 87.38, 75.68, 66.67},
    {3, 76.07, 64.49, 69.80, 94.87, 80.43, 87.06, 87.39, 77.48, 67.45},
    {4, 78.86, 70.29, 74.33, 95.12, 84.78, 89.66, 86.31, 76.92, 68.97},
    {5, 77.68, 63.04, 69.60, 97.32, 78.99, 87.20, 88.99, 77.06, 67.20},
    {6, 81.98, 65.94, 73.09, 98.20, 78.99, 87.55, 90.83, 77.98, 68.27},
};

template <typename... Args>
std::string Fmt(const char* format, Args... args) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

Outcome OverallScores() {
  Outcome o;
  double worst = 0;
  for (const RunRow& row : kTable1) {
    const double got =
        OverallScore(Percent{row.lenient_f1}, Percent{row.value_acc}).value;
    worst = std::max(worst, std::abs(got - row.overall));
    o.Require(std::abs(got - row.overall) <= 0.02,
              "run " + std::to_string(row.run) +
                  Fmt(": %.4f vs %.2f", got, row.overall));
  }
  if (o.pass) o.detail = Fmt("6 runs, max |diff| %.4f", worst);
  return o;
}

Outcome PrfCells() {
  Outcome o;
  double worst = 0;
  for (const RunRow& row : kTable1) {
    const double s = F1FromPrecisionRecall(row.strict_p, row.strict_r);
    const double l = F1FromPrecisionRecall(row.lenient_p, row.lenient_r);
    worst = std::max({worst, std::abs(s - row.strict_f1),
                      std::abs(l - row.lenient_f1)});
    o.Require(std::abs(s - row.strict_f1) <= 0.01,
              "run " + std::to_string(row.run) +
                  Fmt(" strict: %.4f vs %.2f", s, row.strict_f1));
    o.Require(std::abs(l - row.lenient_f1) <= 0.01,
              "run " + std::to_string(row.run) +
                  Fmt(" lenient: %.4f vs %.2f", l, row.lenient_f1));
  }
  if (o.pass) o.detail = Fmt("12 rows, max |diff| %.4f", worst);
  return o;
}

Outcome CrfCorrectness() {
  Outcome o;
  std::mt19937_64 rng(2024);
  double worst_rel = 0;
  size_t sequences = 0;
  for (int model = 0; model < 100; ++model) {
    auto crf = testing::MakeRandomCrf(rng, 10, 4, 6, 2.0);
    for (const EncodedSequence& seq : crf.sequences) {
      ++sequences;
      const Potentials pot = ComputePotentials(crf.index, crf.weights, seq);
      const MarginalTable m = ForwardBackward(pot);
      const auto oracle = testing::BruteForce(crf.index, crf.weights, seq);
      const double rel_z = std::abs(m.log_z - oracle.log_z) /
                           std::max(std::abs(oracle.log_z), 1e-300);
      worst_rel = std::max(worst_rel, rel_z);
      o.Require(rel_z <= 1e-8, "logZ relative error");
      for (size_t t = 0; t < seq.size(); ++t) {
        for (int y = 0; y < kNumLabels; ++y) {
          const double want = oracle.marginals[t][y];
          const double rel =
              std::abs(m.probs[t][y] - want) / std::max(want, 1e-300);
          if (want > 1e-12) worst_rel = std::max(worst_rel, rel);
          o.Require(want <= 1e-12 ? std::abs(m.probs[t][y] - want) <= 1e-20
                                  : rel <= 1e-8,
                    "marginal relative error");
        }
      }
      o.Require(Viterbi(pot) == oracle.best, "Viterbi differs from argmax");
    }
  }
  auto toy = testing::MakeRandomCrf(rng, 30, 8, 6, 1.0);
  double worst_fd = 0;
  o.Require(toy.weights.size() <= 100, "toy model exceeds 100 weights");
  if (o.pass) {
    const auto obj = LogLikelihoodAndGradient(toy.index, toy.weights,
                                              toy.sequences, 1.0);
    const double h = 1e-5;
    for (size_t k = 0; k < toy.weights.size(); ++k) {
      auto plus = toy.weights, minus = toy.weights;
      plus[k] += h;
      minus[k] -= h;
      const double fd =
          (LogLikelihoodAndGradient(toy.index, plus, toy.sequences, 1.0).value -
           LogLikelihoodAndGradient(toy.index, minus, toy.sequences, 1.0)
               .value) /
          (2 * h);
      worst_fd = std::max(worst_fd, std::abs(fd - obj.gradient[k]));
    }
    o.Require(worst_fd <= 1e-6, Fmt("gradient max |diff| %.3g", worst_fd));
  }
  if (o.pass) {
    o.detail = Fmt("%zu sequences, max rel error %.2g, FD max |diff| %.2g",
                   sequences, worst_rel, worst_fd);
  }
  return o;
}

std::vector<Label> Labels(std::string_view s) {
  std::vector<Label> out;
  for (char c : s) out.push_back(*ParseLabel(std::string_view(&c, 1)));
  return out;
}

Outcome PostprocProperties() {
  Outcome o;
  std::mt19937_64 rng(10000);
  const std::vector<std::string> words = {"Monday", ",", "the", "3",
                                          "-",      "week", ".", "ago"};
  for (int trial = 0; trial < 10000; ++trial) {
    const size_t n = rng() % 16;
    std::vector<Token> toks;
    std::vector<Label> labels;
    for (size_t i = 0; i < n; ++i) {
      toks.push_back(Token{words[rng() % words.size()], 2 * i, 2 * i + 1});
      labels.push_back(static_cast<Label>(rng() % 3));
    }
    const auto fixed = BioFixer(labels, toks);
    o.Require(IsValidBio(fixed), "invalid BIO after fixer");
    o.Require(BioFixer(fixed, toks) == fixed, "fixer not idempotent");
  }
  o.Require(BioFixer(Labels("OIIO"), Tokenize("Three days ago .")) ==
                Labels("BIIO"),
            "Three/O days/I ago/I example");
  o.Require(BioFixer(Labels("BB"), Tokenize("Wednesday morning")) ==
                Labels("BI"),
            "Wednesday/B morning/B example");

  // A prior of exactly 0.87 must not switch at 0.87; 0.88 must.
  std::vector<std::string> at, above;
  for (int i = 0; i < 87; ++i) at.push_back("[soon] .");
  for (int i = 0; i < 13; ++i) at.push_back("soon");
  for (int i = 0; i < 88; ++i) above.push_back("[soon] .");
  for (int i = 0; i < 12; ++i) above.push_back("soon");
  const auto table_at = PriorTable::Build(
      std::vector<Document>{testing::MakeLabeledDocument("a", at)});
  const auto table_above = PriorTable::Build(
      std::vector<Document>{testing::MakeLabeledDocument("b", above)});
  const auto soon = Tokenize("soon");
  o.Require(ThresholdLabelSwitcher(Labels("O"), soon, table_at, 0.87) ==
                Labels("O"),
            "switched at prior == 0.87");
  o.Require(ThresholdLabelSwitcher(Labels("O"), soon, table_above, 0.87) ==
                Labels("B"),
            "did not switch at prior 0.88");
  if (o.pass) o.detail = "10000 random sequences, both worked examples, strict >";
  return o;
}

double StrictF1(const Tagger& tagger, std::span<const Sequence> test,
                const PriorTable* priors, const PipelineConfig* pipeline) {
  Evaluator eval;
  for (size_t i = 0; i < test.size(); ++i) {
    const auto labels = tagger.Tag(test[i], priors, pipeline).labels;
    auto gold = BioToSpans(*test[i].gold_labels, test[i], i);
    auto pred = BioToSpans(labels, test[i], i);
    eval.AddSpans(gold, pred);
  }
  return eval.report().strict().f1;
}

Outcome EndToEnd() {
  Outcome o;
  const auto docs = testing::SyntheticCorpus({.sentences = 250});
  const auto sentences = Sentences(docs);
  o.Require(sentences.size() == 250, "corpus size");
  const std::vector<Sequence> train(sentences.begin(), sentences.begin() + 200);
  const std::vector<Sequence> test(sentences.begin() + 200, sentences.end());
  auto model = std::make_shared<CrfModel>(
      TrainModel(train, Resources::Builtin(), {}));
  Tagger tagger(model, Resources::Builtin());
  const PriorTable priors = PriorTable::Build(train);
  const PipelineConfig pipeline;
  const double crf = StrictF1(tagger, test, nullptr, nullptr);
  const double post = StrictF1(tagger, test, &priors, &pipeline);
  o.Require(crf >= 0.95, Fmt("CRF strict F1 %.4f < 0.95", crf));
  o.Require(post >= crf, Fmt("pipeline %.4f < CRF %.4f", post, crf));
  o.detail = Fmt("strict F1 CRF %.4f, pipeline %.4f", crf, post) +
             (o.pass ? "" : "; " + o.detail);
  return o;
}

Outcome NormalizerConformance() {
  Outcome o;
  const Normalizer n;
  size_t valid = 0, agree = 0;
  const auto fixture = testing::NormalizerFixture(200, 490);
  for (const auto& c : fixture) {
    const auto r =
        n.Normalize(c.expression, Anchor::Parse(testing::OracleDate(c.anchor)));
    if (r && ValidateValue(r->type, r->value)) ++valid;
    if (r && TimexTypeName(r->type) == c.type && r->value == c.value) ++agree;
  }
  o.Require(valid == fixture.size(),
            std::to_string(valid) + "/200 values pass validation");
  o.Require(agree == fixture.size(),
            std::to_string(agree) + "/200 agree with the oracle");

  const Anchor dct = Anchor::Parse("2013-04-11");
  const std::tuple<const char*, TimexType, const char*> examples[] = {
      {"tomorrow", TimexType::kDate, "2013-04-12"},
      {"three days ago", TimexType::kDate, "2013-04-08"},
      {"daily", TimexType::kSet, "P1D"},
      {"the 1990s", TimexType::kDate, "199"},
      {"now", TimexType::kDate, "PRESENT_REF"}};
  for (const auto& [expr, type, value] : examples) {
    const auto r = n.Normalize(expr, dct);
    o.Require(r && r->type == type && r->value == value,
              std::string("worked example '") + expr + "'");
  }

  std::mt19937_64 rng(50);
  const char* deictic[] = {"today", "yesterday", "tomorrow", "three days ago",
                           "4 days later"};
  for (int i = 0; i < 50; ++i) {
    const auto base = testing::OracleAddDays({1990, 1, 1},
                                             static_cast<long>(rng() % 15000));
    const long k = static_cast<long>(rng() % 101) - 50;
    const auto shifted = testing::OracleAddDays(base, k);
    for (const char* e : deictic) {
      const auto a = n.Normalize(e, Anchor::Parse(testing::OracleDate(base)));
      const auto b =
          n.Normalize(e, Anchor::Parse(testing::OracleDate(shifted)));
      const bool ok =
          a && b &&
          b->value == FormatDate(AddPeriod(Anchor::Parse(a->value).date, k,
                                           PeriodUnit::kDay));
      o.Require(ok, std::string("covariance fails for '") + e + "'");
    }
  }
  if (o.pass) o.detail = "200/200 valid and oracle-equal, 5 examples, 50 anchors";
  return o;
}

Outcome Statistics() {
  Outcome o;
  const std::vector<double> a = {2.1, 2.5, 1.9, 2.8};
  const std::vector<double> b = {2.0, 2.1, 1.8, 2.2};
  const auto t = PairedTTest(a, b);
  const auto t_ref = testing::TextbookPairedT(a, b);
  o.Require(!t.degenerate && std::abs(t.t - t_ref.t) <= 1e-6,
            Fmt("t %.8f vs %.8f", t.t, t_ref.t));
  // Two-sided p for dof 3 by the closed form of the t distribution:
  // P(|T| > t) = 1 - (2/pi) (atan(t/sqrt3) + sqrt3 t / (3 + t^2)).
  const double x = t_ref.t, s3 = std::sqrt(3.0);
  const double p_ref =
      1 - 2 / M_PI * (std::atan(x / s3) + s3 * x / (3 + x * x));
  o.Require(std::abs(t.p_two_sided - p_ref) <= 1e-6,
            Fmt("p %.8f vs %.8f", t.p_two_sided, p_ref));

  const std::vector<std::vector<double>> groups = {
      {84.1, 85.3, 83.9, 84.7, 85.0},
      {84.0, 84.6, 83.2, 85.1, 84.4},
      {83.7, 84.9, 84.2, 83.5, 84.8},
      {82.9, 83.4, 84.0, 83.1, 83.6}};
  const auto an = OneWayAnova(groups);
  const auto an_ref = testing::TextbookOneWayAnova(groups);
  o.Require(std::abs(an.f - an_ref.f) <= 1e-6,
            Fmt("F %.8f vs %.8f", an.f, an_ref.f));
  // With d1 = 3 and d2 = 16 the F survival has a closed form via
  // I_x(8, 3/2) on x = 16/(16 + 3F); check it by numeric integration.
  {
    const double d1 = 3, d2 = 16, f = an_ref.f;
    auto density = [&](double v) {
      return std::exp(0.5 * d1 * std::log(d1 * v) +
                      0.5 * d2 * std::log(d2) -
                      0.5 * (d1 + d2) * std::log(d1 * v + d2) -
                      std::log(v) - std::lgamma(d1 / 2) - std::lgamma(d2 / 2) +
                      std::lgamma((d1 + d2) / 2));
    };
    // Simpson on u = 1/(1+v) maps (f, inf) to (0, 1/(1+f)).
    const int steps = 200000;
    const double hi = 1 / (1 + f);
    const double h = hi / steps;
    double sum = 0;
    for (int i = 0; i <= steps; ++i) {
      const double u = i * h;
      double g = 0;
      if (u > 0) {
        const double v = 1 / u - 1;
        g = density(v) / (u * u);
      }
      sum += g * (i == 0 || i == steps ? 1 : (i % 2 ? 4 : 2));
    }
    const double p_ref = sum * h / 3;
    o.Require(std::abs(an.p - p_ref) <= 1e-6,
              Fmt("ANOVA p %.8f vs %.8f", an.p, p_ref));
  }

  const auto same = PairedTTest(a, a);
  o.Require(same.degenerate && std::isnan(same.t) && same.p_two_sided == 1.0,
            "a == b degenerate result");
  const auto shift = PairedTTest(std::vector<double>{1, 2, 3},
                                 std::vector<double>{0, 1, 2});
  o.Require(shift.degenerate && shift.mean_difference == 1.0,
            "constant shift degenerate result");
  const std::vector<std::vector<double>> flat = {{5, 5, 5}, {5, 5}, {5, 5}};
  const auto flat_r = OneWayAnova(flat);
  o.Require(flat_r.f == 0.0 && flat_r.p == 1.0, "identical constants");
  if (o.pass) {
    o.detail = Fmt("t %.6f, F %.6f, degenerate cases defined", t.t, an.f);
  }
  return o;
}

Outcome CvDeterminism() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / "tempex_acceptance_cv";
  fs::remove_all(dir);
  fs::create_directories(dir);
  WriteCorpus(testing::SyntheticCorpus({.sentences = 60, .seed = 490}),
              (dir / "corpus.tsv").string());
  auto run = [&](const std::string& out) {
    std::vector<std::string> args = {
        "tempex", "--seed", "490", "cv", (dir / "corpus.tsv").string(),
        "--k", "10", "--repeats", "5", "--out-dir", (dir / out).string()};
    std::istringstream in;
    std::ostringstream sink, err;
    return cli::Run(args, in, sink, err);
  };
  o.Require(run("a") == 0 && run("b") == 0, "cv command failed");
  for (const char* name : {"cv_folds.tsv", "cv_matrix.tsv", "cv_summary.tsv"}) {
    auto slurp = [&](const fs::path& p) {
      std::ifstream in(p, std::ios::binary);
      std::stringstream s;
      s << in.rdbuf();
      return s.str();
    };
    const std::string a = slurp(dir / "a" / name);
    o.Require(!a.empty() && a == slurp(dir / "b" / name),
              std::string(name) + " differs between runs");
  }
  fs::remove_all(dir);
  if (o.pass) o.detail = "5x10-fold, fold assignments, matrix and summary identical";
  return o;
}

}  // namespace
}  // namespace tempex

int main() {
  using tempex::Outcome;
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"overall-score", tempex::OverallScores},
      {"prf", tempex::PrfCells},
      {"crf-correctness", tempex::CrfCorrectness},
      {"postproc-properties", tempex::PostprocProperties},
      {"end-to-end-synthetic", tempex::EndToEnd},
      {"normalizer-conformance", tempex::NormalizerConformance},
      {"statistics", tempex::Statistics},
      {"cv-determinism", tempex::CvDeterminism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    std::printf("%s %-24s %6.1fs  %s\n", o.pass ? "PASS" : "FAIL", name,
                seconds, o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
