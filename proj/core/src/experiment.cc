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


#include "tempex/experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "tempex/error.h"
#include "tempex/random.h"

namespace tempex {

namespace {

std::string Fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string Scientific(double v) {
  if (std::isnan(v)) return "undefined";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6e", v);
  return buf;
}

std::vector<TimexSpan> PredictedSpans(std::span<const Label> labels,
                                      const Sequence& seq) {
  return BioToSpans(labels, seq, 0, BioMode::kTolerant);
}

template <typename Body>
void ParallelFor(size_t tasks, unsigned threads, Body body) {
  unsigned workers = threads != 0 ? threads
                                  : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<size_t>(workers, tasks));
  if (workers <= 1) {
    for (size_t t = 0; t < tasks; ++t) body(t);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (size_t t = next++; t < tasks; t = next++) {
        try {
          body(t);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

SplitIndices ShuffleAndSplit(size_t n, uint64_t seed, double fraction) {
  if (n == 0) throw Error("cannot split an empty corpus");
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw Error("split fraction must lie strictly between 0 and 1");
  }
  const std::vector<size_t> order = PermutationIndices(n, seed);
  // Guard against 0.8 * 100 landing a hair above 80.
  const double scaled = fraction * static_cast<double>(n);
  size_t cut = static_cast<size_t>(std::ceil(scaled - 1e-9));
  cut = std::min(cut, n);
  SplitIndices out;
  out.part_a.assign(order.begin(), order.begin() + static_cast<long>(cut));
  out.part_b.assign(order.begin() + static_cast<long>(cut), order.end());
  return out;
}

std::vector<Sequence> Sentences(std::span<const Document> docs) {
  std::vector<Sequence> out;
  for (const Document& doc : docs) {
    out.insert(out.end(), doc.sequences.begin(), doc.sequences.end());
  }
  return out;
}

CvPlan MakeCvPlan(size_t n, size_t k, size_t repeats, uint64_t seed) {
  if (k < 2) throw Error("cross-validation needs k >= 2");
  if (repeats < 1) throw Error("cross-validation needs at least one repeat");
  if (n < k) {
    throw Error("corpus has " + std::to_string(n) + " sentences, fewer than k = " +
                std::to_string(k));
  }
  CvPlan plan{k, repeats, seed, {}};
  for (size_t r = 0; r < repeats; ++r) {
    const std::vector<size_t> order = PermutationIndices(n, seed + r);
    std::vector<std::vector<size_t>> folds(k);
    size_t pos = 0;
    for (size_t f = 0; f < k; ++f) {
      const size_t size = n / k + (f < n % k ? 1 : 0);
      folds[f].assign(order.begin() + static_cast<long>(pos),
                      order.begin() + static_cast<long>(pos + size));
      pos += size;
    }
    plan.folds.push_back(std::move(folds));
  }
  return plan;
}

CvResult CrossValidate(std::span<const Sequence> sentences,
                       const Resources& resources, const CvOptions& options) {
  for (const Sequence& s : sentences) {
    if (!s.gold_labels) throw Error("cross-validation needs labeled sentences");
  }
  if (options.profiles.empty()) throw Error("no model profile requested");
  CvResult result;
  result.plan = MakeCvPlan(sentences.size(), options.k, options.repeats,
                           options.seed);
  const size_t per_profile = options.repeats * options.k;
  const size_t tasks = options.profiles.size() * per_profile;
  result.folds.resize(tasks);

  ParallelFor(tasks, options.threads, [&](size_t task) {
    FoldResult& out = result.folds[task];
    out.profile = options.profiles[task / per_profile];
    out.repeat = (task % per_profile) / options.k;
    out.fold = task % options.k;

    const std::vector<size_t>& test_ids =
        result.plan.folds[out.repeat][out.fold];
    std::vector<bool> in_test(sentences.size(), false);
    for (size_t i : test_ids) in_test[i] = true;
    std::vector<Sequence> train;
    for (size_t i = 0; i < sentences.size(); ++i) {
      if (!in_test[i]) train.push_back(sentences[i]);
    }
    out.train_size = train.size();
    out.test_size = test_ids.size();

    TrainOptions train_options;
    train_options.profile = out.profile;
    train_options.hyperparams = options.hyperparams;
    train_options.extra_columns = options.extra_columns;
    auto model = std::make_shared<const CrfModel>(
        TrainModel(train, resources, train_options));
    const Tagger tagger(model, resources);

    PriorTable priors;
    if (options.evaluate_pipeline) priors = PriorTable::Build(std::span<const Sequence>(train));

    Evaluator crf_eval;
    Evaluator pipeline_eval;
    for (size_t i : test_ids) {
      const Sequence& seq = sentences[i];
      const std::vector<TimexSpan> gold =
          BioToSpans(*seq.gold_labels, seq, 0, BioMode::kStrict);
      const TaggedSequence tagged =
          tagger.Tag(seq, options.evaluate_pipeline ? &priors : nullptr,
                     options.evaluate_pipeline ? &options.pipeline : nullptr);
      crf_eval.AddSpans(gold, PredictedSpans(tagged.crf_labels, seq));
      if (options.evaluate_pipeline) {
        pipeline_eval.AddSpans(gold, PredictedSpans(tagged.labels, seq));
      }
    }
    out.crf = crf_eval.report();
    if (options.evaluate_pipeline) out.pipeline = pipeline_eval.report();
  });
  return result;
}

std::vector<double> StrictF1Column(const CvResult& result,
                                   ModelProfile profile, bool pipeline) {
  std::vector<double> out;
  for (const FoldResult& f : result.folds) {
    if (f.profile != profile) continue;
    if (pipeline) {
      if (!f.pipeline) throw Error("pipeline condition was not evaluated");
      out.push_back(f.pipeline->strict().f1);
    } else {
      out.push_back(f.crf.strict().f1);
    }
  }
  return out;
}

void WriteCvMatrix(const CvResult& result, std::ostream& out) {
  out << "profile\tcondition\trepeat\tfold\ttrain\ttest\tstrict_p\tstrict_r"
         "\tstrict_f1\tlenient_p\tlenient_r\tlenient_f1\n";
  auto row = [&](const FoldResult& f, const char* condition,
                 const EvalReport& r) {
    const Prf s = r.strict();
    const Prf l = r.lenient();
    out << ProfileName(f.profile) << '\t' << condition << '\t' << f.repeat
        << '\t' << f.fold << '\t' << f.train_size << '\t' << f.test_size
        << '\t' << Fixed(s.precision) << '\t' << Fixed(s.recall) << '\t'
        << Fixed(s.f1) << '\t' << Fixed(l.precision) << '\t'
        << Fixed(l.recall) << '\t' << Fixed(l.f1) << '\n';
  };
  for (const FoldResult& f : result.folds) row(f, "crf", f.crf);
  for (const FoldResult& f : result.folds) {
    if (f.pipeline) row(f, "pipeline", *f.pipeline);
  }
}

void WriteFoldAssignments(const CvPlan& plan, std::ostream& out) {
  out << "repeat\tfold\tsentence\n";
  for (size_t r = 0; r < plan.folds.size(); ++r) {
    for (size_t f = 0; f < plan.folds[r].size(); ++f) {
      std::vector<size_t> ids = plan.folds[r][f];
      std::sort(ids.begin(), ids.end());
      for (size_t i : ids) out << r << '\t' << f << '\t' << i << '\n';
    }
  }
}

void WriteCvSummary(const CvResult& result, const CvOptions& options,
                    std::ostream& out) {
  auto mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
  };
  out << "k\t" << options.k << '\n'
      << "repeats\t" << options.repeats << '\n'
      << "seed\t" << options.seed << '\n';
  for (ModelProfile profile : options.profiles) {
    const std::string name(ProfileName(profile));
    const std::vector<double> crf = StrictF1Column(result, profile, false);
    out << name << "\tcrf_mean_strict_f1\t" << Fixed(mean(crf)) << '\n';
    if (!options.evaluate_pipeline) continue;
    const std::vector<double> pipe = StrictF1Column(result, profile, true);
    out << name << "\tpipeline_mean_strict_f1\t" << Fixed(mean(pipe)) << '\n';
    const TTestResult t = PairedTTest(pipe, crf);
    out << name << "\tpaired_t\t"
        << (t.degenerate ? std::string("undefined") : Fixed(t.t)) << '\n'
        << name << "\tpaired_t_dof\t" << t.dof << '\n'
        << name << "\tpaired_t_p\t" << Scientific(t.p_two_sided) << '\n';
  }
  if (options.profiles.size() > 1) {
    std::vector<std::vector<double>> groups;
    for (ModelProfile profile : options.profiles) {
      groups.push_back(StrictF1Column(result, profile, false));
    }
    const AnovaResult a = OneWayAnova(groups);
    out << "anova\tF\t" << (std::isinf(a.f) ? std::string("inf") : Fixed(a.f))
        << '\n'
        << "anova\tdf\t" << a.df_between << ',' << a.df_within << '\n'
        << "anova\tp\t" << Scientific(a.p) << '\n';
  }
}

}  // namespace tempex
