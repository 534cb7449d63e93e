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

#include "tempex/crf.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "tempex/error.h"
#include "tempex/lbfgs.h"

namespace tempex {

namespace {

constexpr int kGradientShards = 8;
constexpr std::string_view kMagic = "tempex-crf";
constexpr std::string_view kTransitionKey = "__T__";

double LogSumExp3(double a, double b, double c) {
  const double m = std::max({a, b, c});
  if (m == -std::numeric_limits<double>::infinity()) return m;
  return m + std::log(std::exp(a - m) + std::exp(b - m) + std::exp(c - m));
}

std::string FormatDouble(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t start = 0;
  while (true) {
    const size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

// Runs body(shard) for every shard, in parallel when cores allow.
template <typename Body>
void ForEachShard(int shards, Body body) {
  const unsigned cores = std::max(1u, std::thread::hardware_concurrency());
  const int workers = static_cast<int>(std::min<unsigned>(cores, shards));
  if (workers <= 1) {
    for (int s = 0; s < shards; ++s) body(s);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> threads;
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (int s = next++; s < shards; s = next++) body(s);
    });
  }
  for (std::thread& t : threads) t.join();
}

}  // namespace

FeatureIndex::FeatureIndex(std::vector<std::string> attribute_names)
    : names_(std::move(attribute_names)) {
  ids_.reserve(names_.size());
  for (size_t i = 0; i < names_.size(); ++i) {
    if (!ids_.emplace(names_[i], static_cast<uint32_t>(i)).second) {
      throw Error("duplicate attribute '" + names_[i] + "'");
    }
  }
}

FeatureIndex FeatureIndex::Build(std::span<const PositionFeatures> corpus,
                                 size_t cutoff) {
  if (corpus.empty()) throw Error("cannot build a feature index: empty corpus");
  std::unordered_map<std::string_view, size_t> counts;
  for (const PositionFeatures& seq : corpus) {
    for (const auto& position : seq) {
      for (const std::string& attribute : position) ++counts[attribute];
    }
  }
  std::vector<std::string> names;
  names.reserve(counts.size());
  for (const auto& [attribute, count] : counts) {
    if (count >= cutoff) names.emplace_back(attribute);
  }
  std::sort(names.begin(), names.end());
  return FeatureIndex(std::move(names));
}

std::optional<uint32_t> FeatureIndex::Find(std::string_view attribute) const {
  auto it = ids_.find(attribute);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

EncodedSequence FeatureIndex::Encode(const PositionFeatures& features,
                                     std::span<const Label> labels) const {
  if (!labels.empty() && labels.size() != features.size()) {
    throw Error("label count " + std::to_string(labels.size()) +
                " does not match sequence length " +
                std::to_string(features.size()));
  }
  EncodedSequence out;
  out.attributes.resize(features.size());
  for (size_t t = 0; t < features.size(); ++t) {
    for (const std::string& attribute : features[t]) {
      if (auto id = Find(attribute)) out.attributes[t].push_back(*id);
    }
  }
  out.labels.assign(labels.begin(), labels.end());
  return out;
}

Potentials ComputePotentials(const FeatureIndex& index,
                             std::span<const double> weights,
                             const EncodedSequence& seq) {
  Potentials p;
  p.unary.resize(seq.size());
  for (size_t t = 0; t < seq.size(); ++t) {
    auto& row = p.unary[t];
    row.fill(0.0);
    for (uint32_t a : seq.attributes[t]) {
      const double* w = &weights[index.StateSlot(a, Label::kB)];
      row[0] += w[0];
      row[1] += w[1];
      row[2] += w[2];
    }
  }
  for (Label from : kAllLabels) {
    for (Label to : kAllLabels) {
      p.transition[LabelIndex(from)][LabelIndex(to)] =
          weights[index.TransitionSlot(from, to)];
    }
  }
  return p;
}

namespace {

struct Lattice {
  std::vector<std::array<double, kNumLabels>> alpha;
  std::vector<std::array<double, kNumLabels>> beta;
  double log_z = 0.0;
};

Lattice RunForwardBackward(const Potentials& p) {
  const size_t n = p.size();
  Lattice lat;
  if (n == 0) return lat;
  lat.alpha.resize(n);
  lat.beta.resize(n);
  lat.alpha[0] = p.unary[0];
  for (size_t t = 1; t < n; ++t) {
    for (int y = 0; y < kNumLabels; ++y) {
      lat.alpha[t][y] =
          p.unary[t][y] + LogSumExp3(lat.alpha[t - 1][0] + p.transition[0][y],
                                     lat.alpha[t - 1][1] + p.transition[1][y],
                                     lat.alpha[t - 1][2] + p.transition[2][y]);
    }
  }
  lat.beta[n - 1].fill(0.0);
  for (size_t t = n - 1; t-- > 0;) {
    for (int y = 0; y < kNumLabels; ++y) {
      lat.beta[t][y] = LogSumExp3(
          p.transition[y][0] + p.unary[t + 1][0] + lat.beta[t + 1][0],
          p.transition[y][1] + p.unary[t + 1][1] + lat.beta[t + 1][1],
          p.transition[y][2] + p.unary[t + 1][2] + lat.beta[t + 1][2]);
    }
  }
  const auto& last = lat.alpha[n - 1];
  lat.log_z = LogSumExp3(last[0], last[1], last[2]);
  return lat;
}

}  // namespace

MarginalTable ForwardBackward(const Potentials& potentials) {
  const Lattice lat = RunForwardBackward(potentials);
  MarginalTable table;
  table.log_z = lat.log_z;
  table.probs.resize(potentials.size());
  for (size_t t = 0; t < potentials.size(); ++t) {
    double sum = 0.0;
    for (int y = 0; y < kNumLabels; ++y) {
      table.probs[t][y] = std::exp(lat.alpha[t][y] + lat.beta[t][y] - lat.log_z);
      sum += table.probs[t][y];
    }
    for (double& v : table.probs[t]) v /= sum;
  }
  return table;
}

std::vector<Label> Viterbi(const Potentials& p) {
  const size_t n = p.size();
  if (n == 0) return {};
  std::vector<std::array<double, kNumLabels>> score(n);
  std::vector<std::array<int, kNumLabels>> back(n);
  score[0] = p.unary[0];
  for (size_t t = 1; t < n; ++t) {
    for (int y = 0; y < kNumLabels; ++y) {
      int best = 0;
      double best_score = score[t - 1][0] + p.transition[0][y];
      for (int prev = 1; prev < kNumLabels; ++prev) {
        const double s = score[t - 1][prev] + p.transition[prev][y];
        if (s > best_score) {
          best_score = s;
          best = prev;
        }
      }
      score[t][y] = best_score + p.unary[t][y];
      back[t][y] = best;
    }
  }
  int y = 0;
  for (int k = 1; k < kNumLabels; ++k) {
    if (score[n - 1][k] > score[n - 1][y]) y = k;
  }
  std::vector<Label> path(n);
  for (size_t t = n; t-- > 0;) {
    path[t] = static_cast<Label>(y);
    if (t > 0) y = back[t][y];
  }
  return path;
}

double PathScore(const Potentials& p, std::span<const Label> labels) {
  double score = 0.0;
  for (size_t t = 0; t < labels.size(); ++t) {
    score += p.unary[t][LabelIndex(labels[t])];
    if (t > 0) {
      score += p.transition[LabelIndex(labels[t - 1])][LabelIndex(labels[t])];
    }
  }
  return score;
}

ObjectiveValue LogLikelihoodAndGradient(const FeatureIndex& index,
                                        std::span<const double> weights,
                                        std::span<const EncodedSequence> batch,
                                        double c) {
  if (weights.size() != index.num_weights()) {
    throw Error("weight vector has " + std::to_string(weights.size()) +
                " entries, index expects " +
                std::to_string(index.num_weights()));
  }
  for (size_t i = 0; i < batch.size(); ++i) {
    if (batch[i].labels.size() != batch[i].size()) {
      throw Error("sequence " + std::to_string(i) + " has " +
                  std::to_string(batch[i].labels.size()) + " labels for " +
                  std::to_string(batch[i].size()) + " positions");
    }
  }
  const size_t num_weights = index.num_weights();
  const int shards =
      static_cast<int>(std::min<size_t>(kGradientShards, std::max<size_t>(batch.size(), 1)));
  std::vector<std::vector<double>> grads(shards);
  std::vector<double> values(shards, 0.0);

  ForEachShard(shards, [&](int s) {
    std::vector<double>& g = grads[s];
    g.assign(num_weights, 0.0);
    const size_t begin = batch.size() * s / shards;
    const size_t end = batch.size() * (s + 1) / shards;
    for (size_t i = begin; i < end; ++i) {
      const EncodedSequence& seq = batch[i];
      const size_t n = seq.size();
      if (n == 0) continue;
      const Potentials p = ComputePotentials(index, weights, seq);
      const Lattice lat = RunForwardBackward(p);
      values[s] += PathScore(p, seq.labels) - lat.log_z;

      for (size_t t = 0; t < n; ++t) {
        const int gold = LabelIndex(seq.labels[t]);
        std::array<double, kNumLabels> marginal;
        for (int y = 0; y < kNumLabels; ++y) {
          marginal[y] = std::exp(lat.alpha[t][y] + lat.beta[t][y] - lat.log_z);
        }
        for (uint32_t a : seq.attributes[t]) {
          double* ga = &g[index.StateSlot(a, Label::kB)];
          ga[gold] += 1.0;
          for (int y = 0; y < kNumLabels; ++y) ga[y] -= marginal[y];
        }
        if (t == 0) continue;
        const int prev_gold = LabelIndex(seq.labels[t - 1]);
        g[index.TransitionSlot(static_cast<Label>(prev_gold),
                               static_cast<Label>(gold))] += 1.0;
        for (int from = 0; from < kNumLabels; ++from) {
          for (int to = 0; to < kNumLabels; ++to) {
            const double pair =
                std::exp(lat.alpha[t - 1][from] + p.transition[from][to] +
                         p.unary[t][to] + lat.beta[t][to] - lat.log_z);
            g[index.TransitionSlot(static_cast<Label>(from),
                                   static_cast<Label>(to))] -= pair;
          }
        }
      }
    }
  });

  ObjectiveValue out;
  out.gradient.assign(num_weights, 0.0);
  for (int s = 0; s < shards; ++s) {
    out.value += values[s];
    for (size_t k = 0; k < num_weights; ++k) out.gradient[k] += grads[s][k];
  }
  double norm = 0.0;
  for (size_t k = 0; k < num_weights; ++k) {
    norm += weights[k] * weights[k];
    out.gradient[k] -= weights[k] / c;
  }
  out.value -= norm / (2.0 * c);
  return out;
}

Potentials CrfModel::Score(const PositionFeatures& features) const {
  return ComputePotentials(index, weights, index.Encode(features));
}

std::vector<Label> CrfModel::Decode(const PositionFeatures& features) const {
  return Viterbi(Score(features));
}

MarginalTable CrfModel::Marginals(const PositionFeatures& features) const {
  return ForwardBackward(Score(features));
}

CrfModel TrainCrf(std::span<const PositionFeatures> features,
                  std::span<const std::vector<Label>> labels,
                  ModelMetadata metadata) {
  if (features.size() != labels.size()) {
    throw Error("training corpus has " + std::to_string(features.size()) +
                " sequences but " + std::to_string(labels.size()) +
                " label sequences");
  }
  if (features.empty()) throw Error("cannot train on an empty corpus");
  const CrfHyperparams& hp = metadata.hyperparams;
  if (!(hp.c > 0.0)) throw Error("hyperparameter C must be positive");
  if (!(hp.eta > 0.0)) throw Error("hyperparameter eta must be positive");

  CrfModel model;
  model.index = FeatureIndex::Build(features, hp.cutoff);
  std::vector<EncodedSequence> encoded;
  encoded.reserve(features.size());
  for (size_t i = 0; i < features.size(); ++i) {
    encoded.push_back(model.index.Encode(features[i], labels[i]));
  }

  std::vector<double> weights(model.index.num_weights(), 0.0);
  auto objective = [&](std::span<const double> w, std::span<double> grad) {
    ObjectiveValue v = LogLikelihoodAndGradient(model.index, w, encoded, hp.c);
    for (size_t k = 0; k < grad.size(); ++k) grad[k] = -v.gradient[k];
    return -v.value;
  };
  LbfgsOptions options;
  options.history = hp.history;
  options.max_iterations = hp.max_iter;
  options.relative_tolerance = hp.eta;
  LbfgsResult result = MinimizeLbfgs(objective, weights, options);
  if (!std::isfinite(result.value)) {
    throw Error("training diverged: objective is " +
                std::to_string(result.value));
  }

  metadata.log.iterations = result.iterations;
  metadata.log.final_objective = -result.value;
  metadata.log.converged = result.converged;
  metadata.log.status = result.status;
  metadata.log.objective_trace.clear();
  for (double v : result.trace) metadata.log.objective_trace.push_back(-v);
  model.metadata = std::move(metadata);
  model.weights = std::move(weights);
  return model;
}

// Model file layout: a header of tab-separated key/value lines ending with
// "end_header", then one record per weight slot.
void SaveModel(const CrfModel& model, std::ostream& out) {
  const ModelMetadata& m = model.metadata;
  auto join = [](const std::vector<std::string>& items) {
    std::string s;
    for (const std::string& item : items) s += '\t' + item;
    return s;
  };
  out << kMagic << '\t' << CrfModel::kFormatVersion << '\n';
  out << "labels\tB\tI\tO\n";
  out << "profile\t" << ProfileName(m.profile) << '\n';
  out << "gazetteers" << join(m.gazetteers) << '\n';
  out << "extra_columns\t" << m.extra_columns << '\n';
  out << "hyperparams\tC=" << FormatDouble(m.hyperparams.c)
      << "\teta=" << FormatDouble(m.hyperparams.eta)
      << "\tmax_iter=" << m.hyperparams.max_iter
      << "\tcutoff=" << m.hyperparams.cutoff
      << "\thistory=" << m.hyperparams.history << '\n';
  for (const Template& t : m.plan.templates) {
    out << "template\t" << t.id << '\t';
    for (size_t k = 0; k < t.offsets.size(); ++k) {
      out << (k ? "," : "") << t.offsets[k];
    }
    out << '\n';
  }
  out << "unigram_features" << join(m.plan.unigram_features) << '\n';
  out << "conjunction_features" << join(m.plan.conjunction_features) << '\n';
  out << "training\titerations=" << m.log.iterations
      << "\tobjective=" << FormatDouble(m.log.final_objective)
      << "\tconverged=" << (m.log.converged ? 1 : 0) << '\n';
  out << "feature_count\t" << model.index.num_weights() << '\n';
  out << "end_header\n";
  for (uint32_t a = 0; a < model.index.num_attributes(); ++a) {
    for (Label y : kAllLabels) {
      out << model.index.AttributeName(a) << '\t' << LabelChar(y) << '\t'
          << FormatDouble(model.weights[model.index.StateSlot(a, y)]) << '\n';
    }
  }
  for (Label from : kAllLabels) {
    for (Label to : kAllLabels) {
      out << kTransitionKey << '\t' << LabelChar(from) << ':' << LabelChar(to)
          << '\t'
          << FormatDouble(model.weights[model.index.TransitionSlot(from, to)])
          << '\n';
    }
  }
}

void SaveModel(const CrfModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write model file '" + path + "'");
  SaveModel(model, out);
}

CrfModel LoadModel(std::istream& in, const std::string& source) {
  std::string line;
  size_t line_no = 0;
  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    return true;
  };
  auto fail = [&](const std::string& what) -> ParseError {
    return ParseError(source, line_no, what);
  };
  auto parse_double = [&](std::string_view text) {
    double value = 0.0;
    auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw fail("invalid number '" + std::string(text) + "'");
    }
    return value;
  };
  auto parse_size = [&](std::string_view text) {
    size_t value = 0;
    auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw fail("invalid integer '" + std::string(text) + "'");
    }
    return value;
  };

  if (!next_line()) throw fail("empty model file");
  {
    auto fields = SplitTabs(line);
    if (fields.size() != 2 || fields[0] != kMagic) {
      throw fail("not a tempex CRF model (bad header)");
    }
    const std::string version(fields[1]);
    if (version != std::to_string(CrfModel::kFormatVersion)) {
      throw fail("model format version " + version +
                 " is not supported (expected version " +
                 std::to_string(CrfModel::kFormatVersion) + ")");
    }
  }

  CrfModel model;
  ModelMetadata& m = model.metadata;
  std::optional<size_t> feature_count;
  bool saw_labels = false, saw_end = false;
  while (next_line()) {
    auto fields = SplitTabs(line);
    const std::string_view key = fields[0];
    std::vector<std::string> rest(fields.begin() + 1, fields.end());
    if (key == "end_header") {
      saw_end = true;
      break;
    } else if (key == "labels") {
      if (rest != std::vector<std::string>{"B", "I", "O"}) {
        throw fail("unsupported label set");
      }
      saw_labels = true;
    } else if (key == "profile") {
      auto profile = rest.size() == 1 ? ParseProfile(rest[0]) : std::nullopt;
      if (!profile) throw fail("unknown profile");
      m.profile = *profile;
    } else if (key == "gazetteers") {
      m.gazetteers = rest;
    } else if (key == "extra_columns") {
      if (rest.size() != 1) throw fail("malformed extra_columns");
      m.extra_columns = parse_size(rest[0]);
    } else if (key == "hyperparams") {
      for (const std::string& kv : rest) {
        const size_t eq = kv.find('=');
        if (eq == std::string::npos) throw fail("malformed hyperparameter");
        const std::string name = kv.substr(0, eq);
        const std::string_view value = std::string_view(kv).substr(eq + 1);
        if (name == "C") {
          m.hyperparams.c = parse_double(value);
        } else if (name == "eta") {
          m.hyperparams.eta = parse_double(value);
        } else if (name == "max_iter") {
          m.hyperparams.max_iter = static_cast<int>(parse_size(value));
        } else if (name == "cutoff") {
          m.hyperparams.cutoff = parse_size(value);
        } else if (name == "history") {
          m.hyperparams.history = static_cast<int>(parse_size(value));
        } else {
          throw fail("unknown hyperparameter '" + name + "'");
        }
      }
    } else if (key == "template") {
      if (rest.size() != 2) throw fail("malformed template line");
      Template t{rest[0], {}};
      std::stringstream offsets(rest[1]);
      std::string item;
      while (std::getline(offsets, item, ',')) {
        int offset = 0;
        auto [ptr, ec] =
            std::from_chars(item.data(), item.data() + item.size(), offset);
        if (ec != std::errc() || ptr != item.data() + item.size() ||
            offset < -2 || offset > 2) {
          throw fail("invalid template offset '" + item + "'");
        }
        t.offsets.push_back(offset);
      }
      if (t.offsets.empty() || t.offsets.size() > 3) {
        throw fail("template arity must be 1 to 3");
      }
      m.plan.templates.push_back(std::move(t));
    } else if (key == "unigram_features") {
      m.plan.unigram_features = rest;
    } else if (key == "conjunction_features") {
      m.plan.conjunction_features = rest;
    } else if (key == "training") {
      for (const std::string& kv : rest) {
        const size_t eq = kv.find('=');
        if (eq == std::string::npos) throw fail("malformed training entry");
        const std::string name = kv.substr(0, eq);
        const std::string_view value = std::string_view(kv).substr(eq + 1);
        if (name == "iterations") {
          m.log.iterations = static_cast<int>(parse_size(value));
        } else if (name == "objective") {
          m.log.final_objective = parse_double(value);
        } else if (name == "converged") {
          m.log.converged = value == "1";
        }
      }
    } else if (key == "feature_count") {
      if (rest.size() != 1) throw fail("malformed feature_count");
      feature_count = parse_size(rest[0]);
    } else {
      throw fail("unknown header key '" + std::string(key) + "'");
    }
  }
  if (!saw_end || !saw_labels || !feature_count) {
    throw fail("incomplete model header");
  }

  std::vector<std::string> names;
  std::vector<double> state_weights;
  std::map<std::pair<int, int>, double> transitions;
  size_t records = 0;
  while (next_line()) {
    if (line.empty()) continue;
    auto fields = SplitTabs(line);
    if (fields.size() != 3) throw fail("weight record needs 3 columns");
    ++records;
    if (fields[0] == kTransitionKey) {
      const std::string_view pair = fields[1];
      auto from = pair.size() == 3 ? ParseLabel(pair.substr(0, 1)) : std::nullopt;
      auto to = pair.size() == 3 ? ParseLabel(pair.substr(2, 1)) : std::nullopt;
      if (!from || !to || pair[1] != ':') throw fail("bad transition record");
      transitions[{LabelIndex(*from), LabelIndex(*to)}] =
          parse_double(fields[2]);
      continue;
    }
    auto label = ParseLabel(fields[1]);
    if (!label) throw fail("bad label in weight record");
    const size_t expected = state_weights.size() % kNumLabels;
    if (static_cast<size_t>(LabelIndex(*label)) != expected) {
      throw fail("weight records must list labels B, I, O per feature");
    }
    if (expected == 0) {
      names.emplace_back(fields[0]);
    } else if (names.back() != fields[0]) {
      throw fail("weight records for one feature must be contiguous");
    }
    state_weights.push_back(parse_double(fields[2]));
  }
  if (state_weights.size() % kNumLabels != 0) {
    throw fail("truncated weight records");
  }
  if (transitions.size() != 9) throw fail("model needs 9 transition weights");
  if (records != *feature_count) {
    throw fail("header declares " + std::to_string(*feature_count) +
               " weights but the file has " + std::to_string(records));
  }

  model.index = FeatureIndex(std::move(names));
  model.weights = std::move(state_weights);
  model.weights.resize(model.index.num_weights(), 0.0);
  for (const auto& [pair, weight] : transitions) {
    model.weights[model.index.TransitionSlot(static_cast<Label>(pair.first),
                                             static_cast<Label>(pair.second))] =
        weight;
  }
  return model;
}

CrfModel LoadModel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model file '" + path + "'");
  return LoadModel(in, path);
}

}  // namespace tempex
