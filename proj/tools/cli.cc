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

#include "cli.h"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "tempex/config.h"
#include "tempex/corpus.h"
#include "tempex/crf.h"
#include "tempex/error.h"
#include "tempex/eval.h"
#include "tempex/experiment.h"
#include "tempex/features.h"
#include "tempex/gazetteer.h"
#include "tempex/lexicon.h"
#include "tempex/normalizer.h"
#include "tempex/postproc.h"
#include "tempex/tagger.h"
#include "tempex/tokenizer.h"

namespace tempex::cli {

namespace {

namespace fs = std::filesystem;

struct GlobalFlags {
  std::string config_path;
  std::optional<uint64_t> seed;
  std::string profile;
  std::optional<double> threshold;
  bool no_pipeline = false;
  bool no_normalize = false;
  bool fallback = false;
  bool strict = false;
  std::vector<std::string> gazetteers;
  std::string lexicons;
  std::string rules;
  std::string priors;
  unsigned threads = 0;
};

struct TrainFlags {
  std::string corpus;
  std::string model;
  std::string priors_out;
  std::string log;
  std::optional<double> c;
  std::optional<double> eta;
  std::optional<int> max_iter;
  std::optional<size_t> cutoff;
  std::optional<size_t> extra_columns;
};

struct TagFlags {
  std::string input;
  std::string text;
  std::string model;
  std::string format = "inline";
  std::string dct;
  std::string id = "doc";
  std::string output;
  std::string attributes_out;
};

struct NormalizeFlags {
  std::vector<std::string> expressions;
  std::string dct;
  bool day_first = false;
};

struct EvaluateFlags {
  std::string gold;
  std::string pred;
  std::string gold_attributes;
  std::string pred_attributes;
  std::string basis = "lenient";
  std::string tsv;
};

struct CvFlags {
  std::string corpus;
  std::string out_dir;
  std::optional<size_t> k;
  std::optional<size_t> repeats;
  std::string profiles;
  std::optional<double> split;
};

struct PriorsFlags {
  std::string corpus;
  std::string output;
};

struct RulesFlags {
  std::string output;
};

// Counts warnings so that --strict can turn them into exit code 1.
class Warnings {
 public:
  explicit Warnings(std::ostream& err) : err_(err) {}
  void Add(const std::string& message) {
    err_ << "warning: " << message << '\n';
    ++count_;
  }
  size_t count() const { return count_; }

 private:
  std::ostream& err_;
  size_t count_ = 0;
};

class Session {
 public:
  Session(const GlobalFlags& flags, std::istream& in, std::ostream& out,
          std::ostream& err)
      : flags_(flags), in_(in), out_(out), err_(err), warnings_(err) {}

  int Train(const TrainFlags& f);
  int Tag(const TagFlags& f);
  int Normalize(const NormalizeFlags& f);
  int Evaluate(const EvaluateFlags& f);
  int Cv(const CvFlags& f);
  int Priors(const PriorsFlags& f);
  int RulesDump(const RulesFlags& f);

 private:
  RunConfig Config() const;
  Resources LoadResources(const RunConfig& config) const;
  Normalizer MakeNormalizer(const RunConfig& config) const;
  int Finish() const;

  const GlobalFlags& flags_;
  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
  Warnings warnings_;
};

std::ofstream OpenOutput(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  return out;
}

std::string ReadAll(std::istream& in) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool LooksLikeCorpus(const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    return line.rfind("#doc", 0) == 0;
  }
  return false;
}

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

RunConfig Session::Config() const {
  RunConfig config;
  if (!flags_.config_path.empty()) config = LoadRunConfig(flags_.config_path);
  if (flags_.seed) config.seed = *flags_.seed;
  if (!flags_.profile.empty()) {
    auto p = ParseProfile(flags_.profile);
    if (!p) throw Error("unknown model profile '" + flags_.profile + "'");
    config.profile = *p;
  }
  if (flags_.threshold) config.pipeline.threshold = *flags_.threshold;
  if (flags_.no_pipeline) config.pipeline_enabled = false;
  if (flags_.no_normalize) config.normalize = false;
  if (flags_.fallback) config.fallback = true;
  if (!flags_.gazetteers.empty()) config.gazetteer_paths = flags_.gazetteers;
  if (!flags_.lexicons.empty()) config.lexicon_dir = flags_.lexicons;
  if (!flags_.rules.empty()) config.rules_path = flags_.rules;
  if (!flags_.priors.empty()) config.priors_path = flags_.priors;
  config.Validate();
  return config;
}

Resources Session::LoadResources(const RunConfig& config) const {
  Resources resources = Resources::Builtin();
  if (config.lexicon_dir) {
    resources.lexicons =
        std::make_shared<const LexiconSet>(LexiconSet::Load(*config.lexicon_dir));
  }
  for (const std::string& path : config.gazetteer_paths) {
    resources.gazetteers.push_back(Gazetteer::Load(path));
  }
  return resources;
}

Normalizer Session::MakeNormalizer(const RunConfig& config) const {
  if (config.rules_path) {
    return Normalizer::FromOverrideFile(*config.rules_path, config.normalizer);
  }
  return Normalizer(config.normalizer);
}

int Session::Finish() const {
  if (flags_.strict && warnings_.count() > 0) return kExitWarning;
  return kExitOk;
}

int Session::Train(const TrainFlags& f) {
  RunConfig config = Config();
  if (f.c) config.hyperparams.c = *f.c;
  if (f.eta) config.hyperparams.eta = *f.eta;
  if (f.max_iter) config.hyperparams.max_iter = *f.max_iter;
  if (f.cutoff) config.hyperparams.cutoff = *f.cutoff;
  if (f.extra_columns) config.extra_columns = *f.extra_columns;
  if (ProfileUsesGazetteers(config.profile) && config.gazetteer_paths.empty()) {
    throw Error("profile " + std::string(ProfileName(config.profile)) +
                " needs at least one gazetteer");
  }
  const Resources resources = LoadResources(config);
  const std::vector<Document> docs = ReadCorpus(f.corpus);
  const std::vector<Sequence> sentences = Sentences(docs);
  if (sentences.empty()) throw Error("corpus '" + f.corpus + "' has no sentences");

  TrainOptions options;
  options.profile = config.profile;
  options.hyperparams = config.hyperparams;
  options.extra_columns = config.extra_columns;
  const CrfModel model = TrainModel(sentences, resources, options);
  SaveModel(model, f.model);

  const std::string priors_path =
      f.priors_out.empty() ? f.model + ".priors" : f.priors_out;
  PriorTable::Build(std::span<const Sequence>(sentences)).Save(priors_path);

  size_t tokens = 0;
  for (const Sequence& s : sentences) tokens += s.size();
  const FeaturePipeline pipeline(config.profile, resources, config.extra_columns);

  std::ostringstream summary;
  summary << "profile\t" << ProfileName(config.profile) << '\n'
          << "sentences\t" << sentences.size() << '\n'
          << "tokens\t" << tokens << '\n'
          << "feature_catalog\t";
  const auto& names = pipeline.extractor().feature_names();
  for (size_t i = 0; i < names.size(); ++i) {
    summary << (i ? "," : "") << names[i];
  }
  summary << '\n'
          << "attributes\t" << model.index.num_attributes() << '\n'
          << "features\t" << model.index.num_weights() << '\n'
          << "iterations\t" << model.metadata.log.iterations << '\n'
          << "final_objective\t" << Fixed(model.metadata.log.final_objective, 6)
          << '\n'
          << "converged\t" << (model.metadata.log.converged ? "yes" : "no")
          << '\n'
          << "status\t" << model.metadata.log.status << '\n'
          << "model\t" << f.model << '\n'
          << "priors\t" << priors_path << '\n';
  out_ << summary.str();
  if (!f.log.empty()) {
    std::ofstream log = OpenOutput(f.log);
    log << summary.str();
    const auto& trace = model.metadata.log.objective_trace;
    for (size_t i = 0; i < trace.size(); ++i) {
      log << "objective\t" << i << '\t' << Fixed(trace[i], 6) << '\n';
    }
  }
  if (!model.metadata.log.converged) {
    warnings_.Add("training stopped before convergence: " +
                  model.metadata.log.status);
  }
  return Finish();
}

int Session::Tag(const TagFlags& f) {
  const RunConfig config = Config();
  auto model = std::make_shared<const CrfModel>(LoadModel(f.model));
  if (!flags_.profile.empty() && model->metadata.profile != config.profile) {
    throw Error("model was trained as " +
                std::string(ProfileName(model->metadata.profile)) +
                " but --profile asks for " + flags_.profile);
  }
  const Tagger tagger(model, LoadResources(config));

  std::optional<PriorTable> priors;
  PipelineConfig pipeline = config.pipeline;
  if (config.pipeline_enabled) {
    std::string path;
    if (config.priors_path) {
      path = *config.priors_path;
    } else if (fs::exists(f.model + ".priors")) {
      path = f.model + ".priors";
    } else {
      throw Error("post-processing needs a prior table; pass --priors or --no-pipeline");
    }
    priors = PriorTable::Load(path);
  }

  std::string text;
  if (!f.text.empty()) {
    text = f.text;
  } else if (f.input.empty() || f.input == "-") {
    text = ReadAll(in_);
  } else {
    std::ifstream file(f.input);
    if (!file) throw Error("cannot open input '" + f.input + "'");
    text = ReadAll(file);
  }

  std::vector<Document> docs;
  if (LooksLikeCorpus(text)) {
    std::istringstream stream(text);
    docs = ParseCorpus(stream, f.input.empty() ? "<input>" : f.input);
  } else if (text.find_first_not_of(" \t\r\n") != std::string::npos) {
    if (f.dct.empty()) throw Error("raw text needs --dct YYYY-MM-DD");
    docs.push_back(MakeDocument(f.id, Anchor::Parse(f.dct), text));
  }
  if (f.format != "inline" && f.format != "columns") {
    throw Error("--format must be inline or columns");
  }

  const std::optional<Normalizer> normalizer =
      config.normalize ? std::optional<Normalizer>(MakeNormalizer(config))
                       : std::nullopt;
  std::vector<Document> tagged_docs;
  std::vector<TimexAttributes> attributes;
  std::ostringstream inline_out;
  for (const Document& doc : docs) {
    Document tagged = tagger.TagDocument(doc, priors ? &*priors : nullptr,
                                         priors ? &pipeline : nullptr);
    std::vector<TimexSpan> spans;
    for (size_t s = 0; s < tagged.sequences.size(); ++s) {
      const Sequence& seq = tagged.sequences[s];
      auto found = BioToSpans(*seq.gold_labels, seq, s, BioMode::kTolerant);
      spans.insert(spans.end(), found.begin(), found.end());
    }
    // Keep the stored labels valid BIO for the column writer.
    for (Sequence& seq : tagged.sequences) {
      if (!IsValidBio(*seq.gold_labels)) {
        seq.gold_labels = BioFixer(*seq.gold_labels, seq.tokens);
      }
    }
    if (normalizer) {
      const DocumentNormalization norm =
          NormalizeSpans(*normalizer, tagged, spans, config.fallback);
      for (const TimexSpan& span : norm.unmatched) {
        warnings_.Add("no normalization rule for '" + span.text + "' in " +
                      doc.id + "; span left out of the output");
      }
      for (const Timex& t : norm.timexes) {
        attributes.push_back(TimexAttributes{doc.id, t.span.char_start,
                                             t.span.char_end, t.type, t.value});
      }
      if (f.format == "inline") {
        inline_out << EmitInlineTimex(tagged, norm.timexes);
      }
    } else if (f.format == "inline") {
      inline_out << EmitInlineSpans(tagged, spans);
    }
    tagged_docs.push_back(std::move(tagged));
  }
  std::ostringstream result;
  if (f.format == "inline") {
    result << inline_out.str();
    if (!inline_out.str().empty() && inline_out.str().back() != '\n') result << '\n';
  } else {
    WriteCorpus(tagged_docs, result);
  }
  if (f.output.empty()) {
    out_ << result.str();
  } else {
    OpenOutput(f.output) << result.str();
  }
  if (!f.attributes_out.empty()) {
    std::ofstream attr_out = OpenOutput(f.attributes_out);
    WriteAttributes(attributes, attr_out);
  }
  return Finish();
}

int Session::Normalize(const NormalizeFlags& f) {
  RunConfig config = Config();
  if (f.day_first) config.normalizer.day_first = true;
  const Anchor anchor = Anchor::Parse(f.dct);
  const Normalizer normalizer = MakeNormalizer(config);
  for (const std::string& expr : f.expressions) {
    auto result = normalizer.Normalize(std::string_view(expr), anchor);
    if (result) {
      out_ << expr << '\t' << TimexTypeName(result->type) << '\t'
           << result->value << '\t' << result->rule_id << '\n';
    } else if (config.fallback) {
      out_ << expr << "\tDATE\tPRESENT_REF\tfallback\n";
    } else {
      out_ << expr << "\t-\t-\tno_match\n";
      warnings_.Add("no normalization rule for '" + expr + "'");
    }
  }
  return Finish();
}

int Session::Evaluate(const EvaluateFlags& f) {
  const std::vector<Document> gold = ReadCorpus(f.gold);
  const std::vector<Document> pred = ReadCorpus(f.pred);
  std::vector<TimexAttributes> gold_attrs;
  std::vector<TimexAttributes> pred_attrs;
  if (!f.gold_attributes.empty()) gold_attrs = ReadAttributes(f.gold_attributes);
  if (!f.pred_attributes.empty()) pred_attrs = ReadAttributes(f.pred_attributes);
  if (gold_attrs.empty() != pred_attrs.empty()) {
    throw Error("attribute files must be given for both gold and predictions");
  }
  AccuracyBasis basis;
  if (f.basis == "lenient") {
    basis = AccuracyBasis::kLenient;
  } else if (f.basis == "strict") {
    basis = AccuracyBasis::kStrict;
  } else {
    throw Error("--basis must be lenient or strict");
  }
  const EvalReport report =
      EvaluateCorpora(gold, gold_attrs, pred, pred_attrs, basis);
  WriteReportText(report, out_);
  if (!f.tsv.empty()) {
    std::ofstream tsv = OpenOutput(f.tsv);
    WriteReportTsv(report, tsv);
  }
  if (auto value = report.value_accuracy(); value && value->empty_alignment) {
    warnings_.Add("no aligned expressions; accuracies reported as 0");
  }
  if (report.strict_counts.predicted_total == 0) {
    warnings_.Add("no predicted expressions");
  }
  return Finish();
}

int Session::Cv(const CvFlags& f) {
  RunConfig config = Config();
  if (f.k) config.k = *f.k;
  if (f.repeats) config.repeats = *f.repeats;
  if (f.split) config.split = *f.split;
  if (!f.profiles.empty()) {
    config.profiles.clear();
    std::stringstream ss(f.profiles);
    std::string name;
    while (std::getline(ss, name, ',')) {
      auto p = ParseProfile(name);
      if (!p) throw Error("unknown model profile '" + name + "'");
      config.profiles.push_back(*p);
    }
  } else if (!flags_.profile.empty()) {
    config.profiles = {config.profile};
  }
  config.Validate();
  for (ModelProfile p : config.profiles) {
    if (ProfileUsesGazetteers(p) && config.gazetteer_paths.empty()) {
      throw Error("profile " + std::string(ProfileName(p)) +
                  " needs at least one gazetteer");
    }
  }

  const std::vector<Document> docs = ReadCorpus(f.corpus);
  std::vector<Sequence> sentences = Sentences(docs);
  if (config.split < 1.0) {
    const SplitIndices split =
        ShuffleAndSplit(sentences.size(), config.seed, config.split);
    std::vector<Sequence> part;
    for (size_t i : split.part_a) part.push_back(sentences[i]);
    sentences = std::move(part);
  }

  CvOptions options;
  options.k = config.k;
  options.repeats = config.repeats;
  options.seed = config.seed;
  options.profiles = config.profiles;
  options.hyperparams = config.hyperparams;
  options.extra_columns = config.extra_columns;
  options.evaluate_pipeline = config.pipeline_enabled;
  options.pipeline = config.pipeline;
  options.threads = flags_.threads;
  const CvResult result =
      CrossValidate(sentences, LoadResources(config), options);

  fs::create_directories(f.out_dir);
  const fs::path dir(f.out_dir);
  {
    std::ofstream matrix = OpenOutput((dir / "cv_matrix.tsv").string());
    WriteCvMatrix(result, matrix);
  }
  {
    std::ofstream folds = OpenOutput((dir / "cv_folds.tsv").string());
    WriteFoldAssignments(result.plan, folds);
  }
  std::ostringstream summary;
  WriteCvSummary(result, options, summary);
  OpenOutput((dir / "cv_summary.tsv").string()) << summary.str();
  out_ << summary.str();
  return Finish();
}

int Session::Priors(const PriorsFlags& f) {
  const std::vector<Document> docs = ReadCorpus(f.corpus);
  const PriorTable table = PriorTable::Build(std::span<const Document>(docs));
  if (f.output.empty()) {
    table.Write(out_);
  } else {
    table.Save(f.output);
  }
  if (table.empty()) warnings_.Add("prior table is empty");
  return Finish();
}

int Session::RulesDump(const RulesFlags& f) {
  const RunConfig config = Config();
  const Normalizer normalizer = MakeNormalizer(config);
  if (f.output.empty()) {
    WriteRules(normalizer.rules(), out_);
  } else {
    std::ofstream file = OpenOutput(f.output);
    WriteRules(normalizer.rules(), file);
  }
  return Finish();
}

}  // namespace

int Run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  CLI::App app{"Temporal expression extraction, normalization and evaluation",
               "tempex"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags g;
  app.add_option("--config", g.config_path, "Run configuration file");
  app.add_option("--seed", g.seed, "Shuffling seed");
  app.add_option("--profile", g.profile, "model1, model2, model3 or model4");
  app.add_option("--threshold", g.threshold, "Label switcher threshold");
  app.add_flag("--no-pipeline", g.no_pipeline, "Skip post-processing");
  app.add_flag("--no-normalize", g.no_normalize, "Skip normalization");
  app.add_flag("--fallback", g.fallback,
               "Type unnormalizable expressions as DATE PRESENT_REF");
  app.add_flag("--strict", g.strict, "Exit with 1 when warnings were issued");
  app.add_option("--gazetteer", g.gazetteers, "Gazetteer file (repeatable)");
  app.add_option("--lexicons", g.lexicons, "Directory overriding lexicons");
  app.add_option("--rules", g.rules, "Normalization rule override file");
  app.add_option("--priors", g.priors, "Prior table file");
  app.add_option("--threads", g.threads, "Worker threads for cv (0 = auto)");

  TrainFlags train;
  auto* train_cmd = app.add_subcommand("train", "Train a CRF model");
  train_cmd->add_option("corpus", train.corpus, "Labeled corpus")->required();
  train_cmd->add_option("-o,--model", train.model, "Model output")->required();
  train_cmd->add_option("--priors-out", train.priors_out,
                        "Prior table output (default MODEL.priors)");
  train_cmd->add_option("--log", train.log, "Training log output");
  train_cmd->add_option("--c", train.c, "L2 penalty constant C");
  train_cmd->add_option("--eta", train.eta, "Stopping tolerance");
  train_cmd->add_option("--max-iter", train.max_iter, "Iteration limit");
  train_cmd->add_option("--cutoff", train.cutoff, "Minimum attribute count");
  train_cmd->add_option("--extra-columns", train.extra_columns,
                        "Number of wn<k> columns (model4)");

  TagFlags tag;
  auto* tag_cmd = app.add_subcommand("tag", "Tag raw text or a corpus");
  tag_cmd->add_option("input", tag.input, "Input file, '-' for stdin");
  tag_cmd->add_option("--text", tag.text, "Raw text to tag");
  tag_cmd->add_option("-m,--model", tag.model, "Model file")->required();
  tag_cmd->add_option("--format", tag.format, "inline or columns");
  tag_cmd->add_option("--dct", tag.dct, "Creation date for raw text");
  tag_cmd->add_option("--id", tag.id, "Document id for raw text");
  tag_cmd->add_option("-o,--output", tag.output, "Output file");
  tag_cmd->add_option("--attributes-out", tag.attributes_out,
                      "Type/value sidecar output");

  NormalizeFlags norm;
  auto* norm_cmd =
      app.add_subcommand("normalize", "Normalize temporal expressions");
  norm_cmd->add_option("expressions", norm.expressions, "Expressions")
      ->required();
  norm_cmd->add_option("--dct", norm.dct, "Anchor date")->required();
  norm_cmd->add_flag("--day-first", norm.day_first,
                     "Read numeric dates as day/month");

  EvaluateFlags eval;
  auto* eval_cmd =
      app.add_subcommand("evaluate", "Score predictions against gold");
  eval_cmd->add_option("gold", eval.gold, "Gold corpus")->required();
  eval_cmd->add_option("pred", eval.pred, "Predicted corpus")->required();
  eval_cmd->add_option("--gold-attributes", eval.gold_attributes,
                       "Gold type/value sidecar");
  eval_cmd->add_option("--pred-attributes", eval.pred_attributes,
                       "Predicted type/value sidecar");
  eval_cmd->add_option("--basis", eval.basis,
                       "Alignment for accuracies: lenient or strict");
  eval_cmd->add_option("--tsv", eval.tsv, "Machine-readable report output");

  CvFlags cv;
  auto* cv_cmd = app.add_subcommand("cv", "Repeated k-fold cross-validation");
  cv_cmd->add_option("corpus", cv.corpus, "Labeled corpus")->required();
  cv_cmd->add_option("--out-dir", cv.out_dir, "Output directory")->required();
  cv_cmd->add_option("--k", cv.k, "Number of folds");
  cv_cmd->add_option("--repeats", cv.repeats, "Number of reshuffles");
  cv_cmd->add_option("--profiles", cv.profiles,
                     "Comma-separated profiles to compare");
  cv_cmd->add_option("--split", cv.split,
                     "Share of sentences used for cross-validation");

  PriorsFlags priors;
  auto* priors_cmd =
      app.add_subcommand("priors", "Build a prior table from a corpus");
  priors_cmd->add_option("corpus", priors.corpus, "Labeled corpus")->required();
  priors_cmd->add_option("-o,--output", priors.output, "Output file");

  RulesFlags rules;
  auto* rules_cmd = app.add_subcommand("rules", "Inspect normalization rules");
  rules_cmd->require_subcommand(1);
  auto* dump_cmd = rules_cmd->add_subcommand("dump", "Print the rule table");
  dump_cmd->add_option("-o,--output", rules.output, "Output file");

  std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  Session session(g, in, out, err);
  try {
    if (*train_cmd) return session.Train(train);
    if (*tag_cmd) return session.Tag(tag);
    if (*norm_cmd) return session.Normalize(norm);
    if (*eval_cmd) return session.Evaluate(eval);
    if (*cv_cmd) return session.Cv(cv);
    if (*priors_cmd) return session.Priors(priors);
    if (*dump_cmd) return session.RulesDump(rules);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace tempex::cli
