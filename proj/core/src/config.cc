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


#include "tempex/config.h"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "tempex/error.h"

namespace tempex {

namespace {

namespace pt = boost::property_tree;
namespace fs = std::filesystem;

std::string Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return std::string(s);
}

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

class Reader {
 public:
  Reader(const std::string& text, std::string source)
      : text_(text), source_(std::move(source)) {}

  // Line of `section`.`key`, or 0 when it cannot be located.
  size_t LineOf(const std::string& section, const std::string& key) const {
    std::stringstream ss(text_);
    std::string line;
    std::string current;
    size_t n = 0;
    while (std::getline(ss, line)) {
      ++n;
      const std::string t = Trim(line);
      if (t.size() > 1 && t.front() == '[' && t.back() == ']') {
        current = t.substr(1, t.size() - 2);
        if (current == section && key.empty()) return n;
        continue;
      }
      if (current != section) continue;
      const size_t eq = t.find('=');
      if (eq != std::string::npos && Trim(t.substr(0, eq)) == key) return n;
    }
    return 0;
  }

  [[noreturn]] void Fail(const std::string& section, const std::string& key,
                         const std::string& what) const {
    throw ParseError(source_, LineOf(section, key), what);
  }

  double Double(const std::string& section, const std::string& key,
                const std::string& raw) const {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
    if (ec != std::errc() || ptr != raw.data() + raw.size()) {
      Fail(section, key, "'" + key + "' needs a number, got '" + raw + "'");
    }
    return v;
  }

  uint64_t Unsigned(const std::string& section, const std::string& key,
                    const std::string& raw) const {
    uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
    if (ec != std::errc() || ptr != raw.data() + raw.size()) {
      Fail(section, key,
           "'" + key + "' needs a non-negative integer, got '" + raw + "'");
    }
    return v;
  }

  bool Bool(const std::string& section, const std::string& key,
            const std::string& raw) const {
    if (raw == "true" || raw == "yes" || raw == "on" || raw == "1") return true;
    if (raw == "false" || raw == "no" || raw == "off" || raw == "0") return false;
    Fail(section, key, "'" + key + "' needs true or false, got '" + raw + "'");
  }

  ModelProfile Profile(const std::string& section, const std::string& key,
                       const std::string& raw) const {
    auto p = ParseProfile(raw);
    if (!p) Fail(section, key, "unknown model profile '" + raw + "'");
    return *p;
  }

 private:
  const std::string& text_;
  std::string source_;
};

std::string Resolve(const std::string& base_dir, const std::string& path) {
  if (base_dir.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(base_dir) / path).lexically_normal().string();
}

}  // namespace

void RunConfig::Validate() const {
  if (!(pipeline.threshold >= 0.0 && pipeline.threshold <= 1.0)) {
    throw Error("pipeline threshold must lie in [0, 1]");
  }
  if (!(split > 0.0 && split <= 1.0)) {
    throw Error("experiment split must lie in (0, 1]");
  }
  auto require = [](const std::string& path, const char* what) {
    if (!fs::exists(path)) {
      throw Error(std::string(what) + " '" + path + "' does not exist");
    }
  };
  for (const std::string& g : gazetteer_paths) require(g, "gazetteer");
  if (lexicon_dir) require(*lexicon_dir, "lexicon directory");
  if (rules_path) require(*rules_path, "rule file");
  if (priors_path) require(*priors_path, "prior table");
}

RunConfig ParseRunConfig(std::istream& in, const std::string& source,
                         const std::string& base_dir) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  pt::ptree tree;
  try {
    std::stringstream copy(text);
    pt::read_ini(copy, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError(source, e.line(), e.message());
  }

  static const std::map<std::string, std::set<std::string>> known = {
      {"model", {"profile", "extra_columns"}},
      {"crf", {"c", "eta", "max_iter", "cutoff"}},
      {"pipeline", {"enabled", "threshold", "stages"}},
      {"normalizer", {"enabled", "day_first", "bare_weekday", "fallback"}},
      {"paths", {"gazetteers", "lexicons", "rules", "priors"}},
      {"experiment", {"seed", "k", "repeats", "split", "profiles"}},
  };

  const Reader reader(text, source);
  RunConfig config;
  for (const auto& [section, body] : tree) {
    auto sit = known.find(section);
    if (sit == known.end()) {
      if (!body.empty() || body.data().empty()) {
        reader.Fail(section, "", "unknown section [" + section + "]");
      }
      reader.Fail("", section, "key '" + section + "' outside a section");
    }
    for (const auto& [key, node] : body) {
      if (!sit->second.contains(key)) {
        reader.Fail(section, key,
                    "unknown key '" + key + "' in [" + section + "]");
      }
      const std::string raw = Trim(node.data());
      if (section == "model") {
        if (key == "profile") config.profile = reader.Profile(section, key, raw);
        if (key == "extra_columns") {
          config.extra_columns = reader.Unsigned(section, key, raw);
        }
      } else if (section == "crf") {
        if (key == "c") config.hyperparams.c = reader.Double(section, key, raw);
        if (key == "eta") config.hyperparams.eta = reader.Double(section, key, raw);
        if (key == "max_iter") {
          config.hyperparams.max_iter =
              static_cast<int>(reader.Unsigned(section, key, raw));
        }
        if (key == "cutoff") {
          config.hyperparams.cutoff = reader.Unsigned(section, key, raw);
        }
      } else if (section == "pipeline") {
        if (key == "enabled") config.pipeline_enabled = reader.Bool(section, key, raw);
        if (key == "threshold") {
          config.pipeline.threshold = reader.Double(section, key, raw);
        }
        if (key == "stages") {
          try {
            config.pipeline.stages = ParseStageList(raw);
          } catch (const Error& e) {
            reader.Fail(section, key, e.what());
          }
        }
      } else if (section == "normalizer") {
        if (key == "enabled") config.normalize = reader.Bool(section, key, raw);
        if (key == "day_first") {
          config.normalizer.day_first = reader.Bool(section, key, raw);
        }
        if (key == "fallback") config.fallback = reader.Bool(section, key, raw);
        if (key == "bare_weekday") {
          if (raw == "nearest_past") {
            config.normalizer.bare_weekday = WeekdayDirection::kNearestPast;
          } else if (raw == "nearest_future") {
            config.normalizer.bare_weekday = WeekdayDirection::kNearestFuture;
          } else {
            reader.Fail(section, key,
                        "bare_weekday must be nearest_past or nearest_future");
          }
        }
      } else if (section == "paths") {
        if (key == "gazetteers") {
          config.gazetteer_paths.clear();
          for (const std::string& p : SplitList(raw)) {
            config.gazetteer_paths.push_back(Resolve(base_dir, p));
          }
        }
        if (key == "lexicons") config.lexicon_dir = Resolve(base_dir, raw);
        if (key == "rules") config.rules_path = Resolve(base_dir, raw);
        if (key == "priors") config.priors_path = Resolve(base_dir, raw);
      } else if (section == "experiment") {
        if (key == "seed") config.seed = reader.Unsigned(section, key, raw);
        if (key == "k") config.k = reader.Unsigned(section, key, raw);
        if (key == "repeats") config.repeats = reader.Unsigned(section, key, raw);
        if (key == "split") config.split = reader.Double(section, key, raw);
        if (key == "profiles") {
          config.profiles.clear();
          for (const std::string& p : SplitList(raw)) {
            config.profiles.push_back(reader.Profile(section, key, p));
          }
          if (config.profiles.empty()) {
            reader.Fail(section, key, "profiles must not be empty");
          }
        }
      }
    }
  }
  return config;
}

RunConfig LoadRunConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file '" + path + "'");
  const std::string dir = fs::path(path).parent_path().string();
  RunConfig config = ParseRunConfig(in, path, dir.empty() ? "." : dir);
  config.Validate();
  return config;
}

}  // namespace tempex
