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


#include "testing/synthetic.h"

#include <random>
#include <sstream>

#include "tempex/random.h"

namespace tempex::testing {

namespace {

class Picker {
 public:
  explicit Picker(uint64_t seed) : rng_(seed) {}

  size_t Below(size_t n) {
    return static_cast<size_t>(UniformBelow(rng_, n));
  }
  std::string From(const std::vector<std::string>& items) {
    return items[Below(items.size())];
  }
  double Unit() { return static_cast<double>(Below(1000000)) / 1e6; }

 private:
  std::mt19937_64 rng_;
};

const std::vector<std::string> kNumbers = {
    "two", "three", "four", "five", "six", "seven", "eight", "ten", "2", "3",
    "4", "5", "12"};
const std::vector<std::string> kUnits = {"day", "week", "month", "year"};
const std::vector<std::string> kMonths = {
    "January", "February", "March", "April", "June", "July", "August",
    "September", "October", "November", "December"};
const std::vector<std::string> kWeekdays = {
    "Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday",
    "Sunday"};
const std::vector<std::string> kFuzzy = {"several", "a few", "many"};
const std::vector<std::string> kPods = {"morning", "afternoon", "evening"};

// One expression in markup, possibly preceded by an unlabeled preposition.
std::string Expression(Picker& pick) {
  auto span = [](const std::string& words) { return "[" + words + "]"; };
  const std::string number = pick.From(kNumbers);
  const std::string unit = pick.From(kUnits) + "s";
  switch (pick.Below(17)) {
    case 0: return span(number + " " + unit + " ago");
    case 1: return span(number + " " + unit + " later");
    case 2: return span(pick.From({"last", "next", "this"}) + " " +
                        pick.From({"week", "month", "year"}));
    case 3: return span(pick.From({"yesterday", "today", "tomorrow"}));
    case 4: return "on " + span(pick.From(kWeekdays));
    case 5:
      return "on " + span(pick.From(kMonths) + " " +
                          std::to_string(1 + pick.Below(28)) + " , " +
                          std::to_string(1990 + pick.Below(25)));
    case 6:
      return "in " + span(pick.From(kMonths) + " " +
                          std::to_string(1990 + pick.Below(25)));
    case 7: return "in " + span(std::to_string(1990 + pick.Below(25)));
    case 8: return "for " + span(number + " " + unit);
    case 9: return span("every " + pick.From(kUnits));
    case 10: return span(pick.From({"daily", "weekly", "monthly"}));
    case 11: return "in " + span("the " + std::to_string(196 + pick.Below(5)) + "0s");
    case 12: return span("this " + pick.From(kPods));
    case 13: return "for " + span(pick.From(kFuzzy) + " " + unit);
    case 14: return "at " + span(std::to_string(1 + pick.Below(11)) + " pm");
    case 15: return span(pick.From({"recently", "now", "soon"}));
    default:
      return span(pick.From({"last", "next"}) + " " + pick.From(kWeekdays));
  }
}

std::string Capitalize(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 32);
  if (s.size() > 1 && s[0] == '[' && s[1] >= 'a' && s[1] <= 'z') {
    s[1] = static_cast<char>(s[1] - 32);
  }
  return s;
}

std::string Sentence(Picker& pick) {
  const std::string t = Expression(pick);
  switch (pick.Below(8)) {
    case 0: return "The meeting was held " + t + " .";
    case 1: return Capitalize(t) + " , the company reported strong results .";
    case 2: return "Officials said the talks would continue " + t + " .";
    case 3: return "Prices rose sharply " + t + " according to analysts .";
    case 4: return "She has lived in Boston " + t + " .";
    case 5: return "The report will be published " + t + " .";
    case 6: return "The team trained " + t + " before the final .";
    default: return "He said the plant had been closed " + t + " .";
  }
}

std::string PlainSentence(Picker& pick) {
  const std::string number = pick.From(kNumbers);
  switch (pick.Below(6)) {
    case 0: return "The committee approved " + number + " new members .";
    case 1: return "Two people were injured in the accident .";
    case 2: return "The mayor spoke to reporters at the station .";
    case 3: return "Analysts expect " + number + " banks to merge .";
    case 4: return "The museum opened a new wing for modern art .";
    default: return "Police arrested " + number + " suspects near the border .";
  }
}

}  // namespace

Document MakeLabeledDocument(const std::string& id,
                             const std::vector<std::string>& sentences,
                             const std::string& dct) {
  Document doc;
  doc.id = id;
  doc.dct = Anchor::Parse(dct);
  size_t offset = 0;
  for (const std::string& markup : sentences) {
    Sequence seq;
    std::vector<Label> labels;
    std::istringstream words(markup);
    std::string word;
    bool inside = false;
    while (words >> word) {
      Label label = inside ? Label::kI : Label::kO;
      if (word.size() > 1 && word.front() == '[') {
        word.erase(0, 1);
        label = Label::kB;
        inside = true;
      }
      bool closes = false;
      if (word.size() > 1 && word.back() == ']') {
        word.pop_back();
        closes = true;
      }
      Token token;
      token.surface = word;
      token.char_start = offset;
      token.char_end = offset + word.size();
      offset = token.char_end + 1;
      seq.tokens.push_back(std::move(token));
      labels.push_back(label);
      if (closes) inside = false;
    }
    seq.gold_labels = std::move(labels);
    doc.sequences.push_back(std::move(seq));
  }
  doc.raw_text = ReconstructText(doc);
  return doc;
}

std::vector<Document> SyntheticCorpus(const SyntheticOptions& options) {
  Picker pick(options.seed);
  std::vector<Document> docs;
  std::vector<std::string> pending;
  auto flush = [&] {
    if (pending.empty()) return;
    docs.push_back(
        MakeLabeledDocument("synth" + std::to_string(docs.size()), pending));
    pending.clear();
  };
  for (size_t i = 0; i < options.sentences; ++i) {
    pending.push_back(pick.Unit() < options.plain_share ? PlainSentence(pick)
                                                        : Sentence(pick));
    if (pending.size() == options.sentences_per_document) flush();
  }
  flush();
  return docs;
}

}  // namespace tempex::testing
