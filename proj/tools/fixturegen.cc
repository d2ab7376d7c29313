// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

// Builds the replay fixtures and sample predictions bundled with the
// synthetic corpus. The scripted replies stand in for a live LLM; a few are
// deliberately defective so the parser's drop paths are exercised.

#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "uiground/advgen.h"
#include "uiground/error.h"
#include "uiground/eval.h"
#include "uiground/grouping.h"
#include "uiground/hashing.h"
#include "uiground/llm_client.h"
#include "uiground/prompt_pool.h"
#include "uiground/screen.h"
#include "uiground/taskgen.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace uiground {
namespace {

std::string Token(const ScreenAnnotation& s, const UIElement& e, int dx = 0) {
  NormBBox n = NormalizeBBox(e.bbox, s.width, s.height);
  n.x1 = std::max(0, n.x1 - dx);
  n.x2 = std::min(kNormMax, n.x2 + dx);
  return BBoxToToken(n);
}

std::string Lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string Name(const UIElement& e) {
  const std::string label = e.Label();
  return label.empty() ? Lower(e.type.Name()) : "\"" + label + "\"";
}

std::vector<UIElement> Ordered(const ScreenAnnotation& s) {
  std::vector<UIElement> v = s.elements;
  SortReadingOrder(v);
  return v;
}

std::string Reply(const ScreenAnnotation& s, Task task, std::size_t index) {
  const auto els = Ordered(s);
  const UIElement& title = els.front();
  const UIElement& last = els.back();
  const UIElement& mid = els[els.size() / 2];
  switch (task) {
    case Task::kDetailedDescription:
      return "The screen is titled " + Name(title) + ". It lists " + std::to_string(els.size()) +
             " elements, starting with " + Name(els[1]) + " " + Token(s, els[1]) +
             " and ending with " + Name(last) + " " + Token(s, last) + ".";
    case Task::kFunctionInference:
      return "This screen lets the user review " + Lower(title.Label()) +
             " and confirm the choice with " + Name(last) + " " + Token(s, last) + ".";
    case Task::kConvPerception: {
      // One box is off by a few units and gets snapped back.
      json turns = json::array(
          {{{"role", "user"}, {"text", "What is shown at the top of the screen?"}},
           {{"role", "assistant"},
            {"text", "The title " + Name(title) + " is at " + Token(s, title, 3) + "."}},
           {{"role", "user"}, {"text", "Which element is in the middle?"}},
           {{"role", "assistant"}, {"text", Name(mid) + " at " + Token(s, mid) + "."}}});
      const std::string body = turns.dump();
      return index % 2 == 0 ? "```json\n" + body + "\n```" : body;
    }
    case Task::kConvInteraction: {
      if (index == 1) {
        // Box coordinate beyond the normalized range.
        return "User: How do I continue?\nAssistant: Tap " + Name(last) + " at [12, 40, 1300, 80].";
      }
      if (index == 3) {
        // Answer without a box.
        return "User: How do I continue?\nAssistant: Tap the button at the bottom.";
      }
      return "User: How do I continue?\nAssistant: Tap " + Name(last) + " " + Token(s, last) +
             ".\nUser: What does " + Name(mid) + " do?\nAssistant: It opens " + Name(mid) +
             " " + Token(s, mid) + ".";
    }
    default:
      throw Error(ErrorCode::kUnknownTask, "not an advanced task");
  }
}

json FixtureJson(const std::string& prompt, const std::string& system,
                 const std::string& response) {
  return {{"key", FixtureKey(prompt, system)},
          {"system", system},
          {"prompt", prompt},
          {"response", response}};
}

std::string Degrade(const std::string& text, std::uint64_t h) {
  // Drops the trailing sentence on some predictions.
  if (h % 3 == 0) {
    const auto cut = text.find(". ");
    if (cut != std::string::npos) return text.substr(0, cut + 1);
  }
  return text;
}

int Run(const fs::path& corpus, std::uint64_t seed) {
  const auto screens = GroupScreens(ReadScreensJsonl(corpus / "screens.jsonl"), {});
  const AdvTemplates templates = LoadDefaultAdvTemplates();
  const PromptPool pool = LoadDefaultPromptPool();

  json adv = json::array();
  ReplayClient replay;
  for (Task task : kAdvancedTasks) {
    std::size_t index = 0;
    for (const auto& s : screens) {
      if (!ScreenEligibleAdvanced(s)) continue;
      const auto bundle = BuildPrompt(s, task, templates);
      const std::string reply = Reply(s, task, index++);
      adv.push_back(FixtureJson(bundle.Render(), bundle.system, reply));
      replay.Add(bundle.Render(), bundle.system, reply);
    }
  }
  WriteFile(corpus / "fixtures" / "advgen" / "advgen.json",
            json{{"fixtures", adv}}.dump(2) + "\n");

  // Gold advanced samples, predictions for them and judge replies.
  AdvgenOptions options;
  options.seed = seed;
  std::vector<TaskSample> gold;
  for (Task task : kAdvancedTasks) {
    auto run = RunAdvgen(screens, task, replay, templates, pool, options);
    for (auto& s : run.samples) {
      if (s.turns.size() > 2) {
        for (auto& qa : SampleQaPairs(s, seed, 1)) gold.push_back(std::move(qa));
      } else {
        gold.push_back(std::move(s));
      }
    }
  }
  WriteFile(corpus / "predictions" / "advanced.gold.jsonl", SamplesToJsonl(gold));

  const JudgeRubric rubric = LoadDefaultJudgeRubric();
  std::string preds;
  json judge = json::array();
  std::map<std::string, std::string> predictions;
  for (const auto& s : gold) {
    const std::uint64_t h = Fnv1a64(s.sample_id);
    const std::string pred = Degrade(s.turns.back().text, h);
    predictions[s.sample_id] = pred;
    preds += json{{"sample_id", s.sample_id}, {"prediction", pred}}.dump() + "\n";
  }
  WriteFile(corpus / "predictions" / "advanced.pred.jsonl", preds);
  std::map<std::string, bool> seen;
  for (const auto& r : JoinPredictions(gold, predictions)) {
    const int label_score = 7 + static_cast<int>(Fnv1a64(r.sample_id + "/label") % 4);
    const int pred_score = r.prediction == r.label ? label_score
                                                   : 3 + static_cast<int>(Fnv1a64(r.sample_id) % 6);
    for (const auto& [answer, score] :
         {std::pair{r.label, label_score}, std::pair{r.prediction, pred_score}}) {
      const std::string prompt = JudgePrompt(r.question, answer);
      if (seen[FixtureKey(prompt, rubric.text)]) continue;
      seen[FixtureKey(prompt, rubric.text)] = true;
      const std::string reply = "Score: " + std::to_string(score) + "/10";
      judge.push_back(FixtureJson(prompt, rubric.text, reply));
    }
  }
  WriteFile(corpus / "fixtures" / "judge" / "judge.json",
            json{{"fixtures", judge}}.dump(2) + "\n");
  std::cout << adv.size() << " advgen fixtures, " << gold.size() << " gold samples, "
            << judge.size() << " judge fixtures\n";
  return 0;
}

}  // namespace
}  // namespace uiground

int main(int argc, char** argv) {
  CLI::App app{"Regenerates the synthetic corpus fixtures"};
  std::string corpus;
  std::uint64_t seed = 7;
  app.add_option("corpus", corpus, "Corpus directory")->required();
  app.add_option("--seed", seed, "Advanced generation seed");
  CLI11_PARSE(app, argc, argv);
  try {
    return uiground::Run(corpus, seed);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}
