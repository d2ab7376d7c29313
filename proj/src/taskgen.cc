// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#include "uiground/taskgen.h"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <sstream>

#include "uiground/error.h"
#include "uiground/grouping.h"
#include "uiground/hashing.h"

namespace uiground {

namespace {

std::vector<std::string> WhitespaceTokens(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

std::size_t CodePoints(std::string_view s) {
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) {
    return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
  }));
}

std::string Lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string RegionToken(const ScreenAnnotation& screen, const UIElement& e) {
  return BBoxToToken(NormalizeBBox(e.bbox, screen.width, screen.height));
}

std::string SampleId(const ScreenAnnotation& screen, Task task, std::string_view element_id) {
  std::string id = std::string(PlatformName(screen.platform)) + "-" +
                   std::string(TaskName(task)) + "-" + screen.screen_id;
  if (!element_id.empty()) id += "-" + std::string(element_id);
  return id;
}

TaskSample Skeleton(const ScreenAnnotation& screen, Task task, std::string_view element_id) {
  TaskSample s;
  s.sample_id = SampleId(screen, task, element_id);
  s.task = task;
  s.platform = screen.platform;
  s.screen_id = screen.screen_id;
  s.split = screen.split;
  s.image = screen.image_path;
  return s;
}

bool HasText(const UIElement& e) { return e.text && !e.text->empty(); }

[[noreturn]] void Ineligible(const ScreenAnnotation& screen, const UIElement& e, Task task) {
  throw Error(ErrorCode::kIneligible, screen.screen_id + "/" + e.id + " is not eligible for " +
                                          std::string(TaskName(task)));
}

std::uint64_t CapSeed(std::uint64_t seed, Task task) {
  return DeriveSeed(seed, "cap/" + std::string(TaskName(task)));
}

}  // namespace

bool EligibleOcr(const UIElement& e) {
  if (!e.text) return false;
  const auto tokens = WhitespaceTokens(*e.text);
  if (tokens.empty() || tokens.size() >= 10) return false;
  if (tokens.size() == 1) return CodePoints(tokens[0]) >= 2;
  return true;
}

bool IsClassifiableWidget(const UIElement& e) {
  return e.type.kind != UiKind::kIcon && e.type.kind != UiKind::kText;
}

bool EligibleFindTarget(const UIElement& e, const ScreenAnnotation& screen, FindKind kind) {
  switch (kind) {
    case FindKind::kText:
      if (e.type.kind != UiKind::kText || !HasText(e)) return false;
      break;
    case FindKind::kIcon:
      if (e.type.kind != UiKind::kIcon || e.Label().empty()) return false;
      break;
    case FindKind::kWidget:
      if (!IsClassifiableWidget(e)) return false;
      break;
  }
  for (const auto& other : screen.elements) {
    if (other.id == e.id) continue;
    bool same = false;
    switch (kind) {
      case FindKind::kText:
        same = other.text == e.text;
        break;
      case FindKind::kIcon:
        same = other.type.kind == UiKind::kIcon && other.Label() == e.Label();
        break;
      case FindKind::kWidget:
        same = other.type == e.type && other.text.value_or("") == e.text.value_or("");
        break;
    }
    if (same) return false;
  }
  return true;
}

bool EligibleFor(Task task, const UIElement& e, const ScreenAnnotation& screen) {
  switch (task) {
    case Task::kOcr:
      return e.type.kind == UiKind::kText && EligibleOcr(e);
    case Task::kIconRecognition:
      return e.type.kind == UiKind::kIcon && !e.Label().empty();
    case Task::kWidgetClassification:
      return IsClassifiableWidget(e);
    case Task::kFindText:
      return EligibleFindTarget(e, screen, FindKind::kText);
    case Task::kFindIcon:
      return EligibleFindTarget(e, screen, FindKind::kIcon);
    case Task::kFindWidget:
      return EligibleFindTarget(e, screen, FindKind::kWidget);
    default:
      return false;
  }
}

TaskSample GenReferringSample(const ScreenAnnotation& screen, const UIElement& e, Task task,
                              const PromptPool& pool, std::uint64_t seed) {
  if (task != Task::kOcr && task != Task::kIconRecognition &&
      task != Task::kWidgetClassification) {
    throw Error(ErrorCode::kUnknownTask, std::string(TaskName(task)) + " is not a referring task");
  }
  if (!EligibleFor(task, e, screen)) Ineligible(screen, e, task);
  std::string answer;
  switch (task) {
    case Task::kOcr: answer = *e.text; break;
    case Task::kIconRecognition: answer = e.Label(); break;
    default: answer = e.type.Name(); break;
  }
  const std::string prompt = ReplaceAll(
      ExpandPrompt(pool, task, screen.screen_id, e.id, seed), kBBoxPlaceholder,
      RegionToken(screen, e));
  TaskSample s = Skeleton(screen, task, e.id);
  s.turns = {MakeTurn(Role::kUser, prompt), Turn{Role::kAssistant, answer, {}}};
  return s;
}

std::string WidgetDescription(const UIElement& e) {
  if (HasText(e)) return Lower(*e.text + " " + e.type.Name());
  return Lower(e.type.Name());
}

TaskSample GenGroundingSample(const ScreenAnnotation& screen, const UIElement& e, Task task,
                              const PromptPool& pool, std::uint64_t seed) {
  std::string target;
  switch (task) {
    case Task::kFindText: target = e.text.value_or(""); break;
    case Task::kFindIcon: target = e.Label(); break;
    case Task::kFindWidget: target = WidgetDescription(e); break;
    default:
      throw Error(ErrorCode::kUnknownTask,
                  std::string(TaskName(task)) + " is not a single-target grounding task");
  }
  if (!EligibleFor(task, e, screen)) Ineligible(screen, e, task);
  const std::string prompt = ReplaceAll(
      ExpandPrompt(pool, task, screen.screen_id, e.id, seed), kTargetPlaceholder, target);
  TaskSample s = Skeleton(screen, task, e.id);
  s.turns = {MakeTurn(Role::kUser, prompt),
             MakeTurn(Role::kAssistant, RegionToken(screen, e))};
  return s;
}

TaskSample GenWidgetListing(const ScreenAnnotation& screen, const PromptPool& pool,
                            std::uint64_t seed) {
  if (screen.elements.empty()) {
    throw Error(ErrorCode::kEmptyScreen, screen.screen_id + " has no elements");
  }
  std::vector<UIElement> ordered = screen.elements;
  SortReadingOrder(ordered);
  std::string answer(kWidgetListingPrefix);
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    const auto& e = ordered[i];
    std::string item;
    if (e.type.kind == UiKind::kText) {
      item = "Text displaying " + e.text.value_or("");
    } else if (const auto label = e.Label(); !label.empty()) {
      item = label + " " + e.type.Name();
    } else {
      item = e.type.Name();
    }
    answer += (i == 0 ? " " : ", ") + item + " " + RegionToken(screen, e);
  }
  TaskSample s = Skeleton(screen, Task::kWidgetListing, "");
  s.turns = {MakeTurn(Role::kUser,
                      ExpandPrompt(pool, Task::kWidgetListing, screen.screen_id, "", seed)),
             MakeTurn(Role::kAssistant, answer)};
  return s;
}

std::string CanonicalTapAnswer(const nlohmann::json& raw) {
  if (raw.is_boolean()) return raw.get<bool>() ? "Yes." : "No.";
  if (raw.is_number_integer()) return raw.get<int>() != 0 ? "Yes." : "No.";
  if (raw.is_string()) {
    std::string s = Lower(raw.get<std::string>());
    while (!s.empty() && (std::isspace(static_cast<unsigned char>(s.back())) || s.back() == '.')) {
      s.pop_back();
    }
    const auto first = s.find_first_not_of(" \t");
    s = first == std::string::npos ? "" : s.substr(first);
    if (s == "yes" || s == "true" || s == "1" || s == "tappable") return "Yes.";
    if (s == "no" || s == "false" || s == "0" || s == "not tappable" || s == "untappable") {
      return "No.";
    }
  }
  throw Error(ErrorCode::kSchema, "unrecognized taperception label " + raw.dump());
}

SpotlightRecord SpotlightFromJson(const nlohmann::json& j) {
  SpotlightRecord r;
  try {
    r.record_id = j.at("record_id").get<std::string>();
    r.task = TaskFromName(j.at("task").get<std::string>());
    if (r.task != Task::kScreen2Words && r.task != Task::kWidgetCaptions &&
        r.task != Task::kTaperception) {
      throw Error(ErrorCode::kUnknownTask, r.record_id + ": not a public benchmark task");
    }
    r.screen_id = j.value("screen_id", r.record_id);
    r.image = j.value("image", "");
    r.width = j.value("width", 0);
    r.height = j.value("height", 0);
    if (j.contains("bbox") && !j["bbox"].is_null()) r.bbox = BBoxFromJson(j["bbox"]);
    r.answer = r.task == Task::kTaperception ? CanonicalTapAnswer(j.at("answer"))
                                             : j.at("answer").get<std::string>();
    r.split = SplitFromName(j.value("split", "train"));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchema, e.what());
  }
  return r;
}

std::vector<SpotlightRecord> ReadSpotlightJsonl(const std::filesystem::path& path) {
  std::vector<SpotlightRecord> out;
  for (const auto& row : ReadJsonl(path)) out.push_back(SpotlightFromJson(row));
  return out;
}

TaskSample ReformatSpotlight(const SpotlightRecord& record, const PromptPool& pool,
                             std::uint64_t seed) {
  std::string prompt = ExpandPrompt(pool, record.task, record.screen_id, record.record_id, seed);
  if (record.task != Task::kScreen2Words) {
    if (!record.bbox) {
      throw Error(ErrorCode::kMissingBBox,
                  record.record_id + ": " + std::string(TaskName(record.task)) + " needs a bbox");
    }
    const auto norm = NormalizeBBox(*record.bbox, record.width, record.height);
    prompt = ReplaceAll(prompt, kBBoxPlaceholder, BBoxToToken(norm));
  }
  TaskSample s;
  s.sample_id = "android-" + std::string(TaskName(record.task)) + "-" + record.record_id;
  s.task = record.task;
  s.platform = Platform::kAndroid;
  s.screen_id = record.screen_id;
  s.split = record.split;
  if (!record.image.empty()) s.image = record.image;
  const std::string answer =
      record.task == Task::kTaperception ? CanonicalTapAnswer(record.answer) : record.answer;
  s.turns = {MakeTurn(Role::kUser, prompt), Turn{Role::kAssistant, answer, {}}};
  return s;
}

std::vector<TaskSample> CapTestSet(std::vector<TaskSample> samples, Task task,
                                   std::uint64_t seed, std::size_t cap) {
  if (samples.size() <= cap) return samples;
  auto order = ShuffledIndices(samples.size(), CapSeed(seed, task));
  order.resize(cap);
  std::sort(order.begin(), order.end());
  std::vector<TaskSample> kept;
  kept.reserve(cap);
  for (auto i : order) kept.push_back(std::move(samples[i]));
  return kept;
}

std::size_t ElementaryDataset::Count(Split split, Task task) const {
  const auto it = buckets.find({split, task});
  return it == buckets.end() ? 0 : it->second.size();
}

std::vector<TaskSample> GenerateForScreen(const ScreenAnnotation& screen,
                                          const PromptPool& pool, std::uint64_t seed) {
  std::vector<TaskSample> out;
  if (screen.elements.empty()) return out;
  std::vector<UIElement> ordered = screen.elements;
  SortReadingOrder(ordered);
  out.push_back(GenWidgetListing(screen, pool, seed));
  for (Task task : {Task::kOcr, Task::kIconRecognition, Task::kWidgetClassification}) {
    for (const auto& e : ordered) {
      if (EligibleFor(task, e, screen)) out.push_back(GenReferringSample(screen, e, task, pool, seed));
    }
  }
  for (Task task : {Task::kFindText, Task::kFindIcon, Task::kFindWidget}) {
    for (const auto& e : ordered) {
      if (EligibleFor(task, e, screen)) out.push_back(GenGroundingSample(screen, e, task, pool, seed));
    }
  }
  return out;
}

ElementaryDataset GenerateElementary(std::span<const ScreenAnnotation> screens,
                                     const PromptPool& pool, std::uint64_t seed, Exec exec) {
  std::vector<std::vector<TaskSample>> per_screen(screens.size());
  const auto n = static_cast<std::int64_t>(screens.size());
  if (exec == Exec::kSerial) {
    for (std::int64_t i = 0; i < n; ++i) per_screen[i] = GenerateForScreen(screens[i], pool, seed);
  } else {
    std::optional<Error> failure;
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i) {
      try {
        per_screen[i] = GenerateForScreen(screens[i], pool, seed);
      } catch (const Error& e) {
#pragma omp critical(uiground_taskgen)
        if (!failure) failure = e;
      }
    }
    if (failure) throw *failure;
  }

  ElementaryDataset dataset;
  for (auto& samples : per_screen) {
    for (auto& s : samples) dataset.buckets[{s.split, s.task}].push_back(std::move(s));
  }
  for (auto& [key, samples] : dataset.buckets) {
    if (key.first == Split::kTest) samples = CapTestSet(std::move(samples), key.second, seed);
  }
  return dataset;
}

std::vector<std::filesystem::path> WriteElementaryDataset(const ElementaryDataset& dataset,
                                                          const std::filesystem::path& dir,
                                                          std::span<const Split> splits) {
  std::vector<std::filesystem::path> written;
  for (Split split : splits) {
    for (Task task : kElementaryTasks) {
      const auto path =
          dir / (std::string(TaskName(task)) + "." + std::string(SplitName(split)) + ".jsonl");
      const auto it = dataset.buckets.find({split, task});
      WriteFile(path, it == dataset.buckets.end() ? "" : SamplesToJsonl(it->second));
      written.push_back(path);
    }
  }
  return written;
}

}  // namespace uiground
