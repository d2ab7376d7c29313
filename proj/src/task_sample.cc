// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#include "uiground/task_sample.h"

#include "uiground/error.h"

namespace uiground {

namespace {

using nlohmann::json;

json RegionsToJson(const std::vector<NormBBox>& regions) {
  json out = json::array();
  for (const auto& r : regions) out.push_back({r.x1, r.y1, r.x2, r.y2});
  return out;
}

}  // namespace

std::string_view TaskName(Task t) {
  switch (t) {
    case Task::kOcr: return "ocr";
    case Task::kIconRecognition: return "icon_recognition";
    case Task::kWidgetClassification: return "widget_classification";
    case Task::kWidgetListing: return "widget_listing";
    case Task::kFindText: return "find_text";
    case Task::kFindIcon: return "find_icon";
    case Task::kFindWidget: return "find_widget";
    case Task::kScreen2Words: return "screen2words";
    case Task::kWidgetCaptions: return "widget_captions";
    case Task::kTaperception: return "taperception";
    case Task::kDetailedDescription: return "detailed_description";
    case Task::kConvPerception: return "conv_perception";
    case Task::kConvInteraction: return "conv_interaction";
    case Task::kFunctionInference: return "function_inference";
  }
  return "";
}

Task TaskFromName(std::string_view name) {
  for (Task t : kAllTasks) {
    if (TaskName(t) == name) return t;
  }
  throw Error(ErrorCode::kUnknownTask, "unknown task '" + std::string(name) + "'");
}

bool IsReferring(Task t) {
  return t == Task::kOcr || t == Task::kIconRecognition ||
         t == Task::kWidgetClassification || t == Task::kWidgetCaptions ||
         t == Task::kTaperception;
}

bool IsGrounding(Task t) {
  return t == Task::kWidgetListing || t == Task::kFindText ||
         t == Task::kFindIcon || t == Task::kFindWidget;
}

bool IsAdvanced(Task t) {
  return t == Task::kDetailedDescription || t == Task::kConvPerception ||
         t == Task::kConvInteraction || t == Task::kFunctionInference;
}

std::string_view RoleName(Role r) { return r == Role::kUser ? "user" : "assistant"; }

Role RoleFromName(std::string_view name) {
  if (name == "user") return Role::kUser;
  if (name == "assistant") return Role::kAssistant;
  throw Error(ErrorCode::kSchema, "unknown role '" + std::string(name) + "'");
}

Turn MakeTurn(Role role, std::string text) {
  Turn turn{role, std::move(text), {}};
  for (const auto& m : ExtractBBoxTokens(turn.text)) turn.regions.push_back(m.box);
  return turn;
}

void ValidateSample(const TaskSample& s) {
  bool user_region = false;
  bool assistant_region = false;
  for (const auto& turn : s.turns) {
    std::vector<NormBBox> embedded;
    for (const auto& m : ExtractBBoxTokens(turn.text)) embedded.push_back(m.box);
    if (embedded != turn.regions) {
      throw Error(ErrorCode::kSchema,
                  s.sample_id + ": regions do not match the tokens in the text");
    }
    (turn.role == Role::kUser ? user_region : assistant_region) |= !turn.regions.empty();
  }
  if (IsReferring(s.task) && !user_region) {
    throw Error(ErrorCode::kSchema, s.sample_id + ": referring sample without an input region");
  }
  if (IsReferring(s.task) && assistant_region) {
    throw Error(ErrorCode::kSchema, s.sample_id + ": referring sample with an output region");
  }
  if (IsGrounding(s.task) && !assistant_region) {
    throw Error(ErrorCode::kSchema, s.sample_id + ": grounding sample without an output region");
  }
}

json ToJson(const TaskSample& s) {
  json turns = json::array();
  for (const auto& t : s.turns) {
    turns.push_back({{"role", RoleName(t.role)},
                     {"text", t.text},
                     {"regions", RegionsToJson(t.regions)}});
  }
  json j = {{"schema_version", kSchemaVersion},
            {"sample_id", s.sample_id},
            {"task", TaskName(s.task)},
            {"platform", PlatformName(s.platform)},
            {"screen_id", s.screen_id},
            {"split", SplitName(s.split)},
            {"turns", std::move(turns)}};
  if (s.image) j["image"] = *s.image;
  return j;
}

TaskSample SampleFromJson(const json& j) {
  TaskSample s;
  try {
    s.sample_id = j.at("sample_id").get<std::string>();
    s.task = TaskFromName(j.at("task").get<std::string>());
    s.platform = PlatformFromName(j.value("platform", "iphone"));
    s.screen_id = j.value("screen_id", "");
    s.split = SplitFromName(j.value("split", "train"));
    if (j.contains("image") && !j["image"].is_null()) s.image = j["image"].get<std::string>();
    for (const auto& t : j.at("turns")) {
      Turn turn{RoleFromName(t.at("role").get<std::string>()),
                t.at("text").get<std::string>(),
                {}};
      if (t.contains("regions")) {
        for (const auto& r : t["regions"]) {
          NormBBox n{r.at(0).get<int>(), r.at(1).get<int>(), r.at(2).get<int>(),
                     r.at(3).get<int>()};
          ValidateNormBBox(n);
          turn.regions.push_back(n);
        }
      }
      s.turns.push_back(std::move(turn));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSchema, e.what());
  }
  return s;
}

std::string SamplesToJsonl(const std::vector<TaskSample>& samples) {
  std::string out;
  for (const auto& s : samples) {
    out += ToJson(s).dump();
    out += '\n';
  }
  return out;
}

std::vector<TaskSample> ReadSamplesJsonl(const std::filesystem::path& path) {
  std::vector<TaskSample> out;
  for (const auto& row : ReadJsonl(path)) out.push_back(SampleFromJson(row));
  return out;
}

}  // namespace uiground
