// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef UIGROUND_TASK_SAMPLE_H_
#define UIGROUND_TASK_SAMPLE_H_

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "uiground/geometry.h"
#include "uiground/screen.h"

namespace uiground {

enum class Task {
  kOcr,
  kIconRecognition,
  kWidgetClassification,
  kWidgetListing,
  kFindText,
  kFindIcon,
  kFindWidget,
  kScreen2Words,
  kWidgetCaptions,
  kTaperception,
  kDetailedDescription,
  kConvPerception,
  kConvInteraction,
  kFunctionInference,
};

inline constexpr std::array<Task, 14> kAllTasks = {
    Task::kOcr,           Task::kIconRecognition, Task::kWidgetClassification,
    Task::kWidgetListing, Task::kFindText,        Task::kFindIcon,
    Task::kFindWidget,    Task::kScreen2Words,    Task::kWidgetCaptions,
    Task::kTaperception,  Task::kDetailedDescription, Task::kConvPerception,
    Task::kConvInteraction, Task::kFunctionInference};

inline constexpr std::array<Task, 7> kElementaryTasks = {
    Task::kOcr,           Task::kIconRecognition, Task::kWidgetClassification,
    Task::kWidgetListing, Task::kFindText,        Task::kFindIcon,
    Task::kFindWidget};

inline constexpr std::array<Task, 4> kAdvancedTasks = {
    Task::kDetailedDescription, Task::kConvPerception, Task::kConvInteraction,
    Task::kFunctionInference};

std::string_view TaskName(Task t);
// Throws kUnknownTask.
Task TaskFromName(std::string_view name);

// Region in the input (user side).
bool IsReferring(Task t);
// Region in the output (assistant side).
bool IsGrounding(Task t);
bool IsAdvanced(Task t);

enum class Role { kUser, kAssistant };
std::string_view RoleName(Role r);
Role RoleFromName(std::string_view name);

struct Turn {
  Role role = Role::kUser;
  std::string text;
  // Every box token in `text`, in order of appearance.
  std::vector<NormBBox> regions;

  friend bool operator==(const Turn&, const Turn&) = default;
};

// Builds a turn whose regions are exactly the tokens found in text.
Turn MakeTurn(Role role, std::string text);

struct TaskSample {
  std::string sample_id;
  Task task = Task::kOcr;
  Platform platform = Platform::kIphone;
  std::string screen_id;
  Split split = Split::kTrain;
  std::optional<std::string> image;
  std::vector<Turn> turns;

  friend bool operator==(const TaskSample&, const TaskSample&) = default;
};

inline constexpr int kSchemaVersion = 1;

// Checks the region-side rule for referring/grounding tasks and that the
// regions array of every turn matches the tokens embedded in its text.
// Throws kSchema.
void ValidateSample(const TaskSample& s);

nlohmann::json ToJson(const TaskSample& s);
TaskSample SampleFromJson(const nlohmann::json& j);

std::string SamplesToJsonl(const std::vector<TaskSample>& samples);
std::vector<TaskSample> ReadSamplesJsonl(const std::filesystem::path& path);

}  // namespace uiground

#endif  // UIGROUND_TASK_SAMPLE_H_
