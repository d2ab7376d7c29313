// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef UIGROUND_ADVGEN_H_
#define UIGROUND_ADVGEN_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "uiground/llm_client.h"
#include "uiground/prompt_pool.h"
#include "uiground/screen.h"
#include "uiground/task_sample.h"

namespace uiground {

// Prompt text for the four advanced tasks, loaded from a versioned asset
// directory.
struct AdvTemplates {
  std::string version;
  std::string system;
  std::map<Task, std::string> base_prompts;
  std::map<Task, std::string> one_shots;
  std::string conversation_format;
  std::string text_format;
};

AdvTemplates LoadAdvTemplates(const std::filesystem::path& dir);
AdvTemplates LoadDefaultAdvTemplates();

// Everything sent to the LLM for one screen. Never carries image data.
struct AdvPromptBundle {
  Task task = Task::kDetailedDescription;
  std::string system;
  std::string base_prompt;
  // One "{type} {label} [x1, y1, x2, y2]" line per element, reading order.
  std::string detections_block;
  std::optional<std::string> one_shot;
  std::string format_suffix;

  std::string Render() const;
};

// 2 < element count < 15.
bool ScreenEligibleAdvanced(const ScreenAnnotation& screen);

std::string DetectionsBlock(const ScreenAnnotation& screen);

// Throws kIneligible for screens outside the element-count window and
// kUnknownTask for non-advanced tasks.
AdvPromptBundle BuildPrompt(const ScreenAnnotation& screen, Task task,
                            const AdvTemplates& templates);

inline constexpr int kDefaultSnapTolerance = 20;

struct ParseOptions {
  // Boxes within this many normalized units of a detection on every edge
  // are replaced by the detection's box; 0 disables snapping.
  int snap_tolerance = kDefaultSnapTolerance;
};

struct ParsedConversation {
  std::vector<Turn> turns;
  bool valid = true;
  std::string invalid_reason;
};

// Turns a raw LLM reply into structured turns.
//
// Conversation tasks accept a JSON array of {role, text} objects (optionally
// inside a ``` fence) or "User:"/"Assistant:" prefixed lines. Description
// and inference replies become a single assistant turn. Box tokens are
// extracted and snapped to nearby detections.
//
// Throws kEmptyConversation for a blank reply, kFormat for an unusable
// speaker structure and the token error (kOutOfRange, kInvertedCoordinates)
// for a bad box, naming the turn. An interaction conversation with an
// answer that carries no box is returned with valid = false.
ParsedConversation ParseConversation(const std::string& raw, Task task,
                                     const ScreenAnnotation& screen,
                                     const ParseOptions& options = {});

// JSON array text accepted back by ParseConversation.
std::string ConversationToJson(const std::vector<Turn>& turns);

struct GenerationReport {
  Task task = Task::kDetailedDescription;
  std::string client;
  std::string templates_version;
  int eligible = 0;
  int sent = 0;
  int parsed = 0;
  std::map<std::string, int> dropped;
  // (screen_id, message) for transport failures.
  std::vector<std::pair<std::string, std::string>> failures;

  int DroppedTotal() const;
  nlohmann::json ToJson() const;
};

struct AdvgenOptions {
  std::uint64_t seed = 0;
  int max_in_flight = 4;
  ParseOptions parse;
};

struct AdvgenResult {
  std::vector<TaskSample> samples;
  GenerationReport report;
};

// Builds, sends and parses one prompt per eligible screen. Requests run
// concurrently up to max_in_flight; results are assembled in screen order,
// so replayed runs are byte-identical whatever the concurrency.
AdvgenResult RunAdvgen(std::span<const ScreenAnnotation> screens, Task task,
                       LlmClient& client, const AdvTemplates& templates,
                       const PromptPool& pool, const AdvgenOptions& options);

// Splits a conversation into test instances with one question each,
// keeping `pairs` seeded-random (question, answer) rounds.
std::vector<TaskSample> SampleQaPairs(const TaskSample& conversation,
                                      std::uint64_t seed, std::size_t pairs = 2);

}  // namespace uiground

#endif  // UIGROUND_ADVGEN_H_
