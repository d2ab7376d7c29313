// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef UIGROUND_PROMPT_POOL_H_
#define UIGROUND_PROMPT_POOL_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "uiground/task_sample.h"

namespace uiground {

// Region placeholder in referring prompts.
inline constexpr std::string_view kBBoxPlaceholder = "[bbox]";
// Target placeholder in find_* prompts.
inline constexpr std::string_view kTargetPlaceholder = "{target}";

// Versioned instruction paraphrases per task; index 0 is the base prompt.
struct PromptPool {
  std::string version;
  std::map<Task, std::vector<std::string>> prompts;

  // Throws kUnknownTask when the pool has nothing for the task.
  const std::vector<std::string>& For(Task task) const;
};

// Root of the shipped assets: $UIGROUND_ASSETS if set, else the source
// tree's assets/ directory.
std::filesystem::path AssetDir();

PromptPool PromptPoolFromJson(const nlohmann::json& j);
PromptPool LoadPromptPool(const std::filesystem::path& path);
PromptPool LoadDefaultPromptPool();

// Picks one paraphrase by hashing (task, screen_id, element_id, seed); the
// same inputs always select the same prompt.
std::size_t PromptIndex(const PromptPool& pool, Task task,
                        std::string_view screen_id,
                        std::string_view element_id, std::uint64_t seed);
std::string ExpandPrompt(const PromptPool& pool, Task task,
                         std::string_view screen_id,
                         std::string_view element_id, std::uint64_t seed);

// Replaces every occurrence of `from` with `to`.
std::string ReplaceAll(std::string text, std::string_view from,
                       std::string_view to);

}  // namespace uiground

#endif  // UIGROUND_PROMPT_POOL_H_
