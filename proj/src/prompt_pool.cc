// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#include "uiground/prompt_pool.h"

#include <cstdlib>

#include "uiground/error.h"
#include "uiground/hashing.h"

namespace uiground {

const std::vector<std::string>& PromptPool::For(Task task) const {
  const auto it = prompts.find(task);
  if (it == prompts.end() || it->second.empty()) {
    throw Error(ErrorCode::kUnknownTask,
                "prompt pool " + version + " has no prompts for " +
                    std::string(TaskName(task)));
  }
  return it->second;
}

std::filesystem::path AssetDir() {
  if (const char* env = std::getenv("UIGROUND_ASSETS"); env && *env) return env;
  return UIGROUND_ASSET_DIR;
}

PromptPool PromptPoolFromJson(const nlohmann::json& j) {
  PromptPool pool;
  try {
    pool.version = j.at("version").get<std::string>();
    for (const auto& [name, list] : j.at("tasks").items()) {
      const Task task = TaskFromName(name);
      auto prompts = list.get<std::vector<std::string>>();
      if (prompts.empty()) {
        throw Error(ErrorCode::kConfig, "empty prompt list for " + name);
      }
      for (const auto& p : prompts) {
        const bool needs_box = IsReferring(task);
        const bool needs_target = task == Task::kFindText ||
                                  task == Task::kFindIcon ||
                                  task == Task::kFindWidget;
        if ((needs_box && p.find(kBBoxPlaceholder) == std::string::npos) ||
            (needs_target && p.find(kTargetPlaceholder) == std::string::npos)) {
          throw Error(ErrorCode::kConfig,
                      "prompt for " + name + " lacks its placeholder: " + p);
        }
      }
      pool.prompts[task] = std::move(prompts);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfig, e.what());
  }
  return pool;
}

PromptPool LoadPromptPool(const std::filesystem::path& path) {
  try {
    return PromptPoolFromJson(nlohmann::json::parse(ReadFile(path)));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kConfig, path.string() + ": " + e.what());
  }
}

PromptPool LoadDefaultPromptPool() {
  return LoadPromptPool(AssetDir() / "prompts" / "pool_v1.json");
}

std::size_t PromptIndex(const PromptPool& pool, Task task,
                        std::string_view screen_id, std::string_view element_id,
                        std::uint64_t seed) {
  const auto& list = pool.For(task);
  const std::string key = std::string(TaskName(task)) + "|" + std::string(screen_id) +
                          "|" + std::string(element_id) + "|" + std::to_string(seed);
  return static_cast<std::size_t>(Fnv1a64(key) % list.size());
}

std::string ExpandPrompt(const PromptPool& pool, Task task,
                         std::string_view screen_id, std::string_view element_id,
                         std::uint64_t seed) {
  return pool.For(task)[PromptIndex(pool, task, screen_id, element_id, seed)];
}

std::string ReplaceAll(std::string text, std::string_view from, std::string_view to) {
  if (from.empty()) return text;
  std::size_t pos = text.find(from);
  while (pos != std::string::npos) {
    text.replace(pos, from.size(), to);
    pos = text.find(from, pos + to.size());
  }
  return text;
}

}  // namespace uiground
