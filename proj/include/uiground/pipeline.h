// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef UIGROUND_PIPELINE_H_
#define UIGROUND_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "uiground/grouping.h"
#include "uiground/mixstats.h"
#include "uiground/screen.h"
#include "uiground/som.h"
#include "uiground/task_sample.h"

namespace uiground {

struct IngestReject {
  std::string source;  // "file" or "file:line"
  std::string reason;
};

struct IngestResult {
  std::vector<ScreenAnnotation> screens;
  std::vector<IngestReject> rejects;

  nlohmann::json RejectsJson() const;
};

// Reads detector output: *.jsonl holds one screen per line, any other file
// one screen object or an array of them. Directories are expanded to their
// *.json and *.jsonl files in name order. Invalid screens are itemized in
// rejects and skipped.
IngestResult Ingest(std::span<const std::filesystem::path> inputs);

struct RunConfig {
  std::uint64_t seed = 0;
  std::filesystem::path annotations;
  std::optional<std::filesystem::path> images;
  std::filesystem::path output;
  std::optional<std::filesystem::path> prompt_pool;
  std::optional<std::filesystem::path> templates;
  std::optional<std::filesystem::path> spotlight;
  std::optional<std::filesystem::path> fixtures;
  std::vector<Task> advanced_tasks;
  std::vector<Platform> platforms = {Platform::kIphone, Platform::kAndroid};
  GroupingConfig grouping;
  int base_resolution = 336;
  double iou_threshold = 0.5;
  bool partition = false;
  bool som = false;
  SomStyle som_style;
  // Pool paths resolve against the output directory.
  std::optional<std::filesystem::path> mixture;
  RoleFilter stats_role = RoleFilter::kBoth;
  std::size_t stats_top_k = 20;
  int max_in_flight = 4;

  // The config as written, minus "output"; embedded in the manifest.
  nlohmann::json source;
};

// Relative paths resolve against base_dir. Throws kConfig.
RunConfig RunConfigFromJson(const nlohmann::json& j, const std::filesystem::path& base_dir);
RunConfig LoadRunConfig(const std::filesystem::path& path);

class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct PipelineResult {
  bool ok = true;
  std::string failed_stage;
  std::string error;
  std::filesystem::path manifest_path;
  std::string manifest_sha256;
  std::vector<std::string> files;
};

// Runs ingest, group, taskgen, spotlight, advgen, partition, som, mix and
// stats, then writes manifest.json with every output and its SHA-256. On a
// stage failure the manifest is written with status FAILED, a FAILED marker
// file names the stage, and the partial outputs are kept.
PipelineResult RunPipeline(const RunConfig& config);

// SHA-256 of every regular file under dir, keyed by relative path.
std::vector<std::pair<std::string, std::string>> HashTree(const std::filesystem::path& dir);

}  // namespace uiground

#endif  // UIGROUND_PIPELINE_H_
