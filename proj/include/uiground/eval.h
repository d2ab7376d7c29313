// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef UIGROUND_EVAL_H_
#define UIGROUND_EVAL_H_

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "uiground/cider.h"
#include "uiground/geometry.h"
#include "uiground/llm_client.h"
#include "uiground/parallel.h"
#include "uiground/screen.h"
#include "uiground/som.h"
#include "uiground/task_sample.h"

namespace uiground {

inline constexpr double kDefaultIouThreshold = 0.5;

struct JudgeScores {
  double pred = 0.0;
  double label = 0.0;
};

struct EvalRecord {
  std::string sample_id;
  Task task = Task::kOcr;
  Platform platform = Platform::kIphone;
  std::string screen_id;
  std::string question;
  std::string prediction;
  std::string label;
  std::optional<std::vector<NormBBox>> pred_regions;
  std::optional<std::vector<NormBBox>> label_regions;
  std::optional<JudgeScores> judge;
};

// 1 iff the strings match after trimming surrounding whitespace.
int ExactMatch(std::string_view pred, std::string_view label);

// Fraction of records whose canonical UI types agree. Throws kEmptyInput.
double ClassAccuracy(std::span<const EvalRecord> records);

// Strict IoU > threshold against the single label region. Predictions
// without exactly one parsable box count as wrong. Throws kMissingBBox.
bool GroundingCorrect(const EvalRecord& r, double iou_threshold = kDefaultIouThreshold);
double GroundingAccuracy(std::span<const EvalRecord> records,
                         double iou_threshold = kDefaultIouThreshold,
                         Exec exec = Exec::kParallel);

// F1 of the positive class; 0 when precision + recall is 0.
double F1Binary(std::span<const bool> preds, std::span<const bool> labels);

// True for answers opening with "yes" (after trimming), case-insensitive.
bool ParseYesNo(std::string_view answer);

// F1 of one-to-one box matches at IoU > threshold.
double BoxSetF1(std::span<const NormBBox> preds, std::span<const NormBBox> labels,
                double iou_threshold = kDefaultIouThreshold);

// 100 * pred / label. Throws kDegenerateLabel for label <= 0.
double JudgeScoreRatio(double pred_score, double label_score);

// First number before a '/', else the first number. Throws kJudgeParse.
double ParseJudgeScore(std::string_view reply);

struct JudgeRubric {
  std::string version;
  std::string text;
};

JudgeRubric LoadJudgeRubric(const std::filesystem::path& path);
JudgeRubric LoadDefaultJudgeRubric();

std::string JudgePrompt(std::string_view question, std::string_view answer);

// Scores the label and the prediction in two separate requests.
JudgeScores JudgeWithLlm(const EvalRecord& record, LlmClient& client,
                         const JudgeRubric& rubric);

struct JudgeSummary {
  int judged = 0;
  // Records whose judge reply could not be parsed; they keep no scores.
  std::vector<std::pair<std::string, std::string>> excluded;
};

// Attaches judge scores to every advanced-task record.
JudgeSummary JudgeRecords(std::vector<EvalRecord>& records, LlmClient& client,
                          const JudgeRubric& rubric, int max_in_flight = 4);

// Builds one record per prediction, joined on sample_id against the gold
// samples. Predictions without gold are rejected with kSchema. When a label
// map is given for a screen, bare numeric answers to grounding tasks are
// resolved through it.
std::vector<EvalRecord> JoinPredictions(
    std::span<const TaskSample> gold, const std::map<std::string, std::string>& predictions,
    const std::map<std::string, SomLabelMap>& som_maps = {});

std::map<std::string, std::string> ReadPredictionsJsonl(const std::filesystem::path& path);

struct MetricRow {
  Platform platform = Platform::kIphone;
  Task task = Task::kOcr;
  std::string metric;
  // Display scale: percentages, CIDEr x100 and judge ratios in percent.
  double value = 0.0;
  std::size_t n = 0;
};

struct AggregateRow {
  std::string name;
  Platform platform = Platform::kIphone;
  double value = 0.0;
  std::vector<Task> tasks;
  std::size_t n = 0;
};

struct MetricReport {
  std::string cider_variant;
  double iou_threshold = kDefaultIouThreshold;
  std::vector<MetricRow> rows;
  std::vector<AggregateRow> aggregates;
  // Advanced-task records without judge scores.
  std::size_t unjudged = 0;

  const MetricRow* Find(Platform platform, Task task) const;
  const AggregateRow* FindAggregate(std::string_view name) const;
  nlohmann::json ToJson() const;
  std::string Table() const;
};

struct EvalOptions {
  double iou_threshold = kDefaultIouThreshold;
  CiderOptions cider;
  Exec exec = Exec::kParallel;
};

std::string_view MetricName(Task task);

// Per-(platform, task) metrics plus Ref/Grd/Adv averages per platform and
// the Spotlight columns. Widget listing is reported but never averaged.
MetricReport Aggregate(std::span<const EvalRecord> records, const EvalOptions& options = {});

}  // namespace uiground

#endif  // UIGROUND_EVAL_H_
