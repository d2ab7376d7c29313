// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#include "uiground/eval.h"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <iomanip>
#include <memory>
#include <regex>
#include <sstream>

#include "uiground/error.h"
#include "uiground/grouping.h"
#include "uiground/prompt_pool.h"

namespace uiground {

namespace {

using nlohmann::json;

std::string_view Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string Lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool SameClass(std::string_view pred, std::string_view label) {
  auto clean = [](std::string_view s) {
    s = Trim(s);
    while (!s.empty() && s.back() == '.') s.remove_suffix(1);
    UiType t = CanonicalizeType(s);
    t.other_name = Lower(Trim(t.other_name));
    return t;
  };
  return clean(pred) == clean(label);
}

std::optional<std::vector<NormBBox>> RegionsOf(std::string_view text) {
  try {
    std::vector<NormBBox> out;
    for (const auto& m : ExtractBBoxTokens(text)) out.push_back(m.box);
    return out;
  } catch (const Error&) {
    return std::nullopt;
  }
}

double NormIou(const NormBBox& a, const NormBBox& b) {
  return Iou({double(a.x1), double(a.y1), double(a.x2), double(a.y2)},
             {double(b.x1), double(b.y1), double(b.x2), double(b.y2)});
}

double Mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

std::string FormatValue(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << v;
  return os.str();
}

const std::vector<Task> kRefTasks = {Task::kOcr, Task::kIconRecognition,
                                     Task::kWidgetClassification};
const std::vector<Task> kGrdTasks = {Task::kFindText, Task::kFindIcon, Task::kFindWidget};

std::string PlatformSuffix(Platform p) { return p == Platform::kIphone ? "i" : "A"; }

}  // namespace

int ExactMatch(std::string_view pred, std::string_view label) {
  return Trim(pred) == Trim(label) ? 1 : 0;
}

double ClassAccuracy(std::span<const EvalRecord> records) {
  if (records.empty()) throw Error(ErrorCode::kEmptyInput, "class accuracy needs records");
  std::size_t hits = 0;
  for (const auto& r : records) hits += SameClass(r.prediction, r.label) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(records.size());
}

bool GroundingCorrect(const EvalRecord& r, double iou_threshold) {
  if (!r.label_regions || r.label_regions->size() != 1) {
    throw Error(ErrorCode::kMissingBBox, r.sample_id + " needs exactly one label region");
  }
  if (!r.pred_regions || r.pred_regions->size() != 1) return false;
  return NormIou(r.pred_regions->front(), r.label_regions->front()) > iou_threshold;
}

double GroundingAccuracy(std::span<const EvalRecord> records, double iou_threshold, Exec exec) {
  if (records.empty()) throw Error(ErrorCode::kEmptyInput, "grounding accuracy needs records");
  for (const auto& r : records) {
    if (!r.label_regions || r.label_regions->size() != 1) {
      throw Error(ErrorCode::kMissingBBox, r.sample_id + " needs exactly one label region");
    }
  }
  std::vector<std::uint8_t> hit(records.size(), 0);
  const auto n = static_cast<std::int64_t>(records.size());
  if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) hit[i] = GroundingCorrect(records[i], iou_threshold);
  } else {
    for (std::int64_t i = 0; i < n; ++i) hit[i] = GroundingCorrect(records[i], iou_threshold);
  }
  std::size_t hits = 0;
  for (auto h : hit) hits += h;
  return static_cast<double>(hits) / static_cast<double>(records.size());
}

double F1Binary(std::span<const bool> preds, std::span<const bool> labels) {
  if (preds.size() != labels.size()) {
    throw Error(ErrorCode::kLengthMismatch, "predictions and labels differ in length");
  }
  if (preds.empty()) throw Error(ErrorCode::kEmptyInput, "F1 needs at least one pair");
  double tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (preds[i] && labels[i]) ++tp;
    if (preds[i] && !labels[i]) ++fp;
    if (!preds[i] && labels[i]) ++fn;
  }
  const double p = tp + fp > 0 ? tp / (tp + fp) : 0.0;
  const double r = tp + fn > 0 ? tp / (tp + fn) : 0.0;
  return p + r > 0 ? 2 * p * r / (p + r) : 0.0;
}

bool ParseYesNo(std::string_view answer) { return Lower(Trim(answer)).starts_with("yes"); }

double BoxSetF1(std::span<const NormBBox> preds, std::span<const NormBBox> labels,
                double iou_threshold) {
  if (preds.empty() && labels.empty()) return 1.0;
  if (preds.empty() || labels.empty()) return 0.0;
  std::vector<bool> used(labels.size(), false);
  double matched = 0;
  for (const auto& p : preds) {
    double best = iou_threshold;
    std::optional<std::size_t> best_j;
    for (std::size_t j = 0; j < labels.size(); ++j) {
      if (used[j]) continue;
      const double v = NormIou(p, labels[j]);
      if (v > best) {
        best = v;
        best_j = j;
      }
    }
    if (best_j) {
      used[*best_j] = true;
      ++matched;
    }
  }
  const double precision = matched / static_cast<double>(preds.size());
  const double recall = matched / static_cast<double>(labels.size());
  return precision + recall > 0 ? 2 * precision * recall / (precision + recall) : 0.0;
}

double JudgeScoreRatio(double pred_score, double label_score) {
  if (!(label_score > 0)) {
    throw Error(ErrorCode::kDegenerateLabel, "label score must be positive");
  }
  return 100.0 * pred_score / label_score;
}

double ParseJudgeScore(std::string_view reply) {
  static const std::regex kNumber(R"([-+]?\d+(?:\.\d+)?)");
  const std::string text(reply);
  const auto slash = text.find('/');
  std::smatch m;
  if (slash != std::string::npos) {
    const std::string head = text.substr(0, slash);
    std::string last;
    for (std::sregex_iterator it(head.begin(), head.end(), kNumber), end; it != end; ++it) {
      last = it->str();
    }
    if (!last.empty()) return std::stod(last);
  }
  if (std::regex_search(text, m, kNumber)) return std::stod(m.str());
  throw Error(ErrorCode::kJudgeParse, "no score in judge reply \"" + text + "\"");
}

JudgeRubric LoadJudgeRubric(const std::filesystem::path& path) {
  JudgeRubric r;
  r.version = path.stem().string();
  r.text = std::string(Trim(ReadFile(path)));
  return r;
}

JudgeRubric LoadDefaultJudgeRubric() { return LoadJudgeRubric(AssetDir() / "judge_rubric_v1.txt"); }

std::string JudgePrompt(std::string_view question, std::string_view answer) {
  return "Question:\n" + std::string(question) + "\n\nAnswer:\n" + std::string(answer) +
         "\n\nReply with the score only, in the form \"Score: N/10\".";
}

JudgeScores JudgeWithLlm(const EvalRecord& record, LlmClient& client, const JudgeRubric& rubric) {
  if (!IsAdvanced(record.task)) {
    throw Error(ErrorCode::kUnknownTask, record.sample_id + " is not an advanced-task record");
  }
  JudgeScores s;
  s.label = ParseJudgeScore(client.Send(JudgePrompt(record.question, record.label), rubric.text));
  s.pred =
      ParseJudgeScore(client.Send(JudgePrompt(record.question, record.prediction), rubric.text));
  return s;
}

JudgeSummary JudgeRecords(std::vector<EvalRecord>& records, LlmClient& client,
                          const JudgeRubric& rubric, int max_in_flight) {
  std::vector<std::string> errors(records.size());
  std::vector<std::uint8_t> tried(records.size(), 0);
  const auto n = static_cast<std::int64_t>(records.size());
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, max_in_flight))
  for (std::int64_t i = 0; i < n; ++i) {
    auto& r = records[i];
    if (!IsAdvanced(r.task)) continue;
    tried[i] = 1;
    try {
      r.judge = JudgeWithLlm(r, client, rubric);
    } catch (const Error& e) {
      r.judge.reset();
      errors[i] = e.what();
    }
  }
  JudgeSummary summary;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!tried[i]) continue;
    if (errors[i].empty()) {
      ++summary.judged;
    } else {
      summary.excluded.emplace_back(records[i].sample_id, errors[i]);
    }
  }
  return summary;
}

std::vector<EvalRecord> JoinPredictions(std::span<const TaskSample> gold,
                                        const std::map<std::string, std::string>& predictions,
                                        const std::map<std::string, SomLabelMap>& som_maps) {
  std::map<std::string, const TaskSample*> by_id;
  for (const auto& s : gold) by_id[s.sample_id] = &s;
  std::vector<EvalRecord> out;
  for (const auto& [id, pred] : predictions) {
    const auto it = by_id.find(id);
    if (it == by_id.end()) throw Error(ErrorCode::kSchema, "prediction for unknown sample " + id);
    const TaskSample& s = *it->second;
    const auto last = std::find_if(s.turns.rbegin(), s.turns.rend(),
                                   [](const Turn& t) { return t.role == Role::kAssistant; });
    if (last == s.turns.rend()) throw Error(ErrorCode::kSchema, id + " has no answer turn");
    const auto question = std::find_if(last, s.turns.rend(),
                                       [](const Turn& t) { return t.role == Role::kUser; });
    EvalRecord r;
    r.sample_id = id;
    r.task = s.task;
    r.platform = s.platform;
    r.screen_id = s.screen_id;
    r.question = question == s.turns.rend() ? "" : question->text;
    r.prediction = pred;
    r.label = last->text;
    if (IsGrounding(s.task)) {
      r.label_regions = last->regions;
      r.pred_regions = RegionsOf(pred);
      const auto map = som_maps.find(s.screen_id);
      if (map != som_maps.end() && r.pred_regions && r.pred_regions->empty()) {
        try {
          const auto& entry = ResolveLabelAnswer(pred, map->second);
          r.pred_regions = std::vector<NormBBox>{
              NormalizeBBox(entry.bbox, map->second.image_width, map->second.image_height)};
        } catch (const Error&) {
          // Left without regions; scored as wrong.
        }
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::map<std::string, std::string> ReadPredictionsJsonl(const std::filesystem::path& path) {
  std::map<std::string, std::string> out;
  for (const auto& j : ReadJsonl(path)) {
    try {
      const auto id = j.at("sample_id").get<std::string>();
      if (!out.emplace(id, j.at("prediction").get<std::string>()).second) {
        throw Error(ErrorCode::kSchema, "duplicate prediction for " + id);
      }
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kSchema, std::string("prediction record: ") + e.what());
    }
  }
  return out;
}

std::string_view MetricName(Task task) {
  switch (task) {
    case Task::kOcr: return "exact_match";
    case Task::kIconRecognition:
    case Task::kWidgetClassification: return "accuracy";
    case Task::kWidgetListing: return "box_f1";
    case Task::kFindText:
    case Task::kFindIcon:
    case Task::kFindWidget: return "grounding_accuracy";
    case Task::kScreen2Words:
    case Task::kWidgetCaptions: return "cider";
    case Task::kTaperception: return "f1";
    default: return "judge_ratio";
  }
}

const MetricRow* MetricReport::Find(Platform platform, Task task) const {
  for (const auto& r : rows) {
    if (r.platform == platform && r.task == task) return &r;
  }
  return nullptr;
}

const AggregateRow* MetricReport::FindAggregate(std::string_view name) const {
  for (const auto& a : aggregates) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

MetricReport Aggregate(std::span<const EvalRecord> records, const EvalOptions& options) {
  MetricReport report;
  report.cider_variant = std::string(CiderVariantName(options.cider.variant));
  report.iou_threshold = options.iou_threshold;

  std::map<std::pair<Platform, Task>, std::vector<EvalRecord>> buckets;
  for (const auto& r : records) buckets[{r.platform, r.task}].push_back(r);

  for (const auto& [key, bucket] : buckets) {
    const auto [platform, task] = key;
    MetricRow row{platform, task, std::string(MetricName(task)), 0.0, bucket.size()};
    switch (task) {
      case Task::kOcr: {
        double hits = 0;
        for (const auto& r : bucket) hits += ExactMatch(r.prediction, r.label);
        row.value = 100.0 * hits / static_cast<double>(bucket.size());
        break;
      }
      case Task::kIconRecognition:
      case Task::kWidgetClassification:
        row.value = 100.0 * ClassAccuracy(bucket);
        break;
      case Task::kWidgetListing: {
        std::vector<double> f1;
        for (const auto& r : bucket) {
          const std::vector<NormBBox> none;
          f1.push_back(BoxSetF1(r.pred_regions ? *r.pred_regions : none,
                                r.label_regions ? *r.label_regions : none,
                                options.iou_threshold));
        }
        row.value = 100.0 * Mean(f1);
        break;
      }
      case Task::kFindText:
      case Task::kFindIcon:
      case Task::kFindWidget:
        row.value = 100.0 * GroundingAccuracy(bucket, options.iou_threshold, options.exec);
        break;
      case Task::kScreen2Words:
      case Task::kWidgetCaptions: {
        std::vector<std::string> cands;
        std::vector<std::vector<std::string>> refs;
        for (const auto& r : bucket) {
          cands.push_back(r.prediction);
          refs.push_back({r.label});
        }
        row.value = 100.0 * Cider(cands, refs, options.cider, options.exec).score;
        break;
      }
      case Task::kTaperception: {
        const std::size_t n = bucket.size();
        std::unique_ptr<bool[]> p(new bool[n]), l(new bool[n]);
        for (std::size_t i = 0; i < n; ++i) {
          p[i] = ParseYesNo(bucket[i].prediction);
          l[i] = ParseYesNo(bucket[i].label);
        }
        row.value = 100.0 * F1Binary({p.get(), n}, {l.get(), n});
        break;
      }
      default: {
        // Ratio of mean scores over judged records.
        double pred = 0, label = 0;
        std::size_t judged = 0;
        for (const auto& r : bucket) {
          if (!r.judge) {
            ++report.unjudged;
            continue;
          }
          pred += r.judge->pred;
          label += r.judge->label;
          ++judged;
        }
        if (judged == 0) continue;
        row.value = JudgeScoreRatio(pred / judged, label / judged);
        row.n = judged;
        break;
      }
    }
    report.rows.push_back(std::move(row));
  }

  auto add_group = [&](const std::string& name, Platform platform, const std::vector<Task>& tasks) {
    AggregateRow agg{name, platform, 0.0, {}, 0};
    std::vector<double> values;
    for (Task t : tasks) {
      if (const auto* row = report.Find(platform, t)) {
        values.push_back(row->value);
        agg.tasks.push_back(t);
        agg.n += row->n;
      }
    }
    if (values.empty()) return;
    agg.value = Mean(values);
    report.aggregates.push_back(std::move(agg));
  };
  for (Platform p : {Platform::kIphone, Platform::kAndroid}) {
    add_group("Ref-" + PlatformSuffix(p), p, kRefTasks);
    add_group("Grd-" + PlatformSuffix(p), p, kGrdTasks);
    add_group("Adv-" + PlatformSuffix(p),
              p, std::vector<Task>(kAdvancedTasks.begin(), kAdvancedTasks.end()));
  }
  add_group("S2W", Platform::kAndroid, {Task::kScreen2Words});
  add_group("WiC", Platform::kAndroid, {Task::kWidgetCaptions});
  add_group("TaP", Platform::kAndroid, {Task::kTaperception});
  return report;
}

json MetricReport::ToJson() const {
  json rows_json = json::array();
  for (const auto& r : rows) {
    rows_json.push_back({{"platform", PlatformName(r.platform)},
                         {"task", TaskName(r.task)},
                         {"metric", r.metric},
                         {"value", r.value},
                         {"n", r.n}});
  }
  json aggs = json::array();
  for (const auto& a : aggregates) {
    json tasks = json::array();
    for (Task t : a.tasks) tasks.push_back(TaskName(t));
    aggs.push_back({{"name", a.name},
                    {"platform", PlatformName(a.platform)},
                    {"value", a.value},
                    {"tasks", tasks},
                    {"n", a.n}});
  }
  return {{"schema_version", kSchemaVersion},
          {"cider_variant", cider_variant},
          {"iou_threshold", iou_threshold},
          {"rows", rows_json},
          {"aggregates", aggs},
          {"unjudged", unjudged}};
}

std::string MetricReport::Table() const {
  std::ostringstream os;
  os << std::left << std::setw(9) << "platform" << std::setw(24) << "task" << std::setw(20)
     << "metric" << std::right << std::setw(9) << "value" << std::setw(8) << "n" << "\n";
  for (const auto& r : rows) {
    os << std::left << std::setw(9) << PlatformName(r.platform) << std::setw(24)
       << TaskName(r.task) << std::setw(20) << r.metric << std::right << std::setw(9)
       << FormatValue(r.value) << std::setw(8) << r.n << "\n";
  }
  os << "\n";
  const std::vector<std::string> columns = {"Ref-i", "Ref-A", "Grd-i", "Grd-A", "Adv-i",
                                            "Adv-A", "S2W",   "WiC",   "TaP"};
  for (const auto& c : columns) os << std::right << std::setw(9) << c;
  os << "\n";
  for (const auto& c : columns) {
    const auto* a = FindAggregate(c);
    os << std::right << std::setw(9) << (a ? FormatValue(a->value) : "-");
  }
  os << "\n";
  return os.str();
}

}  // namespace uiground
