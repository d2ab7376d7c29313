// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Exit codes: 0 success, 2 validation failure,
// 3 stage failure.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "uiground/advgen.h"
#include "uiground/anyres.h"
#include "uiground/cider.h"
#include "uiground/error.h"
#include "uiground/eval.h"
#include "uiground/grouping.h"
#include "uiground/image.h"
#include "uiground/llm_client.h"
#include "uiground/mixstats.h"
#include "uiground/parallel.h"
#include "uiground/pipeline.h"
#include "uiground/prompt_pool.h"
#include "uiground/screen.h"
#include "uiground/som.h"
#include "uiground/taskgen.h"
#include "uiground/version.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace uiground {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitStage = 3;

PromptPool PoolFrom(const std::string& path) {
  return path.empty() ? LoadDefaultPromptPool() : LoadPromptPool(path);
}

std::vector<ScreenAnnotation> ReadScreens(const std::vector<std::string>& paths) {
  std::vector<fs::path> in(paths.begin(), paths.end());
  IngestResult r = Ingest(in);
  if (!r.rejects.empty()) {
    throw Error(ErrorCode::kSchema, r.rejects.front().source + ": " + r.rejects.front().reason);
  }
  return std::move(r.screens);
}

std::vector<TaskSample> ReadSamples(const std::vector<std::string>& paths) {
  std::vector<TaskSample> out;
  for (const auto& p : paths) {
    auto part = ReadSamplesJsonl(p);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::unique_ptr<LlmClient> MakeClient(const std::string& fixtures, bool live) {
  if (live) return std::make_unique<HttpLlmClient>(HttpLlmConfig::FromEnv());
  if (fixtures.empty()) {
    throw Error(ErrorCode::kConfig, "either --fixtures or --live is required");
  }
  return std::make_unique<ReplayClient>(fs::path(fixtures));
}

struct IngestArgs {
  std::vector<std::string> inputs;
  std::string out;
  std::string rejects;
};

int RunIngest(const IngestArgs& a) {
  std::vector<fs::path> in(a.inputs.begin(), a.inputs.end());
  const IngestResult r = Ingest(in);
  for (const auto& rej : r.rejects) std::cerr << "reject " << rej.source << ": " << rej.reason << "\n";
  WriteScreensJsonl(a.out, r.screens);
  if (!a.rejects.empty()) WriteFile(a.rejects, r.RejectsJson().dump(2) + "\n");
  std::cout << r.screens.size() << " screens accepted, " << r.rejects.size() << " rejected\n";
  return r.screens.empty() && !r.rejects.empty() ? kExitValidation : kExitOk;
}

struct GroupArgs {
  std::vector<std::string> inputs;
  std::string out;
  GroupingConfig cfg;
};

int RunGroup(const GroupArgs& a) {
  const auto screens = ReadScreens(a.inputs);
  WriteScreensJsonl(a.out, GroupScreens(screens, a.cfg));
  return kExitOk;
}

struct GenArgs {
  std::vector<std::string> inputs;
  std::string out;
  std::string pool;
  std::uint64_t seed = 0;
  // advanced
  std::string task;
  std::string fixtures;
  bool live = false;
  std::string record;
  std::string templates;
  std::string report;
  int max_in_flight = 4;
  int snap = kDefaultSnapTolerance;
  int qa_pairs = 0;
};

int RunGenElementary(const GenArgs& a) {
  const auto screens = ReadScreens(a.inputs);
  const auto dataset = GenerateElementary(screens, PoolFrom(a.pool), a.seed);
  std::set<Split> present;
  for (const auto& s : screens) present.insert(s.split);
  const std::vector<Split> splits(present.begin(), present.end());
  for (const auto& p : WriteElementaryDataset(dataset, a.out, splits)) std::cout << p.string() << "\n";
  return kExitOk;
}

int RunGenAdvanced(const GenArgs& a) {
  const Task task = TaskFromName(a.task);
  const auto screens = ReadScreens(a.inputs);
  auto base = MakeClient(a.fixtures, a.live);
  std::optional<RecordingClient> recorder;
  LlmClient* client = base.get();
  if (!a.record.empty()) client = &recorder.emplace(*base);
  const AdvTemplates templates =
      a.templates.empty() ? LoadDefaultAdvTemplates() : LoadAdvTemplates(a.templates);
  AdvgenOptions options;
  options.seed = a.seed;
  options.max_in_flight = a.max_in_flight;
  options.parse.snap_tolerance = a.snap;
  auto run = RunAdvgen(screens, task, *client, templates, PoolFrom(a.pool), options);
  std::vector<TaskSample> samples = std::move(run.samples);
  if (a.qa_pairs > 0) {
    std::vector<TaskSample> pairs;
    for (const auto& s : samples) {
      auto part = SampleQaPairs(s, a.seed, static_cast<std::size_t>(a.qa_pairs));
      pairs.insert(pairs.end(), part.begin(), part.end());
    }
    samples = std::move(pairs);
  }
  WriteFile(a.out, SamplesToJsonl(samples));
  const std::string report = run.report.ToJson().dump(2) + "\n";
  if (!a.report.empty()) WriteFile(a.report, report);
  std::cout << report;
  if (recorder) recorder->Save(a.record);
  return run.report.failures.empty() ? kExitOk : kExitStage;
}

int RunGenSpotlight(const GenArgs& a) {
  const PromptPool pool = PoolFrom(a.pool);
  std::map<std::pair<Task, Split>, std::vector<TaskSample>> buckets;
  for (const auto& in : a.inputs) {
    for (const auto& r : ReadSpotlightJsonl(in)) {
      buckets[{r.task, r.split}].push_back(ReformatSpotlight(r, pool, a.seed));
    }
  }
  for (auto& [key, bucket] : buckets) {
    if (key.second == Split::kTest) bucket = CapTestSet(std::move(bucket), key.first, a.seed);
    const fs::path path = fs::path(a.out) / (std::string(TaskName(key.first)) + "." +
                                             std::string(SplitName(key.second)) + ".jsonl");
    WriteFile(path, SamplesToJsonl(bucket));
    std::cout << path.string() << "\n";
  }
  return kExitOk;
}

struct PartitionArgs {
  std::string image;
  std::string out;
  int base = kDefaultBaseResolution;
};

int RunPartition(const PartitionArgs& a) {
  const Image img = ReadPng(a.image);
  const auto tiles =
      PlanTiles(img.width(), img.height(), SelectGrid(img.width(), img.height()), a.base);
  const auto images = PartitionImage(img, tiles);
  json sidecar = {{"source", fs::path(a.image).filename().string()},
                  {"resample", "bilinear"},
                  {"base_resolution", a.base},
                  {"tiles", json::array()}};
  for (std::size_t k = 0; k < tiles.size(); ++k) {
    WritePng(fs::path(a.out) / ("tile_" + std::to_string(k) + ".png"), images[k]);
    sidecar["tiles"].push_back(ToJson(tiles[k]));
  }
  WriteFile(fs::path(a.out) / "tiles.json", sidecar.dump(2) + "\n");
  return kExitOk;
}

struct SomArgs {
  std::string screen;
  std::string screen_id;
  std::string image;
  std::string out;
  std::string labels;
  std::string ref;
  SomStyle style;
};

int RunSom(const SomArgs& a) {
  const auto screens = ReadScreens({a.screen});
  const ScreenAnnotation* screen = nullptr;
  for (const auto& s : screens) {
    if (a.screen_id.empty() || s.screen_id == a.screen_id) {
      screen = &s;
      break;
    }
  }
  if (!screen) throw Error(ErrorCode::kSchema, "screen " + a.screen_id + " not found");
  const Image img = ReadPng(a.image);
  if (!a.ref.empty()) {
    for (const auto& e : screen->elements) {
      if (e.id == a.ref) {
        WritePng(a.out, RenderSingleRef(img, e.bbox, a.style));
        return kExitOk;
      }
    }
    throw Error(ErrorCode::kSchema, "element " + a.ref + " not found");
  }
  const auto render = RenderSom(img, screen->elements, a.style);
  WritePng(a.out, render.image);
  const std::string labels =
      a.labels.empty() ? fs::path(a.out).replace_extension(".labels.json").string() : a.labels;
  WriteFile(labels, ToJson(render.map).dump(2) + "\n");
  return kExitOk;
}

struct MixArgs {
  std::string spec;
  std::string out;
  std::optional<std::uint64_t> seed;
};

int RunMix(const MixArgs& a) {
  MixtureSpec spec = LoadMixtureSpec(a.spec);
  if (a.seed) spec.seed = *a.seed;
  const auto mix = SampleMixtureFromFiles(spec);
  WriteFile(a.out, mix.Jsonl());
  for (const auto& [name, n] : mix.counts) std::cout << name << "\t" << n << "\n";
  return kExitOk;
}

struct StatsArgs {
  std::vector<std::string> inputs;
  std::string role = "both";
  std::size_t top_k = 20;
  std::string out;
  std::string csv;
  std::string table;
  std::string subset;
};

void Emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
  } else {
    WriteFile(path, text);
  }
}

int RunStatsCorpus(const StatsArgs& a) {
  const auto samples = ReadSamples(a.inputs);
  const auto stats = ComputeCorpusStats(samples, RoleFilterFromName(a.role), a.top_k);
  Emit(a.out, stats.ToJson().dump(2) + "\n");
  if (!a.csv.empty()) WriteFile(a.csv, stats.TrigramCsv());
  return kExitOk;
}

int RunStatsAgreement(const StatsArgs& a) {
  const auto table = AgreementTableFromJson(json::parse(ReadFile(a.table)));
  std::optional<std::set<std::string>> subset;
  if (!a.subset.empty()) {
    subset = json::parse(ReadFile(a.subset)).get<std::set<std::string>>();
  }
  Emit(a.out, ComputeAgreement(table, subset).ToJson().dump(2) + "\n");
  return kExitOk;
}

struct EvalArgs {
  std::vector<std::string> gold;
  std::string pred;
  std::vector<std::string> tasks;
  std::string judge_fixtures;
  bool judge_live = false;
  std::string rubric;
  std::string som_maps;
  std::string cider_variant = "pycocoevalcap-1.2";
  double iou = kDefaultIouThreshold;
  std::string out;
  std::string table;
  int max_in_flight = 4;
};

int RunEval(const EvalArgs& a) {
  auto gold = ReadSamples(a.gold);
  auto predictions = ReadPredictionsJsonl(a.pred);
  if (!a.tasks.empty()) {
    std::set<Task> keep;
    for (const auto& t : a.tasks) keep.insert(TaskFromName(t));
    std::set<std::string> ids;
    for (const auto& s : gold) {
      if (keep.contains(s.task)) ids.insert(s.sample_id);
    }
    std::erase_if(predictions, [&](const auto& kv) { return !ids.contains(kv.first); });
  }
  std::map<std::string, SomLabelMap> maps;
  if (!a.som_maps.empty()) {
    for (const auto& entry : fs::directory_iterator(a.som_maps)) {
      const std::string name = entry.path().filename().string();
      const std::string suffix = ".labels.json";
      if (name.size() > suffix.size() && name.ends_with(suffix)) {
        maps[name.substr(0, name.size() - suffix.size())] =
            SomLabelMapFromJson(json::parse(ReadFile(entry.path())));
      }
    }
  }
  auto records = JoinPredictions(gold, predictions, maps);
  json judge_json = nullptr;
  bool has_advanced = false;
  for (const auto& r : records) has_advanced |= IsAdvanced(r.task);
  if (has_advanced && (a.judge_live || !a.judge_fixtures.empty())) {
    auto client = MakeClient(a.judge_fixtures, a.judge_live);
    const JudgeRubric rubric =
        a.rubric.empty() ? LoadDefaultJudgeRubric() : LoadJudgeRubric(a.rubric);
    const auto summary = JudgeRecords(records, *client, rubric, a.max_in_flight);
    judge_json = {{"client", client->Describe()},
                  {"rubric", rubric.version},
                  {"judged", summary.judged},
                  {"excluded", summary.excluded.size()}};
    for (const auto& [id, why] : summary.excluded) std::cerr << "judge excluded " << id << ": " << why << "\n";
  }
  EvalOptions options;
  options.iou_threshold = a.iou;
  options.cider.variant = CiderVariantFromName(a.cider_variant);
  const MetricReport report = Aggregate(records, options);
  json j = report.ToJson();
  j["tool"] = kToolName;
  j["version"] = kVersion;
  if (!judge_json.is_null()) j["judge"] = judge_json;
  Emit(a.out, j.dump(2) + "\n");
  if (!a.table.empty()) {
    WriteFile(a.table, report.Table());
  } else if (!a.out.empty()) {
    std::cout << report.Table();
  }
  return kExitOk;
}

struct PipelineArgs {
  std::string config;
  std::string out;
};

int RunPipelineCmd(const PipelineArgs& a) {
  RunConfig cfg = LoadRunConfig(a.config);
  if (!a.out.empty()) cfg.output = a.out;
  const PipelineResult r = RunPipeline(cfg);
  std::cout << "manifest " << r.manifest_path.string() << " sha256 " << r.manifest_sha256 << "\n";
  if (!r.ok) {
    std::cerr << "stage " << r.failed_stage << " failed: " << r.error << "\n";
    return kExitStage;
  }
  return kExitOk;
}

int ExitCodeFor(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kIo:
    case ErrorCode::kTransport:
      return kExitStage;
    default:
      return kExitValidation;
  }
}

int Main(int argc, char** argv) {
  CLI::App app{"UI screen dataset generation and evaluation toolkit", kToolName};
  app.set_version_flag("--version", std::string(kToolName) + " " + kVersion);
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = all cores)");
  std::function<int()> action;

  IngestArgs ingest;
  auto* c_ingest = app.add_subcommand("ingest", "Validate detector output into screen JSONL");
  c_ingest->add_option("inputs", ingest.inputs, "Detection files or directories")->required();
  c_ingest->add_option("-o,--out", ingest.out, "Output JSONL")->required();
  c_ingest->add_option("--rejects", ingest.rejects, "Reject report JSON");
  c_ingest->callback([&] { action = [&] { return RunIngest(ingest); }; });

  GroupArgs group;
  auto* c_group = app.add_subcommand("group", "Merge text lines and picture captions");
  c_group->add_option("inputs", group.inputs, "Screen files")->required();
  c_group->add_option("-o,--out", group.out, "Output JSONL")->required();
  c_group->add_option("--line-gap", group.cfg.line_merge_gap, "Line gap as a fraction of line height");
  c_group->add_option("--overlap", group.cfg.horizontal_overlap_min, "Minimum horizontal overlap");
  c_group->add_option("--caption-gap", group.cfg.caption_gap, "Caption gap as a fraction of picture height");
  c_group->callback([&] {
    action = [&] {
      group.cfg.Validate();
      return RunGroup(group);
    };
  });

  GenArgs gen;
  auto* c_gen = app.add_subcommand("gen", "Generate task samples");
  c_gen->require_subcommand(1);
  auto* g_elem = c_gen->add_subcommand("elementary", "Template tasks from screens");
  auto* g_adv = c_gen->add_subcommand("advanced", "LLM-generated tasks from screens");
  auto* g_spot = c_gen->add_subcommand("spotlight", "Reformat public benchmark records");
  for (auto* sub : {g_elem, g_adv, g_spot}) {
    sub->add_option("inputs", gen.inputs, "Input files")->required();
    sub->add_option("--seed", gen.seed, "Seed");
    sub->add_option("--pool", gen.pool, "Prompt pool JSON");
  }
  g_elem->add_option("-o,--out", gen.out, "Output directory")->required();
  g_spot->add_option("-o,--out", gen.out, "Output directory")->required();
  g_adv->add_option("-o,--out", gen.out, "Output JSONL")->required();
  g_adv->add_option("--task", gen.task, "Advanced task")->required();
  g_adv->add_option("--fixtures", gen.fixtures, "Replay fixture directory");
  g_adv->add_flag("--live", gen.live, "Call the endpoint from UIGROUND_LLM_* variables");
  g_adv->add_option("--record", gen.record, "Save exchanges as a fixture file");
  g_adv->add_option("--templates", gen.templates, "Template directory");
  g_adv->add_option("--report", gen.report, "Report JSON");
  g_adv->add_option("--max-in-flight", gen.max_in_flight, "Concurrent requests")->check(CLI::PositiveNumber);
  g_adv->add_option("--snap", gen.snap, "Box snapping tolerance in normalized units");
  g_adv->add_option("--qa-pairs", gen.qa_pairs, "Split conversations into this many QA pairs");
  g_elem->callback([&] { action = [&] { return RunGenElementary(gen); }; });
  g_adv->callback([&] { action = [&] { return RunGenAdvanced(gen); }; });
  g_spot->callback([&] { action = [&] { return RunGenSpotlight(gen); }; });

  PartitionArgs part;
  auto* c_part = app.add_subcommand("partition", "Resize and tile a screenshot");
  c_part->add_option("image", part.image, "PNG screenshot")->required();
  c_part->add_option("-o,--out", part.out, "Output directory")->required();
  c_part->add_option("--base", part.base, "Tile resolution")->check(CLI::PositiveNumber);
  c_part->callback([&] { action = [&] { return RunPartition(part); }; });

  SomArgs som;
  auto* c_som = app.add_subcommand("som", "Draw referring boxes or numbered marks");
  c_som->add_option("--screen", som.screen, "Screen JSON or JSONL")->required();
  c_som->add_option("--screen-id", som.screen_id, "Screen to pick from a JSONL");
  c_som->add_option("--image", som.image, "PNG screenshot")->required();
  c_som->add_option("-o,--out", som.out, "Output PNG")->required();
  c_som->add_option("--labels", som.labels, "Label map JSON");
  c_som->add_option("--ref", som.ref, "Draw a single box for this element id");
  c_som->add_option("--stroke", som.style.stroke, "Stroke width in pixels");
  c_som->add_option("--font-size", som.style.font_size, "Label font size in pixels");
  c_som->callback([&] {
    action = [&] {
      som.style.Validate();
      return RunSom(som);
    };
  });

  MixArgs mix;
  auto* c_mix = app.add_subcommand("mix", "Sample a training mixture");
  c_mix->add_option("--spec", mix.spec, "Mixture spec JSON")->required();
  c_mix->add_option("-o,--out", mix.out, "Output JSONL")->required();
  c_mix->add_option("--seed", mix.seed, "Override the mixture seed");
  c_mix->callback([&] { action = [&] { return RunMix(mix); }; });

  StatsArgs stats;
  auto* c_stats = app.add_subcommand("stats", "Corpus statistics");
  c_stats->require_subcommand(1);
  auto* s_corpus = c_stats->add_subcommand("corpus", "Vocabulary and trigram counts");
  s_corpus->add_option("inputs", stats.inputs, "Sample JSONL files")->required();
  s_corpus->add_option("--role", stats.role, "question, answer or both")
      ->check(CLI::IsMember({"question", "answer", "both"}));
  s_corpus->add_option("--top-k", stats.top_k, "Trigrams to keep");
  s_corpus->add_option("-o,--out", stats.out, "Output JSON");
  s_corpus->add_option("--csv", stats.csv, "Top trigrams CSV");
  s_corpus->callback([&] { action = [&] { return RunStatsCorpus(stats); }; });
  auto* s_agree = c_stats->add_subcommand("agreement", "Pairwise label agreement");
  s_agree->add_option("--table", stats.table, "Agreement table JSON")->required();
  s_agree->add_option("--subset", stats.subset, "JSON array of ids to keep");
  s_agree->add_option("-o,--out", stats.out, "Output JSON");
  s_agree->callback([&] { action = [&] { return RunStatsAgreement(stats); }; });

  EvalArgs ev;
  auto* c_eval = app.add_subcommand("eval", "Score predictions");
  c_eval->add_option("--gold", ev.gold, "Gold sample JSONL files")->required();
  c_eval->add_option("--pred", ev.pred, "Predictions JSONL")->required();
  c_eval->add_option("--task", ev.tasks, "Restrict to these tasks");
  c_eval->add_option("--judge-fixtures", ev.judge_fixtures, "Judge replay fixtures");
  c_eval->add_flag("--judge-live", ev.judge_live, "Judge through the live endpoint");
  c_eval->add_option("--rubric", ev.rubric, "Judge rubric text");
  c_eval->add_option("--som-maps", ev.som_maps, "Directory of <screen>.labels.json maps");
  c_eval->add_option("--cider-variant", ev.cider_variant, "pycocoevalcap-1.2 or classic");
  c_eval->add_option("--iou", ev.iou, "IoU threshold");
  c_eval->add_option("--max-in-flight", ev.max_in_flight, "Concurrent judge requests")
      ->check(CLI::PositiveNumber);
  c_eval->add_option("-o,--out", ev.out, "Report JSON");
  c_eval->add_option("--table", ev.table, "Text table");
  c_eval->callback([&] { action = [&] { return RunEval(ev); }; });

  PipelineArgs pipe;
  auto* c_pipe = app.add_subcommand("pipeline", "Run every stage from a config file");
  c_pipe->add_option("--config", pipe.config, "Run config JSON")->required();
  c_pipe->add_option("-o,--out", pipe.out, "Override the output directory");
  c_pipe->callback([&] { action = [&] { return RunPipelineCmd(pipe); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }
  SetThreadCount(threads);
  try {
    return action();
  } catch (const Error& e) {
    std::cerr << "error [" << ErrorCodeName(e.code()) << "]: " << e.what() << "\n";
    return ExitCodeFor(e);
  } catch (const json::exception& e) {
    std::cerr << "error [schema]: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitStage;
  }
}

}  // namespace
}  // namespace uiground

int main(int argc, char** argv) { return uiground::Main(argc, argv); }
