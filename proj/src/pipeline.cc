// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#include "uiground/pipeline.h"

#include <algorithm>
#include <map>
#include <sstream>

#include "uiground/advgen.h"
#include "uiground/anyres.h"
#include "uiground/error.h"
#include "uiground/hashing.h"
#include "uiground/image.h"
#include "uiground/llm_client.h"
#include "uiground/prompt_pool.h"
#include "uiground/taskgen.h"
#include "uiground/version.h"

namespace uiground {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<fs::path> ExpandInputs(std::span<const fs::path> inputs) {
  std::vector<fs::path> files;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::directory_iterator(in)) {
        const auto ext = entry.path().extension();
        if (entry.is_regular_file() && (ext == ".json" || ext == ".jsonl")) {
          found.push_back(entry.path());
        }
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(in);
    }
  }
  return files;
}

void IngestOne(const json& j, const std::string& source, IngestResult& out) {
  try {
    out.screens.push_back(ScreenFromJson(j));
  } catch (const Error& e) {
    out.rejects.push_back({source, std::string(ErrorCodeName(e.code())) + ": " + e.what()});
  }
}

fs::path Resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_relative() ? base / path : path;
}

std::optional<fs::path> OptionalPath(const json& j, const char* key, const fs::path& base) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return Resolve(base, j[key].get<std::string>());
}

// Writes files relative to the output root and remembers them.
class OutputTree {
 public:
  explicit OutputTree(fs::path root) : root_(std::move(root)) {}

  void Write(const std::string& rel, std::string_view data) {
    WriteFile(root_ / rel, data);
    files_.push_back(rel);
  }
  void WritePngFile(const std::string& rel, const Image& img) { Write(rel, EncodePng(img)); }
  void Track(const fs::path& abs) { files_.push_back(fs::relative(abs, root_).generic_string()); }
  const fs::path& root() const { return root_; }
  const std::vector<std::string>& files() const { return files_; }

 private:
  fs::path root_;
  std::vector<std::string> files_;
};

template <typename F>
void Stage(const std::string& name, F&& body) {
  try {
    body();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

fs::path ImagePathFor(const RunConfig& cfg, const ScreenAnnotation& s) {
  return *cfg.images / s.image_path.value_or(s.screen_id + ".png");
}

}  // namespace

json IngestResult::RejectsJson() const {
  json arr = json::array();
  for (const auto& r : rejects) arr.push_back({{"source", r.source}, {"reason", r.reason}});
  return arr;
}

IngestResult Ingest(std::span<const fs::path> inputs) {
  IngestResult out;
  for (const auto& file : ExpandInputs(inputs)) {
    const std::string name = file.filename().string();
    if (file.extension() == ".jsonl") {
      std::istringstream in(ReadFile(file));
      std::string line;
      int lineno = 0;
      while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const std::string source = name + ":" + std::to_string(lineno);
        try {
          IngestOne(json::parse(line), source, out);
        } catch (const json::parse_error& e) {
          out.rejects.push_back({source, std::string("schema: ") + e.what()});
        }
      }
      continue;
    }
    json doc;
    try {
      doc = json::parse(ReadFile(file));
    } catch (const json::parse_error& e) {
      out.rejects.push_back({name, std::string("schema: ") + e.what()});
      continue;
    }
    if (doc.is_array()) {
      for (std::size_t i = 0; i < doc.size(); ++i) {
        IngestOne(doc[i], name + ":" + std::to_string(i + 1), out);
      }
    } else {
      IngestOne(doc, name, out);
    }
  }
  return out;
}

RunConfig RunConfigFromJson(const json& j, const fs::path& base_dir) {
  RunConfig c;
  try {
    c.seed = j.value("seed", std::uint64_t{0});
    c.annotations = Resolve(base_dir, j.at("annotations").get<std::string>());
    c.images = OptionalPath(j, "images", base_dir);
    c.output = Resolve(base_dir, j.value("output", std::string("out")));
    c.prompt_pool = OptionalPath(j, "prompt_pool", base_dir);
    c.templates = OptionalPath(j, "templates", base_dir);
    c.spotlight = OptionalPath(j, "spotlight", base_dir);
    c.fixtures = OptionalPath(j, "fixtures", base_dir);
    c.mixture = OptionalPath(j, "mixture", base_dir);
    if (j.contains("advanced_tasks")) {
      for (const auto& t : j["advanced_tasks"]) {
        const Task task = TaskFromName(t.get<std::string>());
        if (!IsAdvanced(task)) {
          throw Error(ErrorCode::kConfig, t.get<std::string>() + " is not an advanced task");
        }
        c.advanced_tasks.push_back(task);
      }
    } else {
      c.advanced_tasks.assign(kAdvancedTasks.begin(), kAdvancedTasks.end());
    }
    if (j.contains("platforms")) {
      c.platforms.clear();
      for (const auto& p : j["platforms"]) c.platforms.push_back(PlatformFromName(p.get<std::string>()));
    }
    if (j.contains("grouping")) {
      const auto& g = j["grouping"];
      c.grouping.line_merge_gap = g.value("line_merge_gap", c.grouping.line_merge_gap);
      c.grouping.horizontal_overlap_min =
          g.value("horizontal_overlap_min", c.grouping.horizontal_overlap_min);
      c.grouping.caption_gap = g.value("caption_gap", c.grouping.caption_gap);
    }
    c.grouping.Validate();
    c.base_resolution = j.value("base_resolution", c.base_resolution);
    if (c.base_resolution < 1) throw Error(ErrorCode::kConfig, "base_resolution must be >= 1");
    c.iou_threshold = j.value("iou_threshold", c.iou_threshold);
    if (!(c.iou_threshold >= 0 && c.iou_threshold < 1)) {
      throw Error(ErrorCode::kConfig, "iou_threshold must be in [0, 1)");
    }
    c.partition = j.value("partition", false);
    if (j.contains("som")) {
      const auto& s = j["som"];
      c.som = s.value("enabled", false);
      c.som_style.stroke = s.value("stroke", c.som_style.stroke);
      c.som_style.font_size = s.value("font_size", c.som_style.font_size);
    }
    c.som_style.Validate();
    if (j.contains("stats")) {
      c.stats_role = RoleFilterFromName(j["stats"].value("role", std::string("both")));
      c.stats_top_k = j["stats"].value("top_k", c.stats_top_k);
    }
    c.max_in_flight = j.value("max_in_flight", c.max_in_flight);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfig, std::string("run config: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfig) throw;
    throw Error(ErrorCode::kConfig, e.what());
  }
  c.source = j;
  c.source.erase("output");
  return c;
}

RunConfig LoadRunConfig(const fs::path& path) {
  json j;
  try {
    j = json::parse(ReadFile(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kConfig, path.string() + ": " + e.what());
  }
  return RunConfigFromJson(j, path.parent_path());
}

std::vector<std::pair<std::string, std::string>> HashTree(const fs::path& dir) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    out.emplace_back(fs::relative(entry.path(), dir).generic_string(),
                     Sha256Hex(ReadFile(entry.path())));
  }
  std::sort(out.begin(), out.end());
  return out;
}

PipelineResult RunPipeline(const RunConfig& cfg) {
  PipelineResult result;
  fs::create_directories(cfg.output);
  fs::remove(cfg.output / "FAILED");
  OutputTree out(cfg.output);

  try {
    std::vector<ScreenAnnotation> screens;
    Stage("ingest", [&] {
      const std::vector<fs::path> inputs = {cfg.annotations};
      IngestResult ingest = Ingest(inputs);
      out.Write("ingest/rejects.json", ingest.RejectsJson().dump(2) + "\n");
      for (auto& s : ingest.screens) {
        if (std::find(cfg.platforms.begin(), cfg.platforms.end(), s.platform) !=
            cfg.platforms.end()) {
          screens.push_back(std::move(s));
        }
      }
      if (screens.empty()) throw Error(ErrorCode::kEmptyInput, "no valid screens");
    });

    std::vector<ScreenAnnotation> grouped;
    Stage("group", [&] {
      grouped = GroupScreens(screens, cfg.grouping);
      std::string jsonl;
      for (const auto& s : grouped) jsonl += ToJson(s).dump() + "\n";
      out.Write("group/screens.jsonl", jsonl);
    });

    const PromptPool pool = cfg.prompt_pool ? LoadPromptPool(*cfg.prompt_pool)
                                            : LoadDefaultPromptPool();
    std::vector<TaskSample> all_samples;

    Stage("taskgen", [&] {
      const std::uint64_t seed = DeriveSeed(cfg.seed, "taskgen");
      for (Platform p : cfg.platforms) {
        std::vector<ScreenAnnotation> mine;
        std::set<Split> splits;
        for (const auto& s : grouped) {
          if (s.platform == p) {
            mine.push_back(s);
            splits.insert(s.split);
          }
        }
        if (mine.empty()) continue;
        const auto dataset = GenerateElementary(mine, pool, seed);
        const std::vector<Split> split_list(splits.begin(), splits.end());
        for (const auto& path : WriteElementaryDataset(
                 dataset, cfg.output / "elementary" / std::string(PlatformName(p)), split_list)) {
          out.Track(path);
        }
        for (const auto& [key, bucket] : dataset.buckets) {
          all_samples.insert(all_samples.end(), bucket.begin(), bucket.end());
        }
      }
    });

    if (cfg.spotlight) {
      Stage("spotlight", [&] {
        const std::uint64_t seed = DeriveSeed(cfg.seed, "spotlight");
        std::map<std::pair<Task, Split>, std::vector<TaskSample>> buckets;
        for (const auto& r : ReadSpotlightJsonl(*cfg.spotlight)) {
          buckets[{r.task, r.split}].push_back(ReformatSpotlight(r, pool, seed));
        }
        for (auto& [key, bucket] : buckets) {
          if (key.second == Split::kTest) bucket = CapTestSet(std::move(bucket), key.first, seed);
          out.Write("spotlight/" + std::string(TaskName(key.first)) + "." +
                        std::string(SplitName(key.second)) + ".jsonl",
                    SamplesToJsonl(bucket));
          all_samples.insert(all_samples.end(), bucket.begin(), bucket.end());
        }
      });
    }

    if (cfg.fixtures) {
      Stage("advgen", [&] {
        ReplayClient client(*cfg.fixtures);
        const AdvTemplates templates =
            cfg.templates ? LoadAdvTemplates(*cfg.templates) : LoadDefaultAdvTemplates();
        AdvgenOptions options;
        options.seed = DeriveSeed(cfg.seed, "advgen");
        options.max_in_flight = cfg.max_in_flight;
        for (Task task : cfg.advanced_tasks) {
          const auto run = RunAdvgen(grouped, task, client, templates, pool, options);
          const std::string name(TaskName(task));
          out.Write("advanced/" + name + ".jsonl", SamplesToJsonl(run.samples));
          out.Write("advanced/" + name + ".report.json", run.report.ToJson().dump(2) + "\n");
          all_samples.insert(all_samples.end(), run.samples.begin(), run.samples.end());
        }
      });
    }

    if (cfg.partition) {
      Stage("partition", [&] {
        if (!cfg.images || !fs::is_directory(*cfg.images)) {
          throw Error(ErrorCode::kIo, "image directory is missing");
        }
        for (const auto& s : grouped) {
          const Image img = ReadPng(ImagePathFor(cfg, s));
          const auto tiles = PlanTiles(img.width(), img.height(),
                                       SelectGrid(img.width(), img.height()),
                                       cfg.base_resolution);
          const auto images = PartitionImage(img, tiles);
          const std::string dir = "partition/" + s.screen_id + "/";
          json sidecar = {{"screen_id", s.screen_id},
                          {"resample", "bilinear"},
                          {"base_resolution", cfg.base_resolution},
                          {"tiles", json::array()}};
          for (std::size_t k = 0; k < tiles.size(); ++k) {
            out.WritePngFile(dir + "tile_" + std::to_string(k) + ".png", images[k]);
            sidecar["tiles"].push_back(ToJson(tiles[k]));
          }
          out.Write(dir + "tiles.json", sidecar.dump(2) + "\n");
        }
      });
    }

    if (cfg.som) {
      Stage("som", [&] {
        if (!cfg.images || !fs::is_directory(*cfg.images)) {
          throw Error(ErrorCode::kIo, "image directory is missing");
        }
        for (const auto& s : grouped) {
          const Image img = ReadPng(ImagePathFor(cfg, s));
          const auto render = RenderSom(img, s.elements, cfg.som_style);
          out.WritePngFile("som/" + s.screen_id + ".png", render.image);
          out.Write("som/" + s.screen_id + ".labels.json", ToJson(render.map).dump(2) + "\n");
        }
      });
    }

    if (cfg.mixture) {
      Stage("mix", [&] {
        // Pool paths name generated outputs.
        MixtureSpec spec = MixtureSpecFromJson(json::parse(ReadFile(*cfg.mixture)), cfg.output);
        spec.seed = DeriveSeed(cfg.seed, "mix");
        const auto mix = SampleMixtureFromFiles(spec);
        out.Write("mix/mixture.jsonl", mix.Jsonl());
        json counts = json::object();
        for (const auto& [name, n] : mix.counts) counts[name] = n;
        out.Write("mix/counts.json", counts.dump(2) + "\n");
      });
    }

    Stage("stats", [&] {
      std::map<Task, std::vector<TaskSample>> by_task;
      for (const auto& s : all_samples) by_task[s.task].push_back(s);
      json per_task = json::object();
      for (const auto& [task, samples] : by_task) {
        per_task[std::string(TaskName(task))] =
            ComputeCorpusStats(samples, cfg.stats_role, cfg.stats_top_k).ToJson();
      }
      out.Write("stats/corpus.json",
                json{{"role", RoleFilterName(cfg.stats_role)}, {"tasks", per_task}}.dump(2) + "\n");
      if (!all_samples.empty()) {
        out.Write("stats/trigrams.csv",
                  ComputeCorpusStats(all_samples, cfg.stats_role, cfg.stats_top_k).TrigramCsv());
      }
    });
  } catch (const StageError& e) {
    result.ok = false;
    result.failed_stage = e.stage();
    result.error = e.what();
    WriteFile(cfg.output / "FAILED", e.stage() + "\n");
  }

  // Manifest.
  std::vector<std::string> files = out.files();
  std::sort(files.begin(), files.end());
  files.erase(std::unique(files.begin(), files.end()), files.end());
  json listing = json::array();
  for (const auto& rel : files) {
    const std::string data = ReadFile(cfg.output / rel);
    listing.push_back({{"path", rel}, {"sha256", Sha256Hex(data)}, {"bytes", data.size()}});
  }
  json manifest = {{"schema_version", kSchemaVersion},
                   {"tool", kToolName},
                   {"version", kVersion},
                   {"config", cfg.source},
                   {"status", result.ok ? "ok" : "FAILED"},
                   {"files", listing}};
  if (!result.ok) {
    manifest["failed_stage"] = result.failed_stage;
    manifest["error"] = result.error;
  }
  const std::string text = manifest.dump(2) + "\n";
  result.manifest_path = cfg.output / "manifest.json";
  WriteFile(result.manifest_path, text);
  result.manifest_sha256 = Sha256Hex(text);
  result.files = std::move(files);
  return result;
}

}  // namespace uiground
