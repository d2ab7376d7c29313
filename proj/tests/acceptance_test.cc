// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

// Acceptance gate: prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "test_util.h"
#include "uiground/advgen.h"
#include "uiground/anyres.h"
#include "uiground/cider.h"
#include "uiground/error.h"
#include "uiground/eval.h"
#include "uiground/grouping.h"
#include "uiground/hashing.h"
#include "uiground/pipeline.h"
#include "uiground/som.h"
#include "uiground/taskgen.h"

namespace uiground {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

// Collects failed checks for one criterion.
class Check {
 public:
  void Expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++count_;
  }
  bool ok() const { return count_ == 0; }
  std::string Summary() const {
    std::string s = std::to_string(count_) + " failed check(s)";
    for (const auto& f : failures_) s += "; " + f;
    return s;
  }

 private:
  std::vector<std::string> failures_;
  int count_ = 0;
};

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void IouOracle(Check& c) {
  const auto start = Clock::now();
  Rng rng(20260101);
  auto box = [&] {
    int x1 = static_cast<int>(rng.Below(65)), x2 = static_cast<int>(rng.Below(65));
    int y1 = static_cast<int>(rng.Below(65)), y2 = static_cast<int>(rng.Below(65));
    if (x1 > x2) std::swap(x1, x2);
    if (y1 > y2) std::swap(y1, y2);
    return BBox{double(x1), double(y1), double(x2), double(y2)};
  };
  std::vector<BoxPair> pairs;
  for (int i = 0; i < 1000; ++i) pairs.emplace_back(box(), box());
  const auto fast = BatchIou(pairs);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [a, b] = pairs[i];
    int inter = 0, uni = 0;
    for (int y = 0; y < 64; ++y) {
      for (int x = 0; x < 64; ++x) {
        const bool in_a = x >= a.x1 && x < a.x2 && y >= a.y1 && y < a.y2;
        const bool in_b = x >= b.x1 && x < b.x2 && y >= b.y1 && y < b.y2;
        inter += in_a && in_b;
        uni += in_a || in_b;
      }
    }
    const double want = uni == 0 ? 0.0 : static_cast<double>(inter) / uni;
    c.Expect(std::abs(fast[i] - want) <= 1e-9,
             "pair " + std::to_string(i) + ": " + Fmt(fast[i]) + " vs " + Fmt(want));
  }
  const double t = Seconds(start);
  c.Expect(t < 5.0, "runtime " + Fmt(t) + " s");
}

void GroundingThreshold(Check& c) {
  const NormBBox label{0, 0, 100, 100};
  const int heights[] = {49, 50, 51};
  const bool want[] = {false, false, true};
  for (int k = 0; k < 3; ++k) {
    EvalRecord r;
    r.sample_id = "g" + std::to_string(k);
    r.task = Task::kFindText;
    r.label_regions = std::vector<NormBBox>{label};
    r.pred_regions = std::vector<NormBBox>{{0, 0, 100, heights[k]}};
    const NormBBox p = r.pred_regions->front();
    const double iou = Iou({0, 0, 100, 100}, {double(p.x1), double(p.y1), double(p.x2), double(p.y2)});
    c.Expect(std::abs(iou - heights[k] / 100.0) < 1e-12, "constructed IoU " + Fmt(iou));
    c.Expect(GroundingCorrect(r, 0.5) == want[k], "IoU " + Fmt(iou) + " scored wrong");
  }
}

void CiderOracle(Check& c) {
  const auto start = Clock::now();
  const auto corpus = json::parse(ReadFile(testing::TestDataDir() / "cider_corpus.json"));
  const auto expected = json::parse(ReadFile(testing::TestDataDir() / "cider_expected.json"));
  std::vector<std::string> cands;
  std::vector<std::vector<std::string>> refs;
  for (const auto& item : corpus.at("items")) {
    cands.push_back(item.at("candidate").get<std::string>());
    refs.push_back(item.at("references").get<std::vector<std::string>>());
  }
  c.Expect(cands.size() == 20, "corpus size " + std::to_string(cands.size()));
  const std::vector<std::string> single_c = {corpus["single"]["candidate"].get<std::string>()};
  const std::vector<std::vector<std::string>> single_r = {
      corpus["single"]["references"].get<std::vector<std::string>>()};
  for (CiderVariant v : {CiderVariant::kCoco, CiderVariant::kClassic}) {
    const std::string name(CiderVariantName(v));
    const auto& want = expected.at(name);
    CiderOptions opts;
    opts.variant = v;
    const auto got = Cider(cands, refs, opts);
    c.Expect(std::abs(got.score - want["corpus"].get<double>()) <= 1e-6,
             name + " corpus " + Fmt(got.score));
    for (std::size_t i = 0; i < got.item_scores.size(); ++i) {
      c.Expect(std::abs(got.item_scores[i] - want["items"][i].get<double>()) <= 1e-6,
               name + " item " + std::to_string(i));
    }
    const double single = Cider(single_c, single_r, opts).score;
    c.Expect(std::abs(single - want["single"].get<double>()) <= 1e-6 && single == 0.0,
             name + " single-item " + Fmt(single));
  }
  const double t = Seconds(start);
  c.Expect(t < 10.0, "runtime " + Fmt(t) + " s");
}

UIElement El(std::string id, std::string_view type, BBox b, std::optional<std::string> text) {
  return testing::El(std::move(id), type, b, std::move(text));
}

void RuleSuite(Check& c) {
  auto text = [](std::string s) { return El("t", "Text", {0, 0, 10, 10}, std::move(s)); };
  c.Expect(EligibleOcr(text("one two three four five six seven eight nine")), "9 tokens");
  c.Expect(!EligibleOcr(text("one two three four five six seven eight nine ten")), "10 tokens");
  c.Expect(!EligibleOcr(text("A")), "1-char token");
  c.Expect(EligibleOcr(text("OK")), "2-char token");

  const auto dup = testing::Screen("d", {El("a", "Text", {0, 0, 50, 20}, "Save"),
                                         El("b", "Text", {0, 50, 50, 70}, "Save"),
                                         El("c", "Button", {0, 90, 50, 110}, "Save")});
  c.Expect(!EligibleFor(Task::kFindText, dup.elements[0], dup), "duplicate text excluded");
  c.Expect(!EligibleFor(Task::kFindText, dup.elements[1], dup), "duplicate text excluded");
  c.Expect(EligibleFor(Task::kFindWidget, dup.elements[2], dup), "unique widget kept");
  c.Expect(EligibleFor(Task::kOcr, dup.elements[0], dup), "ocr ignores duplicates");

  c.Expect(CanonicalizeType("Toggle (Checked)") == CanonicalizeType("Toggle (Unchecked)") &&
               CanonicalizeType("Toggle (Checked)").Name() == "Toggle",
           "toggle merge");
  c.Expect(CanonicalizeType("Checkbox (Checked)") == CanonicalizeType("Checkbox (Unchecked)") &&
               CanonicalizeType("Checkbox (Unchecked)").Name() == "Checkbox",
           "checkbox merge");

  std::vector<TaskSample> many(6000);
  for (std::size_t i = 0; i < many.size(); ++i) many[i].sample_id = std::to_string(i);
  const auto capped = CapTestSet(many, Task::kOcr, 7);
  std::set<std::string> uniq;
  for (const auto& s : capped) uniq.insert(s.sample_id);
  c.Expect(capped.size() == 5000 && uniq.size() == 5000, "cap keeps 5000 distinct samples");
  c.Expect(CapTestSet(std::vector<TaskSample>(4999), Task::kOcr, 7).size() == 4999,
           "small test sets untouched");

  const auto pool = LoadDefaultPromptPool();
  const auto listing = GenWidgetListing(dup, pool, 1);
  c.Expect(listing.turns.back().text.rfind("UI widgets present in this screen include", 0) == 0,
           "listing prefix");
}

void Cardinality(Check& c) {
  const auto screens =
      GroupScreens(ReadScreensJsonl(testing::SyntheticDir() / "screens.jsonl"), {});
  c.Expect(screens.size() == 20, "corpus has " + std::to_string(screens.size()) + " screens");
  const auto pool = LoadDefaultPromptPool();
  const auto ds = GenerateElementary(screens, pool, 7);
  auto total = [&](Task t) { return ds.Count(Split::kTrain, t) + ds.Count(Split::kTest, t); };
  c.Expect(total(Task::kWidgetListing) == screens.size(), "one listing per screen");
  std::map<std::pair<std::string, Task>, int> per_screen;
  for (const auto& [key, samples] : ds.buckets) {
    for (const auto& s : samples) {
      if (key.second == Task::kWidgetListing) ++per_screen[{s.screen_id, key.second}];
    }
  }
  for (const auto& s : screens) {
    c.Expect(per_screen[{s.screen_id, Task::kWidgetListing}] == 1, s.screen_id + " listing");
  }
  const std::pair<Task, Task> categories[] = {{Task::kOcr, Task::kFindText},
                                              {Task::kIconRecognition, Task::kFindIcon},
                                              {Task::kWidgetClassification, Task::kFindWidget}};
  for (const auto& [ref, grd] : categories) {
    std::size_t want_ref = 0, want_grd = 0;
    for (const auto& s : screens) {
      for (const auto& e : s.elements) {
        want_ref += EligibleFor(ref, e, s);
        want_grd += EligibleFor(grd, e, s);
      }
    }
    c.Expect(total(ref) == want_ref, std::string(TaskName(ref)) + " " +
                                         std::to_string(total(ref)) + " vs " +
                                         std::to_string(want_ref));
    c.Expect(total(grd) == want_grd, std::string(TaskName(grd)) + " " +
                                         std::to_string(total(grd)) + " vs " +
                                         std::to_string(want_grd));
    c.Expect(want_ref > 0 && want_grd > 0, std::string(TaskName(ref)) + " corpus coverage");
  }
}

void AnyresFidelity(Check& c) {
  const std::pair<int, int> resolutions[] = {
      {2560, 1440}, {1792, 828}, {828, 1792}, {2436, 1125}, {1125, 2436}};
  for (auto [w, h] : resolutions) {
    const GridConfig want = w > h ? GridConfig{1, 2} : GridConfig{2, 1};
    c.Expect(SelectGrid(w, h) == want, std::to_string(w) + "x" + std::to_string(h));
  }
  Rng rng(6);
  for (int screen = 0; screen < 200; ++screen) {
    const int w = 50 + static_cast<int>(rng.Below(3000));
    const int h = 50 + static_cast<int>(rng.Below(3000));
    const auto grid = SelectGrid(w, h);
    const auto tiles = PlanTiles(w, h, grid);
    const int cw = grid.cols * kDefaultBaseResolution, ch = grid.rows * kDefaultBaseResolution;
    long covered = 0;
    bool overlap = false;
    for (std::size_t i = 0; i < tiles.size(); ++i) {
      covered += static_cast<long>(tiles[i].tile_w) * tiles[i].tile_h;
      for (std::size_t j = i + 1; j < tiles.size(); ++j) {
        const auto& a = tiles[i];
        const auto& b = tiles[j];
        overlap |= a.offset_x < b.offset_x + b.tile_w && b.offset_x < a.offset_x + a.tile_w &&
                   a.offset_y < b.offset_y + b.tile_h && b.offset_y < a.offset_y + a.tile_h;
      }
      c.Expect(tiles[i].offset_x + tiles[i].tile_w <= cw &&
                   tiles[i].offset_y + tiles[i].tile_h <= ch,
               "tile outside canvas");
    }
    c.Expect(!overlap && covered == static_cast<long>(cw) * ch, "partition not exact");

    for (int k = 0; k < 5; ++k) {
      const double x1 = rng.Below(w - 1), y1 = rng.Below(h - 1);
      const BBox b{x1, y1, x1 + 1 + rng.Below(w - static_cast<int>(x1) - 1),
                   y1 + 1 + rng.Below(h - static_cast<int>(y1) - 1)};
      std::optional<BBox> back;
      for (const auto& t : tiles) {
        if (const auto p = ProjectBBox(b, t)) {
          const BBox u = UnprojectBBox(*p, t);
          back = back ? UnionBBox(*back, u) : u;
        }
      }
      c.Expect(back.has_value(), "box lost in projection");
      if (back) {
        const double err = std::max({std::abs(back->x1 - b.x1), std::abs(back->y1 - b.y1),
                                     std::abs(back->x2 - b.x2), std::abs(back->y2 - b.y2)});
        c.Expect(err <= 1.0, "round trip error " + Fmt(err) + " px");
      }
    }
  }
}

void AdvancedEligibility(Check& c) {
  const int counts[] = {2, 3, 14, 15};
  const bool want[] = {false, true, true, false};
  for (int k = 0; k < 4; ++k) {
    std::vector<UIElement> els;
    for (int i = 0; i < counts[k]; ++i) {
      els.push_back(El("e" + std::to_string(i), "Button", {0.0, 10.0 * i, 50.0, 10.0 * i + 8},
                       "b" + std::to_string(i)));
    }
    const auto s = testing::Screen("s", els);
    c.Expect(ScreenEligibleAdvanced(s) == want[k], std::to_string(counts[k]) + " elements");
  }
}

struct ReplayRun {
  std::string jsonl;
  std::string reports;
  std::string metrics;
  int parsed = 0;
  int judged = 0;
  std::size_t excluded = 0;
};

ReplayRun RunReplay(int threads) {
  omp_set_num_threads(threads);
  const auto dir = testing::SyntheticDir();
  const auto screens = GroupScreens(ReadScreensJsonl(dir / "screens.jsonl"), {});
  ReplayClient adv(dir / "fixtures" / "advgen");
  const auto templates = LoadDefaultAdvTemplates();
  const auto pool = LoadDefaultPromptPool();
  ReplayRun run;
  for (Task task : kAdvancedTasks) {
    AdvgenOptions opt;
    opt.seed = 7;
    opt.max_in_flight = threads;
    const auto r = RunAdvgen(screens, task, adv, templates, pool, opt);
    run.jsonl += SamplesToJsonl(r.samples);
    run.reports += r.report.ToJson().dump() + "\n";
    run.parsed += r.report.parsed;
  }
  const auto gold = ReadSamplesJsonl(dir / "predictions" / "advanced.gold.jsonl");
  auto records = JoinPredictions(gold, ReadPredictionsJsonl(dir / "predictions" / "advanced.pred.jsonl"));
  ReplayClient judge(dir / "fixtures" / "judge");
  const auto summary = JudgeRecords(records, judge, LoadDefaultJudgeRubric(), threads);
  run.judged = summary.judged;
  run.excluded = summary.excluded.size();
  EvalOptions eo;
  eo.exec = threads == 1 ? Exec::kSerial : Exec::kParallel;
  run.metrics = Aggregate(records, eo).ToJson().dump();
  return run;
}

void ReplayDeterminism(Check& c) {
  const auto a = RunReplay(4);
  const auto b = RunReplay(4);
  const auto one = RunReplay(1);
  c.Expect(a.parsed > 0 && a.judged > 0, "replay produced no samples or judgments");
  c.Expect(a.excluded == 0, std::to_string(a.excluded) + " records missing judge fixtures");
  c.Expect(a.jsonl == b.jsonl && a.reports == b.reports, "advgen differs across runs");
  c.Expect(a.metrics == b.metrics, "metrics differ across runs");
  c.Expect(a.jsonl == one.jsonl && a.reports == one.reports, "advgen differs across threads");
  c.Expect(a.metrics == one.metrics, "metrics differ across threads");
  omp_set_num_threads(omp_get_num_procs());
}

void SomIntegrity(Check& c) {
  const auto dir = testing::SyntheticDir();
  const auto screens = GroupScreens(ReadScreensJsonl(dir / "screens.jsonl"), {});
  const auto& screen = screens.at(5);
  const Image image = ReadPng(dir / "images" / *screen.image_path);
  const auto r1 = RenderSom(image, screen.elements);
  const auto r2 = RenderSom(image, screen.elements);
  std::set<std::string> ids;
  for (std::size_t i = 0; i < r1.map.size(); ++i) {
    const auto& e = r1.map.Lookup(static_cast<int>(i) + 1);
    c.Expect(e.label == static_cast<int>(i) + 1, "label sequence");
    ids.insert(e.element_id);
  }
  std::set<std::string> want;
  for (const auto& e : screen.elements) want.insert(e.id);
  c.Expect(ids == want && r1.map.size() == screen.elements.size(), "label map not bijective");
  c.Expect(ResolveLabelAnswer("3", r1.map).label == 3, "\"3\"");
  c.Expect(ResolveLabelAnswer("3.", r1.map).label == 3, "\"3.\"");
  c.Expect(ResolveLabelAnswer("label 3", r1.map).label == 3, "\"label 3\"");
  const std::string out_of_range = std::to_string(r1.map.size() + 1);
  bool rejected = false;
  try {
    ResolveLabelAnswer(out_of_range, r1.map);
  } catch (const Error& e) {
    rejected = e.code() == ErrorCode::kUnknownLabel;
  }
  c.Expect(rejected, "out-of-range label accepted");
  c.Expect(Sha256Hex(EncodePng(r1.image)) == Sha256Hex(EncodePng(r2.image)), "PNG hash unstable");
}

void JudgeArithmetic(Check& c) {
  c.Expect(JudgeScoreRatio(8, 10) == 80.0, "(8,10)");
  c.Expect(std::abs(JudgeScoreRatio(7.94, 4) - 198.5) < 1e-9, "ratio above 100");
  std::vector<EvalRecord> recs;
  auto grd = [&](Task t, Platform p, NormBBox pred, NormBBox label, std::string id) {
    EvalRecord r;
    r.sample_id = std::move(id);
    r.task = t;
    r.platform = p;
    r.pred_regions = std::vector<NormBBox>{pred};
    r.label_regions = std::vector<NormBBox>{label};
    recs.push_back(r);
  };
  grd(Task::kFindText, Platform::kIphone, {0, 0, 10, 10}, {0, 0, 10, 10}, "a");
  grd(Task::kFindIcon, Platform::kIphone, {0, 0, 10, 10}, {50, 50, 60, 60}, "b");
  grd(Task::kWidgetListing, Platform::kIphone, {0, 0, 10, 10}, {0, 0, 10, 10}, "c");
  const auto report = Aggregate(recs);
  const auto* g = report.FindAggregate("Grd-i");
  c.Expect(g != nullptr && std::abs(g->value - 50.0) < 1e-9, "Grd-i includes widget_listing");
  if (g) {
    for (Task t : g->tasks) c.Expect(t != Task::kWidgetListing, "listing in Grd tasks");
  }
}

void EndToEnd(Check& c) {
  testing::TempDir dir;
  auto cfg = LoadRunConfig(testing::SyntheticDir() / "pipeline.json");
  cfg.output = dir.path() / "out";
  const auto start = Clock::now();
  const auto r = RunPipeline(cfg);
  const double t = Seconds(start);
  c.Expect(r.ok, "pipeline failed: " + r.error);
  c.Expect(t < 60.0, "runtime " + Fmt(t) + " s");
  std::string want = ReadFile(testing::SyntheticDir() / "expected_manifest.sha256");
  want = want.substr(0, want.find_first_of(" \n"));
  c.Expect(r.manifest_sha256 == want, "manifest " + r.manifest_sha256 + " expected " + want);
}

}  // namespace
}  // namespace uiground

int main() {
  using uiground::Check;
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"IoU matches pixel-count oracle", uiground::IouOracle},
      {"grounding threshold is strict", uiground::GroundingThreshold},
      {"CIDEr matches reference implementation", uiground::CiderOracle},
      {"elementary task rule suite", uiground::RuleSuite},
      {"generation cardinality on synthetic corpus", uiground::Cardinality},
      {"anyres grid, partition and projection", uiground::AnyresFidelity},
      {"advanced eligibility boundaries", uiground::AdvancedEligibility},
      {"advgen and judge replay determinism", uiground::ReplayDeterminism},
      {"set-of-mark integrity", uiground::SomIntegrity},
      {"judge ratio arithmetic", uiground::JudgeArithmetic},
      {"end-to-end pipeline manifest", uiground::EndToEnd},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check check;
    try {
      criteria[i].second(check);
    } catch (const std::exception& e) {
      check.Expect(false, std::string("exception: ") + e.what());
    }
    if (check.ok()) {
      std::printf("PASS %zu %s\n", i + 1, criteria[i].first.c_str());
    } else {
      ++failed;
      std::printf("FAIL %zu %s: %s\n", i + 1, criteria[i].first.c_str(),
                  check.Summary().c_str());
    }
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
