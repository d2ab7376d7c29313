// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#include "uiground/eval.h"

#include <gtest/gtest.h>

#include "test_util.h"
#include "uiground/error.h"

namespace uiground {
namespace {

EvalRecord Ground(NormBBox pred, NormBBox label, std::string id = "g") {
  EvalRecord r;
  r.sample_id = std::move(id);
  r.task = Task::kFindText;
  r.pred_regions = std::vector<NormBBox>{pred};
  r.label_regions = std::vector<NormBBox>{label};
  return r;
}

TEST(GroundingTest, StrictThreshold) {
  const NormBBox label{0, 0, 100, 100};
  EXPECT_FALSE(GroundingCorrect(Ground({0, 0, 100, 49}, label)));
  EXPECT_FALSE(GroundingCorrect(Ground({0, 0, 100, 50}, label)));
  EXPECT_TRUE(GroundingCorrect(Ground({0, 0, 100, 51}, label)));
}

TEST(GroundingTest, PredictionNeedsExactlyOneBox) {
  auto r = Ground({0, 0, 100, 100}, {0, 0, 100, 100});
  r.pred_regions = std::vector<NormBBox>{};
  EXPECT_FALSE(GroundingCorrect(r));
  r.pred_regions = std::vector<NormBBox>{{0, 0, 100, 100}, {0, 0, 100, 100}};
  EXPECT_FALSE(GroundingCorrect(r));
  r.pred_regions.reset();
  EXPECT_FALSE(GroundingCorrect(r));
  r.label_regions.reset();
  EXPECT_THROW(GroundingCorrect(r), Error);
}

TEST(GroundingTest, AccuracyParallelAndMonotone) {
  std::vector<EvalRecord> recs;
  for (int i = 0; i < 200; ++i) {
    recs.push_back(Ground({0, 0, 100, 20 + (i % 80)}, {0, 0, 100, 100}, std::to_string(i)));
  }
  const double serial = GroundingAccuracy(recs, 0.5, Exec::kSerial);
  EXPECT_EQ(serial, GroundingAccuracy(recs, 0.5, Exec::kParallel));
  // Adding a correct record never lowers accuracy; adding a wrong one never raises it.
  auto plus = recs;
  plus.push_back(Ground({0, 0, 100, 100}, {0, 0, 100, 100}));
  EXPECT_GE(GroundingAccuracy(plus), serial);
  auto minus = recs;
  minus.push_back(Ground({0, 0, 10, 10}, {500, 500, 600, 600}));
  EXPECT_LE(GroundingAccuracy(minus), serial);
  EXPECT_THROW(GroundingAccuracy(std::span<const EvalRecord>{}), Error);
}

TEST(F1Test, Examples) {
  const bool p1[] = {true, true, false, false};
  const bool l1[] = {true, false, true, false};
  EXPECT_DOUBLE_EQ(F1Binary(p1, l1), 0.5);
  const bool p2[] = {false, false};
  const bool l2[] = {true, false};
  EXPECT_DOUBLE_EQ(F1Binary(p2, l2), 0.0);
  const bool p3[] = {true, true, true};
  const bool l3[] = {true, true, false};
  EXPECT_DOUBLE_EQ(F1Binary(p3, l3), 0.8);
  EXPECT_THROW(F1Binary(p3, l2), Error);
}

TEST(ParseYesNoTest, Prefix) {
  EXPECT_TRUE(ParseYesNo("Yes."));
  EXPECT_TRUE(ParseYesNo("  yes, it is tappable"));
  EXPECT_FALSE(ParseYesNo("No."));
  EXPECT_FALSE(ParseYesNo("I think yes"));
}

TEST(BoxSetF1Test, GreedyMatching) {
  const std::vector<NormBBox> labels = {{0, 0, 100, 100}, {200, 200, 300, 300}};
  const std::vector<NormBBox> preds = {{0, 0, 100, 90}, {600, 600, 700, 700}};
  EXPECT_DOUBLE_EQ(BoxSetF1(preds, labels), 0.5);
  EXPECT_DOUBLE_EQ(BoxSetF1(labels, labels), 1.0);
  const std::vector<NormBBox> dup = {{0, 0, 100, 100}, {0, 0, 100, 100}};
  EXPECT_DOUBLE_EQ(BoxSetF1(dup, labels), 0.5);
  EXPECT_DOUBLE_EQ(BoxSetF1({}, labels), 0.0);
  EXPECT_DOUBLE_EQ(BoxSetF1({}, {}), 1.0);
}

TEST(ClassAccuracyTest, Canonicalizes) {
  auto rec = [](std::string p, std::string l) {
    EvalRecord r;
    r.prediction = std::move(p);
    r.label = std::move(l);
    return r;
  };
  const std::vector<EvalRecord> recs = {rec("button.", "Button"), rec("Toggle (Checked)", "Toggle"),
                                        rec("slider", "Slider"), rec("Icon", "Button")};
  EXPECT_DOUBLE_EQ(ClassAccuracy(recs), 0.75);
}

TEST(ExactMatchTest, TrimsOnly) {
  EXPECT_EQ(ExactMatch(" Hello ", "Hello"), 1);
  EXPECT_EQ(ExactMatch("hello", "Hello"), 0);
}

TEST(JudgeTest, RatioAndParse) {
  EXPECT_DOUBLE_EQ(JudgeScoreRatio(8, 10), 80.0);
  EXPECT_DOUBLE_EQ(JudgeScoreRatio(9, 6), 150.0);
  EXPECT_THROW(JudgeScoreRatio(5, 0), Error);
  EXPECT_DOUBLE_EQ(ParseJudgeScore("Score: 7/10"), 7);
  EXPECT_DOUBLE_EQ(ParseJudgeScore("I give it 8.5 / 10"), 8.5);
  EXPECT_DOUBLE_EQ(ParseJudgeScore("6"), 6);
  EXPECT_THROW(ParseJudgeScore("excellent"), Error);
}

TEST(JudgeTest, PromptLayout) {
  EXPECT_EQ(JudgePrompt("Q?", "A."),
            "Question:\nQ?\n\nAnswer:\nA.\n\nReply with the score only, in the form "
            "\"Score: N/10\".");
  const auto rubric = LoadDefaultJudgeRubric();
  EXPECT_EQ(rubric.version, "judge_rubric_v1");
  EXPECT_FALSE(rubric.text.empty());
}

TEST(JudgeTest, LlmScoresBothAnswers) {
  const auto rubric = LoadDefaultJudgeRubric();
  EvalRecord r;
  r.sample_id = "x";
  r.task = Task::kDetailedDescription;
  r.question = "Describe.";
  r.label = "gold";
  r.prediction = "guess";
  ReplayClient client;
  client.Add(JudgePrompt("Describe.", "gold"), rubric.text, "Score: 10/10");
  client.Add(JudgePrompt("Describe.", "guess"), rubric.text, "Score: 8/10");
  std::vector<EvalRecord> recs = {r};
  recs.push_back(r);
  recs[1].sample_id = "y";
  recs[1].prediction = "unknown";
  const auto summary = JudgeRecords(recs, client, rubric);
  EXPECT_EQ(summary.judged, 1);
  ASSERT_EQ(summary.excluded.size(), 1u);
  EXPECT_EQ(summary.excluded[0].first, "y");
  ASSERT_TRUE(recs[0].judge.has_value());
  EXPECT_DOUBLE_EQ(recs[0].judge->pred, 8);
  EXPECT_DOUBLE_EQ(recs[0].judge->label, 10);
  const auto report = Aggregate(recs);
  EXPECT_DOUBLE_EQ(report.Find(Platform::kIphone, Task::kDetailedDescription)->value, 80.0);
  EXPECT_EQ(report.unjudged, 1u);
}

EvalRecord Rec(Task task, Platform p, std::string pred, std::string label, std::string id) {
  EvalRecord r;
  r.sample_id = std::move(id);
  r.task = task;
  r.platform = p;
  r.prediction = std::move(pred);
  r.label = std::move(label);
  return r;
}

TEST(AggregateTest, GroupMeansAndOmissions) {
  std::vector<EvalRecord> recs;
  auto add = [&](Task t, int hits) {
    for (int i = 0; i < 100; ++i) {
      const std::string label = t == Task::kOcr ? "Hello" : "Button";
      recs.push_back(Rec(t, Platform::kIphone, i < hits ? label : "Other", label,
                         std::string(TaskName(t)) + std::to_string(i)));
    }
  };
  add(Task::kOcr, 80);
  add(Task::kIconRecognition, 82);
  add(Task::kWidgetClassification, 85);
  auto listing = Rec(Task::kWidgetListing, Platform::kIphone, "", "", "l");
  listing.pred_regions = std::vector<NormBBox>{};
  listing.label_regions = std::vector<NormBBox>{{0, 0, 10, 10}};
  recs.push_back(listing);
  const auto report = Aggregate(recs);
  const auto* ref = report.FindAggregate("Ref-i");
  ASSERT_NE(ref, nullptr);
  EXPECT_NEAR(ref->value, (80.0 + 82.0 + 85.0) / 3, 1e-9);
  EXPECT_EQ(ref->tasks.size(), 3u);
  EXPECT_EQ(report.FindAggregate("Ref-A"), nullptr);
  EXPECT_EQ(report.FindAggregate("Grd-i"), nullptr);
  EXPECT_EQ(report.FindAggregate("S2W"), nullptr);
  ASSERT_NE(report.Find(Platform::kIphone, Task::kWidgetListing), nullptr);
  EXPECT_EQ(report.Find(Platform::kIphone, Task::kWidgetListing)->value, 0.0);
  for (const auto& a : report.aggregates) {
    for (Task t : a.tasks) EXPECT_NE(t, Task::kWidgetListing);
  }
  EXPECT_NE(report.Table().find("Ref-i"), std::string::npos);
  EXPECT_TRUE(report.ToJson().contains("aggregates"));
}

TEST(AggregateTest, SpotlightMetrics) {
  std::vector<EvalRecord> recs;
  recs.push_back(Rec(Task::kTaperception, Platform::kAndroid, "Yes.", "Yes.", "t1"));
  recs.push_back(Rec(Task::kTaperception, Platform::kAndroid, "No.", "Yes.", "t2"));
  recs.push_back(Rec(Task::kScreen2Words, Platform::kAndroid, "settings page", "settings page",
                     "s1"));
  recs.push_back(Rec(Task::kScreen2Words, Platform::kAndroid, "login form", "sign in page", "s2"));
  const auto report = Aggregate(recs);
  EXPECT_NEAR(report.FindAggregate("TaP")->value, 100.0 * 2.0 / 3.0, 1e-9);
  ASSERT_NE(report.FindAggregate("S2W"), nullptr);
  EXPECT_GT(report.FindAggregate("S2W")->value, 0.0);
  EXPECT_EQ(report.cider_variant, "pycocoevalcap-1.2");
}

TEST(JoinPredictionsTest, ResolvesSomLabels) {
  TaskSample s;
  s.sample_id = "iphone-find_text-s-a";
  s.task = Task::kFindText;
  s.screen_id = "s";
  s.turns = {MakeTurn(Role::kUser, "Find it"), MakeTurn(Role::kAssistant, "[0, 0, 499, 499]")};
  SomLabelMap map;
  map.image_width = 200;
  map.image_height = 200;
  map.entries.push_back({1, "a", {0, 0, 100, 100}, LabelPlacement::kInsideTopLeft});
  const std::vector<TaskSample> gold = {s};
  const auto recs = JoinPredictions(gold, {{s.sample_id, "Label 1"}}, {{"s", map}});
  ASSERT_EQ(recs.size(), 1u);
  ASSERT_TRUE(recs[0].pred_regions.has_value());
  EXPECT_EQ(recs[0].pred_regions->front(), (NormBBox{0, 0, 500, 500}));
  EXPECT_TRUE(GroundingCorrect(recs[0]));
  EXPECT_THROW(JoinPredictions(gold, {{"nope", "x"}}), Error);
}

TEST(ReadPredictionsTest, DuplicatesRejected) {
  testing::TempDir dir;
  WriteFile(dir.path() / "p.jsonl",
            "{\"sample_id\": \"a\", \"prediction\": \"x\"}\n"
            "{\"sample_id\": \"a\", \"prediction\": \"y\"}\n");
  EXPECT_THROW(ReadPredictionsJsonl(dir.path() / "p.jsonl"), Error);
}

}  // namespace
}  // namespace uiground
