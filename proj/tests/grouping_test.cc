// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#include "uiground/grouping.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "test_util.h"
#include "uiground/error.h"
#include "uiground/hashing.h"

namespace uiground {
namespace {

using testing::El;
using testing::Screen;

TEST(CanonicalizeTypeTest, MergesCheckedStates) {
  EXPECT_EQ(CanonicalizeType("Checkbox (Unchecked)").kind, UiKind::kCheckbox);
  EXPECT_EQ(CanonicalizeType("Checkbox (Checked)").kind, UiKind::kCheckbox);
  EXPECT_EQ(CanonicalizeType("Toggle (Checked)").kind, UiKind::kToggle);
  EXPECT_EQ(CanonicalizeType("toggle(unchecked)").kind, UiKind::kToggle);
}

TEST(CanonicalizeTypeTest, KnownLabels) {
  EXPECT_EQ(CanonicalizeType("Button").kind, UiKind::kButton);
  EXPECT_EQ(CanonicalizeType("text").kind, UiKind::kText);
  EXPECT_EQ(CanonicalizeType("Tab").Name(), "Tab");
}

TEST(CanonicalizeTypeTest, UnknownKeepsRawLabel) {
  const UiType t = CanonicalizeType("Slider");
  EXPECT_EQ(t.kind, UiKind::kOther);
  EXPECT_EQ(t.Name(), "Slider");
  EXPECT_EQ(CanonicalizeType("Button (Checked)").kind, UiKind::kOther);
}

TEST(GroupTextLinesTest, MergesStackedLines) {
  const std::vector<UIElement> in = {El("a", "Text", {0, 0, 100, 20}, "Hello"),
                                     El("b", "Text", {0, 24, 100, 44}, "World")};
  const auto out = GroupTextLines(in, {});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].text, "Hello World");
  EXPECT_EQ(out[0].bbox, (BBox{0, 0, 100, 44}));
  EXPECT_EQ(out[0].id, "a");
  EXPECT_EQ(OriginalIds(out[0]), (std::vector<std::string>{"a", "b"}));
}

TEST(GroupTextLinesTest, LargeGapStaysSplit) {
  const std::vector<UIElement> in = {El("a", "Text", {0, 0, 100, 20}, "Hello"),
                                     El("b", "Text", {0, 50, 100, 70}, "World")};
  EXPECT_EQ(GroupTextLines(in, {}).size(), 2u);
}

TEST(GroupTextLinesTest, NonTextPassesThrough) {
  const std::vector<UIElement> in = {El("a", "Text", {0, 0, 100, 20}, "Hello"),
                                     El("b", "Button", {0, 22, 100, 42}, "Go")};
  const auto out = GroupTextLines(in, {});
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[1].id, "b");
  EXPECT_EQ(out[1].bbox, in[1].bbox);
}

TEST(GroupTextLinesTest, NeedsHorizontalOverlap) {
  const std::vector<UIElement> in = {El("a", "Text", {0, 0, 100, 20}, "Left"),
                                     El("b", "Text", {200, 24, 300, 44}, "Right")};
  EXPECT_EQ(GroupTextLines(in, {}).size(), 2u);
}

TEST(GroupTextLinesTest, ChainsThreeLines) {
  const std::vector<UIElement> in = {El("c", "Text", {0, 48, 80, 68}, "three"),
                                     El("a", "Text", {0, 0, 100, 20}, "one"),
                                     El("b", "Text", {0, 24, 90, 44}, "two")};
  const auto out = GroupTextLines(in, {});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].text, "one two three");
}

TEST(GroupPictureCaptionTest, AbsorbsCaption) {
  const std::vector<UIElement> in = {El("p", "Picture", {0, 0, 200, 200}),
                                     El("t", "Text", {10, 210, 190, 240}, "A cat")};
  const auto out = GroupPictureCaption(in, {});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].type.kind, UiKind::kPicture);
  EXPECT_EQ(out[0].text, "A cat");
  EXPECT_EQ(out[0].bbox, (BBox{0, 0, 200, 240}));
}

TEST(GroupPictureCaptionTest, FarTextIgnored) {
  const std::vector<UIElement> in = {El("p", "Picture", {0, 0, 200, 200}),
                                     El("t", "Text", {10, 280, 190, 300}, "A cat")};
  EXPECT_EQ(GroupPictureCaption(in, {}).size(), 2u);
}

TEST(GroupPictureCaptionTest, NoTextBelow) {
  const std::vector<UIElement> in = {El("t", "Text", {10, 0, 190, 20}, "Above"),
                                     El("p", "Picture", {0, 30, 200, 230})};
  const auto out = GroupPictureCaption(in, {});
  ASSERT_EQ(out.size(), 2u);
  EXPECT_FALSE(out[1].text.has_value());
}

TEST(GroupPictureCaptionTest, NearestCaptionWins) {
  const std::vector<UIElement> in = {El("p", "Picture", {0, 0, 200, 200}),
                                     El("far", "Text", {10, 220, 190, 240}, "far"),
                                     El("near", "Text", {10, 205, 190, 215}, "near")};
  const auto out = GroupPictureCaption(in, {});
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].text, "near");
}

TEST(GroupingConfigTest, RejectsOutOfRange) {
  GroupingConfig cfg;
  cfg.line_merge_gap = 0;
  EXPECT_THROW(cfg.Validate(), Error);
  cfg.line_merge_gap = 2.5;
  EXPECT_THROW(cfg.Validate(), Error);
}

// Random screens of stacked text lines, pictures and buttons.
ScreenAnnotation RandomScreen(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<UIElement> els;
  double y = 0;
  for (int i = 0; i < 25; ++i) {
    const double x = rng.Below(100);
    const double w = 40 + rng.Below(200);
    const double h = 10 + rng.Below(20);
    const double gap = rng.Below(25);
    const std::string id = "e" + std::to_string(i);
    switch (rng.Below(4)) {
      case 0: els.push_back(El(id, "Picture", {x, y, x + w, y + 3 * h})); y += 3 * h; break;
      case 1: els.push_back(El(id, "Button", {x, y, x + w, y + h}, "b" + id)); y += h; break;
      default: els.push_back(El(id, "Text", {x, y, x + w, y + h}, "t" + id)); y += h; break;
    }
    y += gap;
  }
  return Screen("r" + std::to_string(seed), els, 400, static_cast<int>(y) + 10);
}

class GroupingPropertyTest : public ::testing::TestWithParam<int> {};

TEST_P(GroupingPropertyTest, ConservesIds) {
  const auto screen = RandomScreen(GetParam());
  const auto grouped = GroupScreen(screen, {});
  std::multiset<std::string> seen;
  for (const auto& e : grouped.elements) {
    for (const auto& id : OriginalIds(e)) seen.insert(id);
  }
  std::multiset<std::string> want;
  for (const auto& e : screen.elements) want.insert(e.id);
  EXPECT_EQ(seen, want);
}

TEST_P(GroupingPropertyTest, BoxIsUnionOfMembers) {
  const auto grouped = GroupScreen(RandomScreen(GetParam()), {});
  for (const auto& e : grouped.elements) {
    if (e.members.empty()) continue;
    BBox u = e.members.front().bbox;
    for (const auto& m : e.members) u = UnionBBox(u, m.bbox);
    EXPECT_EQ(e.bbox, u) << e.id;
  }
}

TEST_P(GroupingPropertyTest, Idempotent) {
  const auto once = GroupScreen(RandomScreen(GetParam()), {});
  const auto twice = GroupScreen(once, {});
  EXPECT_EQ(ToJson(twice), ToJson(once));
}

TEST_P(GroupingPropertyTest, ReadingOrder) {
  const auto grouped = GroupScreen(RandomScreen(GetParam()), {});
  for (std::size_t i = 1; i < grouped.elements.size(); ++i) {
    const auto& a = grouped.elements[i - 1].bbox;
    const auto& b = grouped.elements[i].bbox;
    EXPECT_TRUE(a.y1 < b.y1 || (a.y1 == b.y1 && a.x1 <= b.x1));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, GroupingPropertyTest, ::testing::Range(0, 40));

TEST(GroupScreensTest, ParallelMatchesSerial) {
  std::vector<ScreenAnnotation> screens;
  for (int i = 0; i < 30; ++i) screens.push_back(RandomScreen(100 + i));
  const auto a = GroupScreens(screens, {}, Exec::kSerial);
  const auto b = GroupScreens(screens, {}, Exec::kParallel);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(ToJson(a[i]), ToJson(b[i]));
}

}  // namespace
}  // namespace uiground
