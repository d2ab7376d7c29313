// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#include "uiground/geometry.h"

#include <gtest/gtest.h>

#include <random>

#include "uiground/error.h"
#include "uiground/hashing.h"

namespace uiground {
namespace {

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kSchema;
}

// Counts unit cells covered by integer boxes on a small grid.
double PixelIou(const BBox& a, const BBox& b) {
  int inter = 0, uni = 0;
  for (int y = 0; y < 64; ++y) {
    for (int x = 0; x < 64; ++x) {
      const bool in_a = x >= a.x1 && x < a.x2 && y >= a.y1 && y < a.y2;
      const bool in_b = x >= b.x1 && x < b.x2 && y >= b.y1 && y < b.y2;
      inter += in_a && in_b;
      uni += in_a || in_b;
    }
  }
  return uni == 0 ? 0.0 : static_cast<double>(inter) / uni;
}

BBox RandomBox(Rng& rng) {
  const double x1 = rng.Below(64), x2 = rng.Below(65);
  const double y1 = rng.Below(64), y2 = rng.Below(65);
  return {std::min(x1, x2), std::min(y1, y2), std::max(x1, x2), std::max(y1, y2)};
}

TEST(IouTest, IdenticalBoxesScoreOne) {
  EXPECT_DOUBLE_EQ(Iou({0, 0, 10, 10}, {0, 0, 10, 10}), 1.0);
}

TEST(IouTest, DisjointBoxesScoreZero) {
  EXPECT_DOUBLE_EQ(Iou({0, 0, 10, 10}, {20, 20, 30, 30}), 0.0);
}

TEST(IouTest, HalfOverlap) {
  EXPECT_NEAR(Iou({0, 0, 10, 10}, {5, 0, 15, 10}), 50.0 / 150.0, 1e-12);
}

TEST(IouTest, ZeroAreaUnionIsZero) { EXPECT_EQ(Iou({3, 3, 3, 3}, {3, 3, 3, 3}), 0.0); }

TEST(IouTest, RejectsInvertedBox) {
  EXPECT_EQ(CodeOf([] { Iou({5, 0, 1, 4}, {0, 0, 1, 1}); }), ErrorCode::kMalformedGeometry);
}

TEST(IouTest, MatchesPixelOracleOnRandomBoxes) {
  Rng rng(99);
  for (int i = 0; i < 300; ++i) {
    const BBox a = RandomBox(rng), b = RandomBox(rng);
    ASSERT_NEAR(Iou(a, b), PixelIou(a, b), 1e-9);
  }
}

TEST(IouTest, SymmetricAndBounded) {
  Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    const BBox a = RandomBox(rng), b = RandomBox(rng);
    const double v = Iou(a, b);
    EXPECT_EQ(v, Iou(b, a));
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(BatchIouTest, ParallelMatchesSerialBitForBit) {
  Rng rng(11);
  std::vector<BoxPair> pairs;
  for (int i = 0; i < 2000; ++i) pairs.emplace_back(RandomBox(rng), RandomBox(rng));
  EXPECT_EQ(BatchIou(pairs, Exec::kSerial), BatchIou(pairs, Exec::kParallel));
}

TEST(BatchIouTest, PropagatesValidationErrors) {
  std::vector<BoxPair> pairs(100, BoxPair{{0, 0, 1, 1}, {0, 0, 1, 1}});
  pairs[57].first = {2, 0, 1, 1};
  EXPECT_EQ(CodeOf([&] { BatchIou(pairs, Exec::kParallel); }), ErrorCode::kMalformedGeometry);
}

TEST(NormalizeTest, Corners) {
  EXPECT_EQ(NormalizeBBox({0, 0, 400, 800}, 400, 800), (NormBBox{0, 0, 999, 999}));
}

TEST(NormalizeTest, RoundsToNearest) {
  // 100/400*999 = 249.75, 50/800*999 = 62.4375.
  EXPECT_EQ(NormalizeBBox({100, 50, 200, 400}, 400, 800), (NormBBox{250, 62, 500, 500}));
}

TEST(NormalizeTest, OutOfBoundsBox) {
  EXPECT_EQ(CodeOf([] { NormalizeBBox({0, 0, 401, 10}, 400, 800); }), ErrorCode::kOutOfBounds);
}

TEST(NormalizeTest, RoundTripWithinOnePixel) {
  Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    const double w = 100 + rng.Below(2000), h = 100 + rng.Below(2000);
    BBox b{double(rng.Below(100)), double(rng.Below(100)), 0, 0};
    b.x2 = b.x1 + rng.Below(static_cast<std::uint64_t>(w - b.x1));
    b.y2 = b.y1 + rng.Below(static_cast<std::uint64_t>(h - b.y1));
    const BBox back = DenormalizeBBox(NormalizeBBox(b, w, h), w, h);
    const double tol_x = w / 999.0, tol_y = h / 999.0;
    EXPECT_NEAR(back.x1, b.x1, tol_x);
    EXPECT_NEAR(back.y2, b.y2, tol_y);
  }
}

TEST(TokenTest, CanonicalForm) {
  EXPECT_EQ(BBoxToToken({1, 2, 300, 999}), "[1, 2, 300, 999]");
}

TEST(TokenTest, ParseToleratesWhitespace) {
  EXPECT_EQ(ParseBBoxToken(" [ 1 ,2,\t300 , 999 ] "), (NormBBox{1, 2, 300, 999}));
}

TEST(TokenTest, RoundTrip) {
  Rng rng(8);
  for (int i = 0; i < 500; ++i) {
    int a = rng.Below(1000), b = rng.Below(1000), c = rng.Below(1000), d = rng.Below(1000);
    const NormBBox n{std::min(a, c), std::min(b, d), std::max(a, c), std::max(b, d)};
    EXPECT_EQ(ParseBBoxToken(BBoxToToken(n)), n);
  }
}

TEST(TokenTest, Errors) {
  EXPECT_EQ(CodeOf([] { ParseBBoxToken("[1, 2, 3]"); }), ErrorCode::kMalformedToken);
  EXPECT_EQ(CodeOf([] { ParseBBoxToken("1, 2, 3, 4"); }), ErrorCode::kMalformedToken);
  EXPECT_EQ(CodeOf([] { ParseBBoxToken("[1, 2, 3, 4] x"); }), ErrorCode::kMalformedToken);
  EXPECT_EQ(CodeOf([] { ParseBBoxToken("[1, 2, 1000, 4]"); }), ErrorCode::kOutOfRange);
  EXPECT_EQ(CodeOf([] { ParseBBoxToken("[-1, 2, 3, 4]"); }), ErrorCode::kOutOfRange);
  EXPECT_EQ(CodeOf([] { ParseBBoxToken("[5, 2, 3, 4]"); }), ErrorCode::kInvertedCoordinates);
  // Range is checked before ordering.
  EXPECT_EQ(CodeOf([] { ParseBBoxToken("[5, 2, 3, 1000]"); }), ErrorCode::kOutOfRange);
}

TEST(TokenTest, ExtractFindsAllTokensAndSkipsOtherBrackets) {
  const std::string text = "Tap [note] then [1, 2, 3, 4] and [10,20,30,40].";
  const auto found = ExtractBBoxTokens(text);
  ASSERT_EQ(found.size(), 2u);
  EXPECT_EQ(found[0].box, (NormBBox{1, 2, 3, 4}));
  EXPECT_EQ(text.substr(found[1].pos, found[1].len), "[10,20,30,40]");
}

TEST(TokenTest, ExtractRejectsInvalidGroup) {
  EXPECT_EQ(CodeOf([] { ExtractBBoxTokens("ok [1, 2, 3, 4] bad [9, 9, 1, 1]"); }),
            ErrorCode::kInvertedCoordinates);
}

TEST(TokenTest, StripRemovesTokens) {
  EXPECT_EQ(StripBBoxTokens("a [1, 2, 3, 4] b"), "a  b");
}

}  // namespace
}  // namespace uiground
