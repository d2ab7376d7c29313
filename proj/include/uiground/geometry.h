// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef UIGROUND_GEOMETRY_H_
#define UIGROUND_GEOMETRY_H_

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "uiground/parallel.h"

namespace uiground {

// Axis-aligned box in pixels, origin top-left. Covers [x1,x2]x[y1,y2] as
// real intervals.
struct BBox {
  double x1 = 0;
  double y1 = 0;
  double x2 = 0;
  double y2 = 0;

  double Width() const { return x2 - x1; }
  double Height() const { return y2 - y1; }
  double Area() const { return Width() * Height(); }

  friend bool operator==(const BBox&, const BBox&) = default;
};

// Throws kMalformedGeometry unless x1 <= x2, y1 <= y2 and all coordinates
// are non-negative and finite.
void ValidateBBox(const BBox& b);
BBox UnionBBox(const BBox& a, const BBox& b);
// Length of the overlap of the x-intervals (0 when disjoint).
double HorizontalOverlap(const BBox& a, const BBox& b);

// |a ∩ b| / |a ∪ b|, or 0 when the union has zero area.
double Iou(const BBox& a, const BBox& b);

using BoxPair = std::pair<BBox, BBox>;
std::vector<double> BatchIou(std::span<const BoxPair> pairs,
                             Exec exec = Exec::kParallel);

// Screen-relative box on the integer grid [0, 999].
struct NormBBox {
  int x1 = 0;
  int y1 = 0;
  int x2 = 0;
  int y2 = 0;

  friend auto operator<=>(const NormBBox&, const NormBBox&) = default;
};

inline constexpr int kNormMax = 999;

void ValidateNormBBox(const NormBBox& n);

// Maps each coordinate with round(c / dim * 999), rounding half away from
// zero. Throws kOutOfBounds when b leaves [0,w]x[0,h].
NormBBox NormalizeBBox(const BBox& b, double screen_w, double screen_h);
BBox DenormalizeBBox(const NormBBox& n, double screen_w, double screen_h);

// Canonical text form "[x1, y1, x2, y2]".
std::string BBoxToToken(const NormBBox& n);

// Accepts the canonical form with arbitrary spaces/tabs around brackets,
// numbers and commas. Errors: kMalformedToken, kOutOfRange,
// kInvertedCoordinates.
NormBBox ParseBBoxToken(std::string_view s);

struct BBoxTokenMatch {
  std::size_t pos = 0;  // byte offset of '['
  std::size_t len = 0;  // through the closing ']'
  NormBBox box;
};

// Finds every bracketed group of four integers in free text and parses it.
// Brackets holding anything else are ignored. A four-integer group that
// fails validation throws, with the byte offset in the message.
std::vector<BBoxTokenMatch> ExtractBBoxTokens(std::string_view text);

// Removes every box token (as found by ExtractBBoxTokens' scanner, valid or
// not) from the text.
std::string StripBBoxTokens(std::string_view text);

}  // namespace uiground

#endif  // UIGROUND_GEOMETRY_H_
