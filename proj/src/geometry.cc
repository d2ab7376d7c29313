// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#include "uiground/geometry.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>

#include "uiground/error.h"

namespace uiground {

namespace {

std::string Describe(const BBox& b) {
  return "(" + std::to_string(b.x1) + ", " + std::to_string(b.y1) + ", " +
         std::to_string(b.x2) + ", " + std::to_string(b.y2) + ")";
}

bool IsBlank(char c) { return c == ' ' || c == '\t'; }
bool IsDigit(char c) { return c >= '0' && c <= '9'; }

struct RawToken {
  std::size_t len = 0;
  std::array<std::int64_t, 4> values{};
};

// Lexes '[' int ',' int ',' int ',' int ']' with optional blanks starting at
// text[pos]. Integers may carry a leading '-' so that negative values are
// reported as out of range rather than as malformed.
std::optional<RawToken> LexFourInts(std::string_view text, std::size_t pos) {
  std::size_t i = pos;
  auto skip = [&] {
    while (i < text.size() && IsBlank(text[i])) ++i;
  };
  if (i >= text.size() || text[i] != '[') return std::nullopt;
  ++i;
  RawToken tok;
  for (int k = 0; k < 4; ++k) {
    skip();
    bool negative = false;
    if (i < text.size() && text[i] == '-') {
      negative = true;
      ++i;
    }
    if (i >= text.size() || !IsDigit(text[i])) return std::nullopt;
    std::int64_t v = 0;
    while (i < text.size() && IsDigit(text[i])) {
      if (v < 1'000'000'000) v = v * 10 + (text[i] - '0');
      ++i;
    }
    tok.values[k] = negative ? -v : v;
    skip();
    const char expected = (k == 3) ? ']' : ',';
    if (i >= text.size() || text[i] != expected) return std::nullopt;
    ++i;
  }
  tok.len = i - pos;
  return tok;
}

NormBBox CheckedNorm(const RawToken& tok, std::size_t offset) {
  const auto where = " at offset " + std::to_string(offset);
  for (auto v : tok.values) {
    if (v < 0 || v > kNormMax) {
      throw Error(ErrorCode::kOutOfRange,
                  "coordinate " + std::to_string(v) + " outside [0, 999]" +
                      where);
    }
  }
  NormBBox n{static_cast<int>(tok.values[0]), static_cast<int>(tok.values[1]),
             static_cast<int>(tok.values[2]), static_cast<int>(tok.values[3])};
  if (n.x1 > n.x2 || n.y1 > n.y2) {
    throw Error(ErrorCode::kInvertedCoordinates,
                BBoxToToken(n) + " has x1 > x2 or y1 > y2" + where);
  }
  return n;
}

int MapToGrid(double c, double dim) {
  // std::round rounds half away from zero.
  return static_cast<int>(std::round(c / dim * kNormMax));
}

}  // namespace

void ValidateBBox(const BBox& b) {
  const bool finite = std::isfinite(b.x1) && std::isfinite(b.y1) &&
                      std::isfinite(b.x2) && std::isfinite(b.y2);
  if (!finite || b.x1 > b.x2 || b.y1 > b.y2 || b.x1 < 0 || b.y1 < 0) {
    throw Error(ErrorCode::kMalformedGeometry, "invalid box " + Describe(b));
  }
}

BBox UnionBBox(const BBox& a, const BBox& b) {
  return {std::min(a.x1, b.x1), std::min(a.y1, b.y1), std::max(a.x2, b.x2),
          std::max(a.y2, b.y2)};
}

double HorizontalOverlap(const BBox& a, const BBox& b) {
  return std::max(0.0, std::min(a.x2, b.x2) - std::max(a.x1, b.x1));
}

double Iou(const BBox& a, const BBox& b) {
  ValidateBBox(a);
  ValidateBBox(b);
  const double iw = HorizontalOverlap(a, b);
  const double ih = std::max(0.0, std::min(a.y2, b.y2) - std::max(a.y1, b.y1));
  const double inter = iw * ih;
  const double uni = a.Area() + b.Area() - inter;
  if (uni <= 0) return 0.0;
  return inter / uni;
}

std::vector<double> BatchIou(std::span<const BoxPair> pairs, Exec exec) {
  std::vector<double> out(pairs.size());
  const auto n = static_cast<std::int64_t>(pairs.size());
  if (exec == Exec::kSerial) {
    for (std::int64_t i = 0; i < n; ++i) {
      out[i] = Iou(pairs[i].first, pairs[i].second);
    }
    return out;
  }
  // Validation errors are collected and rethrown outside the team.
  std::optional<Error> failure;
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      out[i] = Iou(pairs[i].first, pairs[i].second);
    } catch (const Error& e) {
#pragma omp critical(uiground_batch_iou)
      if (!failure) failure = e;
    }
  }
  if (failure) throw *failure;
  return out;
}

void ValidateNormBBox(const NormBBox& n) {
  for (int v : {n.x1, n.y1, n.x2, n.y2}) {
    if (v < 0 || v > kNormMax) {
      throw Error(ErrorCode::kOutOfRange,
                  "normalized coordinate " + std::to_string(v));
    }
  }
  if (n.x1 > n.x2 || n.y1 > n.y2) {
    throw Error(ErrorCode::kInvertedCoordinates, BBoxToToken(n));
  }
}

NormBBox NormalizeBBox(const BBox& b, double screen_w, double screen_h) {
  if (!(screen_w > 0) || !(screen_h > 0)) {
    throw Error(ErrorCode::kMalformedGeometry, "non-positive screen size");
  }
  ValidateBBox(b);
  if (b.x2 > screen_w || b.y2 > screen_h) {
    throw Error(ErrorCode::kOutOfBounds,
                Describe(b) + " exceeds " + std::to_string(screen_w) + "x" +
                    std::to_string(screen_h));
  }
  return {MapToGrid(b.x1, screen_w), MapToGrid(b.y1, screen_h),
          MapToGrid(b.x2, screen_w), MapToGrid(b.y2, screen_h)};
}

BBox DenormalizeBBox(const NormBBox& n, double screen_w, double screen_h) {
  ValidateNormBBox(n);
  return {n.x1 / double{kNormMax} * screen_w, n.y1 / double{kNormMax} * screen_h,
          n.x2 / double{kNormMax} * screen_w,
          n.y2 / double{kNormMax} * screen_h};
}

std::string BBoxToToken(const NormBBox& n) {
  return "[" + std::to_string(n.x1) + ", " + std::to_string(n.y1) + ", " +
         std::to_string(n.x2) + ", " + std::to_string(n.y2) + "]";
}

NormBBox ParseBBoxToken(std::string_view s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && IsBlank(s[begin])) ++begin;
  while (end > begin && IsBlank(s[end - 1])) --end;
  const auto body = s.substr(begin, end - begin);
  const auto tok = LexFourInts(body, 0);
  if (!tok || tok->len != body.size()) {
    throw Error(ErrorCode::kMalformedToken,
                "not a box token: \"" + std::string(s) + "\"");
  }
  return CheckedNorm(*tok, begin);
}

std::vector<BBoxTokenMatch> ExtractBBoxTokens(std::string_view text) {
  std::vector<BBoxTokenMatch> found;
  std::size_t pos = text.find('[');
  while (pos != std::string_view::npos) {
    if (const auto tok = LexFourInts(text, pos)) {
      found.push_back({pos, tok->len, CheckedNorm(*tok, pos)});
      pos = text.find('[', pos + tok->len);
    } else {
      pos = text.find('[', pos + 1);
    }
  }
  return found;
}

std::string StripBBoxTokens(std::string_view text) {
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '[') {
      if (const auto tok = LexFourInts(text, i)) {
        i += tok->len;
        continue;
      }
    }
    out.push_back(text[i++]);
  }
  return out;
}

}  // namespace uiground
