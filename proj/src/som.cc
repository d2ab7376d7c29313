// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#include "uiground/som.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>

#include "uiground/error.h"
#include "uiground/grouping.h"

namespace uiground {

namespace {

constexpr int kGlyphW = 5;
constexpr int kGlyphH = 7;

// 5x7 digit glyphs; bit 4 is the leftmost column.
constexpr std::array<std::array<std::uint8_t, kGlyphH>, 10> kDigits = {{
    {0x0E, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0E},  // 0
    {0x04, 0x0C, 0x04, 0x04, 0x04, 0x04, 0x0E},  // 1
    {0x0E, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1F},  // 2
    {0x1F, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0E},  // 3
    {0x02, 0x06, 0x0A, 0x12, 0x1F, 0x02, 0x02},  // 4
    {0x1F, 0x10, 0x1E, 0x01, 0x01, 0x11, 0x0E},  // 5
    {0x06, 0x08, 0x10, 0x1E, 0x11, 0x11, 0x0E},  // 6
    {0x1F, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08},  // 7
    {0x0E, 0x11, 0x11, 0x0E, 0x11, 0x11, 0x0E},  // 8
    {0x0E, 0x11, 0x11, 0x0F, 0x01, 0x02, 0x0C},  // 9
}};

int Scale(int font_size) { return std::max(1, font_size / kGlyphH); }

void FillRect(Image& img, int x0, int y0, int x1, int y1, Rgb c) {
  x0 = std::max(x0, 0);
  y0 = std::max(y0, 0);
  x1 = std::min(x1, img.width());
  y1 = std::min(y1, img.height());
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) img.set(x, y, c);
  }
}

void StrokeBox(Image& img, const BBox& box, int stroke) {
  const int x1 = static_cast<int>(std::lround(box.x1));
  const int y1 = static_cast<int>(std::lround(box.y1));
  const int x2 = static_cast<int>(std::lround(box.x2));
  const int y2 = static_cast<int>(std::lround(box.y2));
  const int out = stroke / 2;
  const int in = stroke - out;
  if (x1 == x2 || y1 == y2) {
    const int cx = (x1 + x2) / 2;
    const int cy = (y1 + y2) / 2;
    FillRect(img, cx - out, cy - out, cx + in, cy + in, kMagenta);
    return;
  }
  const int ox1 = x1 - out, oy1 = y1 - out, ox2 = x2 + out, oy2 = y2 + out;
  const int ix1 = x1 + in, iy1 = y1 + in, ix2 = x2 - in, iy2 = y2 - in;
  for (int y = std::max(oy1, 0); y < std::min(oy2, img.height()); ++y) {
    for (int x = std::max(ox1, 0); x < std::min(ox2, img.width()); ++x) {
      const bool inner = x >= ix1 && x < ix2 && y >= iy1 && y < iy2;
      if (!inner) img.set(x, y, kMagenta);
    }
  }
}

void DrawTag(Image& img, int label, int x0, int y0, int font_size) {
  const int s = Scale(font_size);
  const std::string digits = std::to_string(label);
  FillRect(img, x0, y0, x0 + LabelTagWidth(label, font_size),
           y0 + LabelTagHeight(font_size), kMagenta);
  int gx = x0 + s;
  const int gy = y0 + s;
  for (char d : digits) {
    const auto& glyph = kDigits[d - '0'];
    for (int row = 0; row < kGlyphH; ++row) {
      for (int col = 0; col < kGlyphW; ++col) {
        if (glyph[row] & (0x10 >> col)) {
          FillRect(img, gx + col * s, gy + row * s, gx + (col + 1) * s, gy + (row + 1) * s,
                   kWhite);
        }
      }
    }
    gx += (kGlyphW + 1) * s;
  }
}

void CheckInside(const Image& image, const BBox& box) {
  ValidateBBox(box);
  if (box.x1 < 0 || box.y1 < 0 || box.x2 > image.width() || box.y2 > image.height()) {
    throw Error(ErrorCode::kOutOfBounds, "box lies outside the image");
  }
}

std::string_view PlacementName(LabelPlacement p) {
  return p == LabelPlacement::kAbove ? "above" : "inside-top-left";
}

}  // namespace

void SomStyle::Validate() const {
  if (stroke < 1 || stroke > 64) throw Error(ErrorCode::kConfig, "stroke must be in [1, 64]");
  if (font_size < kGlyphH || font_size > 256) {
    throw Error(ErrorCode::kConfig, "font size must be in [7, 256]");
  }
}

const SomEntry& SomLabelMap::Lookup(int label) const {
  if (label < 1 || static_cast<std::size_t>(label) > entries.size()) {
    throw Error(ErrorCode::kUnknownLabel, "label " + std::to_string(label) + " not in 1.." +
                                              std::to_string(entries.size()));
  }
  return entries[label - 1];
}

int LabelTagWidth(int label, int font_size) {
  const int s = Scale(font_size);
  const int n = static_cast<int>(std::to_string(label).size());
  return (n * (kGlyphW + 1) + 1) * s;
}

int LabelTagHeight(int font_size) { return (kGlyphH + 2) * Scale(font_size); }

nlohmann::json ToJson(const SomLabelMap& map) {
  nlohmann::json labels = nlohmann::json::array();
  for (const auto& e : map.entries) {
    labels.push_back({{"label", e.label},
                      {"element_id", e.element_id},
                      {"bbox", BBoxToJson(e.bbox)},
                      {"placement", PlacementName(e.placement)}});
  }
  return {{"image_width", map.image_width},
          {"image_height", map.image_height},
          {"stroke", map.style.stroke},
          {"font_size", map.style.font_size},
          {"anchor", "top-left"},
          {"labels", labels}};
}

SomLabelMap SomLabelMapFromJson(const nlohmann::json& j) {
  try {
    SomLabelMap map;
    map.style.stroke = j.at("stroke").get<int>();
    map.style.font_size = j.at("font_size").get<int>();
    map.image_width = j.at("image_width").get<int>();
    map.image_height = j.at("image_height").get<int>();
    for (const auto& item : j.at("labels")) {
      SomEntry e;
      e.label = item.at("label").get<int>();
      e.element_id = item.at("element_id").get<std::string>();
      e.bbox = BBoxFromJson(item.at("bbox"));
      e.placement = item.value("placement", "") == "above" ? LabelPlacement::kAbove
                                                           : LabelPlacement::kInsideTopLeft;
      if (e.label != static_cast<int>(map.entries.size()) + 1) {
        throw Error(ErrorCode::kSchema, "labels must run 1..N in order");
      }
      map.entries.push_back(std::move(e));
    }
    return map;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string("label map: ") + e.what());
  }
}

Image RenderSingleRef(const Image& image, const BBox& box, const SomStyle& style) {
  style.Validate();
  CheckInside(image, box);
  Image out = image;
  StrokeBox(out, box, style.stroke);
  return out;
}

SomRender RenderSom(const Image& image, std::vector<UIElement> elements, const SomStyle& style) {
  style.Validate();
  for (const auto& e : elements) CheckInside(image, e.bbox);
  SortReadingOrder(elements);
  SomRender r{image, {{}, style, image.width(), image.height()}};
  for (const auto& e : elements) StrokeBox(r.image, e.bbox, style.stroke);
  const int tag_h = LabelTagHeight(style.font_size);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const auto& e = elements[i];
    const int label = static_cast<int>(i) + 1;
    const int x = static_cast<int>(std::lround(e.bbox.x1));
    int y = static_cast<int>(std::lround(e.bbox.y1));
    LabelPlacement placement = LabelPlacement::kInsideTopLeft;
    if (e.bbox.Height() < style.font_size) {
      placement = LabelPlacement::kAbove;
      y = std::max(0, y - tag_h);
    }
    DrawTag(r.image, label, x, y, style.font_size);
    r.map.entries.push_back({label, e.id, e.bbox, placement});
  }
  return r;
}

const SomEntry& ResolveLabelAnswer(std::string_view answer, const SomLabelMap& map) {
  const auto begin = std::find_if(answer.begin(), answer.end(),
                                  [](char c) { return c >= '0' && c <= '9'; });
  if (begin == answer.end()) {
    throw Error(ErrorCode::kUnparseableAnswer,
                "no label number in answer \"" + std::string(answer) + "\"");
  }
  const auto end =
      std::find_if(begin, answer.end(), [](char c) { return c < '0' || c > '9'; });
  const std::string_view digits(&*begin, static_cast<std::size_t>(end - begin));
  const auto first_nonzero = digits.find_first_not_of('0');
  if (first_nonzero == std::string_view::npos || digits.size() - first_nonzero > 9) {
    throw Error(ErrorCode::kUnknownLabel, "label " + std::string(digits) + " not in map");
  }
  return map.Lookup(std::stoi(std::string(digits)));
}

}  // namespace uiground
