// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef UIGROUND_SOM_H_
#define UIGROUND_SOM_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "uiground/geometry.h"
#include "uiground/image.h"
#include "uiground/screen.h"

namespace uiground {

struct SomStyle {
  int stroke = 4;
  int font_size = 14;

  void Validate() const;
};

enum class LabelPlacement { kInsideTopLeft, kAbove };

struct SomEntry {
  int label = 0;
  std::string element_id;
  BBox bbox;
  LabelPlacement placement = LabelPlacement::kInsideTopLeft;
};

// Labels are 1..N in entry order.
struct SomLabelMap {
  std::vector<SomEntry> entries;
  SomStyle style;
  int image_width = 0;
  int image_height = 0;

  std::size_t size() const { return entries.size(); }
  const SomEntry& Lookup(int label) const;
};

nlohmann::json ToJson(const SomLabelMap& map);
SomLabelMap SomLabelMapFromJson(const nlohmann::json& j);

// Strokes one magenta rectangle centred on the box edges. A zero-area box
// is drawn as a stroke-sized square dot.
Image RenderSingleRef(const Image& image, const BBox& box, const SomStyle& style = {});

struct SomRender {
  Image image;
  SomLabelMap map;
};

// Boxes and numeric labels for every element, numbered in reading order.
SomRender RenderSom(const Image& image, std::vector<UIElement> elements,
                    const SomStyle& style = {});

// Pixel size of a rendered label tag.
int LabelTagWidth(int label, int font_size);
int LabelTagHeight(int font_size);

// First run of digits in the answer, mapped through the label map.
const SomEntry& ResolveLabelAnswer(std::string_view answer, const SomLabelMap& map);

}  // namespace uiground

#endif  // UIGROUND_SOM_H_
