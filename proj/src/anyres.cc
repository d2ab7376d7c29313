// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#include "uiground/anyres.h"

#include <algorithm>

#include "uiground/error.h"

namespace uiground {

GridConfig SelectGrid(int width, int height) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kMalformedGeometry, "screen dimensions must be positive");
  }
  if (width > height) return {1, 2};
  return {2, 1};
}

std::vector<TileTransform> PlanTiles(int screen_w, int screen_h,
                                     const GridConfig& grid, int base_resolution) {
  if (screen_w <= 0 || screen_h <= 0 || base_resolution <= 0) {
    throw Error(ErrorCode::kMalformedGeometry, "non-positive tiling geometry");
  }
  if (!(grid == GridConfig{2, 1} || grid == GridConfig{1, 2})) {
    throw Error(ErrorCode::kConfig, "grid must be 2x1 or 1x2");
  }
  const double resized_w = static_cast<double>(grid.cols) * base_resolution;
  const double resized_h = static_cast<double>(grid.rows) * base_resolution;
  std::vector<TileTransform> tiles;
  for (int r = 0; r < grid.rows; ++r) {
    for (int c = 0; c < grid.cols; ++c) {
      tiles.push_back({r * grid.cols + c, c * base_resolution, r * base_resolution,
                       base_resolution, base_resolution, resized_w / screen_w,
                       resized_h / screen_h});
    }
  }
  return tiles;
}

std::optional<BBox> ProjectBBox(const BBox& b, const TileTransform& t) {
  const double x1 = std::clamp(b.x1 * t.scale_x - t.offset_x, 0.0, double(t.tile_w));
  const double y1 = std::clamp(b.y1 * t.scale_y - t.offset_y, 0.0, double(t.tile_h));
  const double x2 = std::clamp(b.x2 * t.scale_x - t.offset_x, 0.0, double(t.tile_w));
  const double y2 = std::clamp(b.y2 * t.scale_y - t.offset_y, 0.0, double(t.tile_h));
  if (x2 - x1 <= 0 || y2 - y1 <= 0) return std::nullopt;
  return BBox{x1, y1, x2, y2};
}

BBox UnprojectBBox(const BBox& tile_box, const TileTransform& t) {
  return {(tile_box.x1 + t.offset_x) / t.scale_x, (tile_box.y1 + t.offset_y) / t.scale_y,
          (tile_box.x2 + t.offset_x) / t.scale_x, (tile_box.y2 + t.offset_y) / t.scale_y};
}

std::vector<Image> PartitionImage(const Image& image,
                                  const std::vector<TileTransform>& tiles,
                                  Exec exec) {
  if (tiles.empty()) return {};
  int full_w = 0;
  int full_h = 0;
  for (const auto& t : tiles) {
    full_w = std::max(full_w, t.offset_x + t.tile_w);
    full_h = std::max(full_h, t.offset_y + t.tile_h);
  }
  const Image resized = ResizeBilinear(image, full_w, full_h, exec);
  std::vector<Image> out;
  for (const auto& t : tiles) {
    out.push_back(Crop(resized, t.offset_x, t.offset_y, t.tile_w, t.tile_h));
  }
  return out;
}

nlohmann::json ToJson(const TileTransform& t) {
  return {{"tile_index", t.tile_index}, {"offset_x", t.offset_x},
          {"offset_y", t.offset_y},     {"tile_w", t.tile_w},
          {"tile_h", t.tile_h},         {"scale_x", t.scale_x},
          {"scale_y", t.scale_y}};
}

}  // namespace uiground
