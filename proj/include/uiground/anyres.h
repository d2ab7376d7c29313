// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef UIGROUND_ANYRES_H_
#define UIGROUND_ANYRES_H_

#include <optional>
#include <vector>

#include "json.hpp"
#include "uiground/geometry.h"
#include "uiground/image.h"

namespace uiground {

// Sub-image grid. Only {2 rows x 1 col} (portrait, cut horizontally) and
// {1 row x 2 cols} (landscape, cut vertically) are produced.
struct GridConfig {
  int rows = 2;
  int cols = 1;

  friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

// Geometry of one tile. Offsets and sizes are in the resized full frame;
// scales map original pixels to resized pixels.
struct TileTransform {
  int tile_index = 0;
  int offset_x = 0;
  int offset_y = 0;
  int tile_w = 0;
  int tile_h = 0;
  double scale_x = 1;
  double scale_y = 1;
};

inline constexpr int kDefaultBaseResolution = 336;

// Portrait and square screens get 2x1, landscape screens 1x2.
GridConfig SelectGrid(int width, int height);

// Resizes the full screen to (cols*base) x (rows*base) and returns the
// rows*cols tiles in row-major order.
std::vector<TileTransform> PlanTiles(int screen_w, int screen_h,
                                     const GridConfig& grid,
                                     int base_resolution = kDefaultBaseResolution);

// Original-frame box -> tile-local box, clipped to the tile; absent when the
// clipped region has zero area.
std::optional<BBox> ProjectBBox(const BBox& b, const TileTransform& t);
// Tile-local box -> original frame.
BBox UnprojectBBox(const BBox& tile_box, const TileTransform& t);

// Resamples the image to the grid and cuts it into tiles.
std::vector<Image> PartitionImage(const Image& image,
                                  const std::vector<TileTransform>& tiles,
                                  Exec exec = Exec::kParallel);

nlohmann::json ToJson(const TileTransform& t);

}  // namespace uiground

#endif  // UIGROUND_ANYRES_H_
