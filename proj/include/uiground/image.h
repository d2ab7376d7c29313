// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef UIGROUND_IMAGE_H_
#define UIGROUND_IMAGE_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "uiground/parallel.h"

namespace uiground {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr Rgb kMagenta{255, 0, 255};
inline constexpr Rgb kWhite{255, 255, 255};

// Packed 8-bit RGB raster, row-major.
class Image {
 public:
  Image() = default;
  Image(int width, int height, Rgb fill = kWhite);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return width_ == 0 || height_ == 0; }

  Rgb at(int x, int y) const;
  void set(int x, int y, Rgb c);
  const std::vector<std::uint8_t>& bytes() const { return pixels_; }
  std::vector<std::uint8_t>& bytes() { return pixels_; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

Image ReadPng(const std::filesystem::path& path);
// Deterministic encoding: no timestamps or text chunks.
std::string EncodePng(const Image& image);
void WritePng(const std::filesystem::path& path, const Image& image);

// Bilinear resampling with half-pixel centres and edge clamping.
Image ResizeBilinear(const Image& src, int width, int height,
                     Exec exec = Exec::kParallel);
// Copies the [x, x+w) x [y, y+h) window; it must lie inside src.
Image Crop(const Image& src, int x, int y, int w, int h);

}  // namespace uiground

#endif  // UIGROUND_IMAGE_H_
