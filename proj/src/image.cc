// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#include "uiground/image.h"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>

#include "uiground/error.h"
#include "uiground/screen.h"

namespace uiground {

namespace {

std::uint8_t Lerp2(double v00, double v10, double v01, double v11, double fx,
                   double fy) {
  const double top = v00 + (v10 - v00) * fx;
  const double bottom = v01 + (v11 - v01) * fx;
  const double v = top + (bottom - top) * fy;
  return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
}

void ResizeRow(const Image& src, Image& dst, int y) {
  const double sy = static_cast<double>(src.height()) / dst.height();
  const double sx = static_cast<double>(src.width()) / dst.width();
  const double fy_src = std::clamp((y + 0.5) * sy - 0.5, 0.0, src.height() - 1.0);
  const int y0 = static_cast<int>(fy_src);
  const int y1 = std::min(y0 + 1, src.height() - 1);
  const double fy = fy_src - y0;
  const auto& in = src.bytes();
  auto& out = dst.bytes();
  const std::size_t row_in = static_cast<std::size_t>(src.width()) * 3;
  for (int x = 0; x < dst.width(); ++x) {
    const double fx_src = std::clamp((x + 0.5) * sx - 0.5, 0.0, src.width() - 1.0);
    const int x0 = static_cast<int>(fx_src);
    const int x1 = std::min(x0 + 1, src.width() - 1);
    const double fx = fx_src - x0;
    for (int c = 0; c < 3; ++c) {
      const auto p = [&](int xx, int yy) {
        return static_cast<double>(in[yy * row_in + xx * 3 + c]);
      };
      out[(static_cast<std::size_t>(y) * dst.width() + x) * 3 + c] =
          Lerp2(p(x0, y0), p(x1, y0), p(x0, y1), p(x1, y1), fx, fy);
    }
  }
}

}  // namespace

Image::Image(int width, int height, Rgb fill) : width_(width), height_(height) {
  if (width < 0 || height < 0) {
    throw Error(ErrorCode::kMalformedGeometry, "negative image size");
  }
  pixels_.resize(static_cast<std::size_t>(width) * height * 3);
  for (std::size_t i = 0; i < pixels_.size(); i += 3) {
    pixels_[i] = fill.r;
    pixels_[i + 1] = fill.g;
    pixels_[i + 2] = fill.b;
  }
}

Rgb Image::at(int x, int y) const {
  const auto i = (static_cast<std::size_t>(y) * width_ + x) * 3;
  return {pixels_[i], pixels_[i + 1], pixels_[i + 2]};
}

void Image::set(int x, int y, Rgb c) {
  const auto i = (static_cast<std::size_t>(y) * width_ + x) * 3;
  pixels_[i] = c.r;
  pixels_[i + 1] = c.g;
  pixels_[i + 2] = c.b;
}

Image ReadPng(const std::filesystem::path& path) {
  const std::string data = ReadFile(path);
  png_image img{};
  img.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&img, data.data(), data.size())) {
    throw Error(ErrorCode::kIo, path.string() + ": " + img.message);
  }
  img.format = PNG_FORMAT_RGB;
  Image out(static_cast<int>(img.width), static_cast<int>(img.height));
  if (!png_image_finish_read(&img, nullptr, out.bytes().data(), 0, nullptr)) {
    png_image_free(&img);
    throw Error(ErrorCode::kIo, path.string() + ": " + img.message);
  }
  return out;
}

std::string EncodePng(const Image& image) {
  png_image img{};
  img.version = PNG_IMAGE_VERSION;
  img.width = static_cast<png_uint_32>(image.width());
  img.height = static_cast<png_uint_32>(image.height());
  img.format = PNG_FORMAT_RGB;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&img, nullptr, &size, 0, image.bytes().data(), 0,
                                 nullptr)) {
    throw Error(ErrorCode::kIo, std::string("png sizing failed: ") + img.message);
  }
  std::string out(size, '\0');
  if (!png_image_write_to_memory(&img, out.data(), &size, 0, image.bytes().data(),
                                 0, nullptr)) {
    throw Error(ErrorCode::kIo, std::string("png encode failed: ") + img.message);
  }
  out.resize(size);
  return out;
}

void WritePng(const std::filesystem::path& path, const Image& image) {
  WriteFile(path, EncodePng(image));
}

Image ResizeBilinear(const Image& src, int width, int height, Exec exec) {
  if (src.empty() || width <= 0 || height <= 0) {
    throw Error(ErrorCode::kMalformedGeometry, "resize of an empty image");
  }
  Image dst(width, height);
  if (exec == Exec::kSerial) {
    for (int y = 0; y < height; ++y) ResizeRow(src, dst, y);
    return dst;
  }
#pragma omp parallel for schedule(static)
  for (int y = 0; y < height; ++y) ResizeRow(src, dst, y);
  return dst;
}

Image Crop(const Image& src, int x, int y, int w, int h) {
  if (x < 0 || y < 0 || w < 0 || h < 0 || x + w > src.width() ||
      y + h > src.height()) {
    throw Error(ErrorCode::kOutOfBounds, "crop window outside the image");
  }
  Image out(w, h);
  const std::size_t row = static_cast<std::size_t>(w) * 3;
  for (int r = 0; r < h; ++r) {
    const auto from = src.bytes().begin() +
                      (static_cast<std::size_t>(y + r) * src.width() + x) * 3;
    std::copy(from, from + row, out.bytes().begin() + r * row);
  }
  return out;
}

}  // namespace uiground
