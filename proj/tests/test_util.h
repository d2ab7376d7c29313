// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef UIGROUND_TESTS_TEST_UTIL_H_
#define UIGROUND_TESTS_TEST_UTIL_H_

#include <stdlib.h>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "uiground/grouping.h"
#include "uiground/screen.h"

namespace uiground::testing {

class TempDir {
 public:
  TempDir() {
    std::string tmpl = (std::filesystem::temp_directory_path() / "uiground-XXXXXX").string();
    path_ = mkdtemp(tmpl.data());
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline UIElement El(std::string id, std::string_view type, BBox box,
                    std::optional<std::string> text = std::nullopt,
                    std::optional<std::string> icon_class = std::nullopt) {
  UIElement e;
  e.id = std::move(id);
  e.type = CanonicalizeType(type);
  e.bbox = box;
  e.text = std::move(text);
  e.icon_class = std::move(icon_class);
  return e;
}

inline ScreenAnnotation Screen(std::string id, std::vector<UIElement> elements, int width = 400,
                               int height = 800, Platform platform = Platform::kIphone) {
  ScreenAnnotation s;
  s.screen_id = std::move(id);
  s.platform = platform;
  s.width = width;
  s.height = height;
  s.elements = std::move(elements);
  return s;
}

inline std::filesystem::path SyntheticDir() { return UIGROUND_SYNTHETIC_DIR; }
inline std::filesystem::path TestDataDir() { return UIGROUND_TEST_DATA_DIR; }

}  // namespace uiground::testing

#endif  // UIGROUND_TESTS_TEST_UTIL_H_
