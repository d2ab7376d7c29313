// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef UIGROUND_SCREEN_H_
#define UIGROUND_SCREEN_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "uiground/geometry.h"

namespace uiground {

enum class UiKind {
  kButton,
  kText,
  kIcon,
  kPicture,
  kCheckbox,
  kToggle,
  kTab,
  kOther,
};

// Canonical widget type. kOther keeps the detector's raw label.
struct UiType {
  UiKind kind = UiKind::kOther;
  std::string other_name;

  std::string Name() const;

  friend bool operator==(const UiType&, const UiType&) = default;
};

enum class Platform { kIphone, kAndroid };
enum class Split { kTrain, kTest };

std::string_view PlatformName(Platform p);
Platform PlatformFromName(std::string_view name);
std::string_view SplitName(Split s);
Split SplitFromName(std::string_view name);

// One original detection folded into a group.
struct Member {
  std::string id;
  UiType type;
  BBox bbox;

  friend bool operator==(const Member&, const Member&) = default;
};

struct UIElement {
  std::string id;
  UiType type;
  std::optional<std::string> text;
  // Icon class from the detector's icon classifier; only meaningful for
  // kIcon.
  std::optional<std::string> icon_class;
  BBox bbox;
  // Empty for ungrouped detections; otherwise every original detection the
  // group absorbed, in reading order.
  std::vector<Member> members;
  nlohmann::json extra = nlohmann::json::object();

  // The string that identifies the element to a reader: the icon class for
  // icons, the displayed text otherwise ("" when there is none).
  std::string Label() const;

  friend bool operator==(const UIElement&, const UIElement&) = default;
};

struct ScreenAnnotation {
  std::string screen_id;
  Platform platform = Platform::kIphone;
  int width = 0;
  int height = 0;
  std::vector<UIElement> elements;
  std::optional<std::string> image_path;
  Split split = Split::kTrain;
  nlohmann::json extra = nlohmann::json::object();

  friend bool operator==(const ScreenAnnotation&,
                         const ScreenAnnotation&) = default;
};

// Ids of the original detections an element stands for.
std::vector<std::string> OriginalIds(const UIElement& e);

// Throws kSchema / kMalformedGeometry / kOutOfBounds.
void ValidateScreen(const ScreenAnnotation& s);

nlohmann::json ToJson(const UIElement& e);
nlohmann::json ToJson(const ScreenAnnotation& s);
nlohmann::json BBoxToJson(const BBox& b);
BBox BBoxFromJson(const nlohmann::json& j);
UIElement ElementFromJson(const nlohmann::json& j);
// Parses and validates. Raw detector labels are canonicalized on the way in.
ScreenAnnotation ScreenFromJson(const nlohmann::json& j);

std::vector<ScreenAnnotation> ReadScreensJsonl(
    const std::filesystem::path& path);
void WriteScreensJsonl(const std::filesystem::path& path,
                       const std::vector<ScreenAnnotation>& screens);

// Line-oriented helpers shared by every JSONL reader/writer.
std::vector<nlohmann::json> ReadJsonl(const std::filesystem::path& path);
std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view data);

}  // namespace uiground

#endif  // UIGROUND_SCREEN_H_
