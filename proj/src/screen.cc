// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#include "uiground/screen.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "uiground/error.h"
#include "uiground/grouping.h"

namespace uiground {

namespace {

using nlohmann::json;

json Number(double v) {
  if (std::floor(v) == v && std::fabs(v) < 1e15) {
    return static_cast<std::int64_t>(v);
  }
  return v;
}

const json& Require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::kSchema, std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

json Extras(const json& j, std::initializer_list<const char*> known) {
  json extra = json::object();
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool is_known = false;
    for (const char* k : known) is_known = is_known || it.key() == k;
    if (!is_known) extra[it.key()] = it.value();
  }
  return extra;
}

void MergeExtras(json& out, const json& extra) {
  for (auto it = extra.begin(); it != extra.end(); ++it) {
    if (!out.contains(it.key())) out[it.key()] = it.value();
  }
}

}  // namespace

std::string UiType::Name() const {
  switch (kind) {
    case UiKind::kButton: return "Button";
    case UiKind::kText: return "Text";
    case UiKind::kIcon: return "Icon";
    case UiKind::kPicture: return "Picture";
    case UiKind::kCheckbox: return "Checkbox";
    case UiKind::kToggle: return "Toggle";
    case UiKind::kTab: return "Tab";
    case UiKind::kOther: return other_name;
  }
  return other_name;
}

std::string_view PlatformName(Platform p) {
  return p == Platform::kIphone ? "iphone" : "android";
}

Platform PlatformFromName(std::string_view name) {
  if (name == "iphone") return Platform::kIphone;
  if (name == "android") return Platform::kAndroid;
  throw Error(ErrorCode::kSchema, "unknown platform '" + std::string(name) + "'");
}

std::string_view SplitName(Split s) {
  return s == Split::kTrain ? "train" : "test";
}

Split SplitFromName(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "test") return Split::kTest;
  throw Error(ErrorCode::kSchema, "unknown split '" + std::string(name) + "'");
}

std::string UIElement::Label() const {
  if (type.kind == UiKind::kIcon && icon_class) return *icon_class;
  return text.value_or("");
}

std::vector<std::string> OriginalIds(const UIElement& e) {
  if (e.members.empty()) return {e.id};
  std::vector<std::string> ids;
  ids.reserve(e.members.size());
  for (const auto& m : e.members) ids.push_back(m.id);
  return ids;
}

void ValidateScreen(const ScreenAnnotation& s) {
  if (s.screen_id.empty()) throw Error(ErrorCode::kSchema, "empty screen_id");
  if (s.width <= 0 || s.height <= 0) {
    throw Error(ErrorCode::kMalformedGeometry,
                s.screen_id + ": non-positive screen size");
  }
  std::set<std::string> ids;
  for (const auto& e : s.elements) {
    if (e.id.empty()) throw Error(ErrorCode::kSchema, s.screen_id + ": empty element id");
    if (!ids.insert(e.id).second) {
      throw Error(ErrorCode::kSchema, s.screen_id + ": duplicate element id '" + e.id + "'");
    }
    ValidateBBox(e.bbox);
    if (e.bbox.x2 > s.width || e.bbox.y2 > s.height) {
      throw Error(ErrorCode::kOutOfBounds,
                  s.screen_id + ": element '" + e.id + "' exceeds the screen");
    }
  }
}

json BBoxToJson(const BBox& b) {
  return json::array({Number(b.x1), Number(b.y1), Number(b.x2), Number(b.y2)});
}

BBox BBoxFromJson(const json& j) {
  if (!j.is_array() || j.size() != 4) {
    throw Error(ErrorCode::kSchema, "bbox must be an array of four numbers");
  }
  for (const auto& v : j) {
    if (!v.is_number()) throw Error(ErrorCode::kSchema, "bbox holds a non-number");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(),
          j[3].get<double>()};
}

json ToJson(const UIElement& e) {
  json j = {{"id", e.id}, {"ui_type", e.type.Name()}, {"bbox", BBoxToJson(e.bbox)}};
  if (e.text) j["text"] = *e.text;
  if (e.icon_class) j["icon_class"] = *e.icon_class;
  if (!e.members.empty()) {
    json members = json::array();
    for (const auto& m : e.members) {
      members.push_back(
          {{"id", m.id}, {"ui_type", m.type.Name()}, {"bbox", BBoxToJson(m.bbox)}});
    }
    j["members"] = std::move(members);
  }
  MergeExtras(j, e.extra);
  return j;
}

json ToJson(const ScreenAnnotation& s) {
  json elements = json::array();
  for (const auto& e : s.elements) elements.push_back(ToJson(e));
  json j = {{"screen_id", s.screen_id},
            {"platform", PlatformName(s.platform)},
            {"width", s.width},
            {"height", s.height},
            {"split", SplitName(s.split)},
            {"elements", std::move(elements)}};
  if (s.image_path) j["image_path"] = *s.image_path;
  MergeExtras(j, s.extra);
  return j;
}

UIElement ElementFromJson(const json& j) {
  UIElement e;
  e.id = Require(j, "id").get<std::string>();
  e.type = CanonicalizeType(Require(j, "ui_type").get<std::string>());
  e.bbox = BBoxFromJson(Require(j, "bbox"));
  if (j.contains("text") && !j["text"].is_null()) e.text = j["text"].get<std::string>();
  if (j.contains("icon_class") && !j["icon_class"].is_null()) {
    e.icon_class = j["icon_class"].get<std::string>();
  }
  if (j.contains("members")) {
    for (const auto& m : j["members"]) {
      e.members.push_back({Require(m, "id").get<std::string>(),
                           CanonicalizeType(Require(m, "ui_type").get<std::string>()),
                           BBoxFromJson(Require(m, "bbox"))});
    }
  }
  e.extra = Extras(j, {"id", "ui_type", "bbox", "text", "icon_class", "members"});
  return e;
}

ScreenAnnotation ScreenFromJson(const json& j) {
  ScreenAnnotation s;
  try {
    s.screen_id = Require(j, "screen_id").get<std::string>();
    s.platform = PlatformFromName(Require(j, "platform").get<std::string>());
    s.width = Require(j, "width").get<int>();
    s.height = Require(j, "height").get<int>();
    for (const auto& e : Require(j, "elements")) s.elements.push_back(ElementFromJson(e));
    if (j.contains("image_path") && !j["image_path"].is_null()) {
      s.image_path = j["image_path"].get<std::string>();
    }
    if (j.contains("split")) s.split = SplitFromName(j["split"].get<std::string>());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSchema, e.what());
  }
  s.extra = Extras(j, {"screen_id", "platform", "width", "height", "elements",
                       "image_path", "split"});
  ValidateScreen(s);
  return s;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::filesystem::path& path, std::string_view data) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
}

std::vector<json> ReadJsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::vector<json> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      rows.push_back(json::parse(line));
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::kSchema,
                  path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return rows;
}

std::vector<ScreenAnnotation> ReadScreensJsonl(const std::filesystem::path& path) {
  std::vector<ScreenAnnotation> screens;
  for (const auto& row : ReadJsonl(path)) screens.push_back(ScreenFromJson(row));
  return screens;
}

void WriteScreensJsonl(const std::filesystem::path& path,
                       const std::vector<ScreenAnnotation>& screens) {
  std::string out;
  for (const auto& s : screens) {
    out += ToJson(s).dump();
    out += '\n';
  }
  WriteFile(path, out);
}

}  // namespace uiground
