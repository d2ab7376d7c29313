// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#include "uiground/grouping.h"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <string>

#include "uiground/error.h"

namespace uiground {

namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<Member> MembersOf(const UIElement& e) {
  if (!e.members.empty()) return e.members;
  return {Member{e.id, e.type, e.bbox}};
}

// Overlap of the x-intervals relative to the narrower box. Disjoint
// intervals never qualify, even for zero-width boxes.
bool OverlapsHorizontally(const BBox& a, const BBox& b, double min_fraction) {
  if (std::max(a.x1, b.x1) > std::min(a.x2, b.x2)) return false;
  const double narrower = std::min(a.Width(), b.Width());
  return HorizontalOverlap(a, b) >= min_fraction * narrower;
}

void Absorb(UIElement& into, const UIElement& other) {
  auto members = MembersOf(into);
  auto extra = MembersOf(other);
  members.insert(members.end(), extra.begin(), extra.end());
  into.members = std::move(members);
  into.bbox = UnionBBox(into.bbox, other.bbox);
}

// Median over every text line, including captions already absorbed into
// pictures, so regrouping a grouped screen sees the same value.
double MedianLineHeight(std::span<const UIElement> elements) {
  std::vector<double> heights;
  for (const auto& e : elements) {
    for (const auto& m : MembersOf(e)) {
      if (m.type.kind == UiKind::kText) heights.push_back(m.bbox.Height());
    }
  }
  if (heights.empty()) return 0;
  std::sort(heights.begin(), heights.end());
  const auto n = heights.size();
  return n % 2 ? heights[n / 2] : (heights[n / 2 - 1] + heights[n / 2]) / 2;
}

bool HasCaption(const UIElement& picture) {
  return std::any_of(picture.members.begin(), picture.members.end(),
                     [](const Member& m) { return m.type.kind == UiKind::kText; });
}

}  // namespace

void GroupingConfig::Validate() const {
  for (double v : {line_merge_gap, horizontal_overlap_min, caption_gap}) {
    if (!(v > 0 && v <= 2)) {
      throw Error(ErrorCode::kConfig, "grouping fractions must lie in (0, 2]");
    }
  }
}

UiType CanonicalizeType(std::string_view raw_type) {
  const std::string raw(Trim(raw_type));
  std::string base = Lower(raw);
  for (std::string_view state : {"(checked)", "(unchecked)"}) {
    if (base.size() > state.size() && base.ends_with(state)) {
      const auto stem = std::string(Trim(std::string_view(base).substr(0, base.size() - state.size())));
      if (stem == "checkbox" || stem == "toggle") base = stem;
    }
  }
  if (base == "button") return {UiKind::kButton, ""};
  if (base == "text") return {UiKind::kText, ""};
  if (base == "icon") return {UiKind::kIcon, ""};
  if (base == "picture") return {UiKind::kPicture, ""};
  if (base == "checkbox") return {UiKind::kCheckbox, ""};
  if (base == "toggle") return {UiKind::kToggle, ""};
  if (base == "tab") return {UiKind::kTab, ""};
  return {UiKind::kOther, raw};
}

void SortReadingOrder(std::vector<UIElement>& elements) {
  std::stable_sort(elements.begin(), elements.end(),
                   [](const UIElement& a, const UIElement& b) {
                     if (a.bbox.y1 != b.bbox.y1) return a.bbox.y1 < b.bbox.y1;
                     if (a.bbox.x1 != b.bbox.x1) return a.bbox.x1 < b.bbox.x1;
                     return a.id < b.id;
                   });
}

std::vector<UIElement> GroupTextLines(std::span<const UIElement> elements,
                                      const GroupingConfig& cfg) {
  cfg.Validate();
  const double max_gap = cfg.line_merge_gap * MedianLineHeight(elements);

  std::vector<UIElement> out;
  std::vector<UIElement> texts;
  for (const auto& e : elements) {
    (e.type.kind == UiKind::kText ? texts : out).push_back(e);
  }

  // Greedy top-down chaining, repeated until a pass merges nothing so that
  // the result is a fixed point of the rule.
  bool changed = true;
  while (changed) {
    changed = false;
    SortReadingOrder(texts);
    std::vector<bool> used(texts.size(), false);
    std::vector<UIElement> next;
    for (std::size_t i = 0; i < texts.size(); ++i) {
      if (used[i]) continue;
      UIElement chain = texts[i];
      for (std::size_t j = i + 1; j < texts.size(); ++j) {
        if (used[j]) continue;
        const auto& cand = texts[j];
        const double gap = cand.bbox.y1 - chain.bbox.y2;
        if (cand.bbox.y1 < chain.bbox.y1 || gap > max_gap ||
            !OverlapsHorizontally(chain.bbox, cand.bbox, cfg.horizontal_overlap_min)) {
          continue;
        }
        const std::string upper = chain.text.value_or("");
        const std::string lower = cand.text.value_or("");
        if (!upper.empty() && !lower.empty()) {
          chain.text = upper + " " + lower;
        } else if (!lower.empty()) {
          chain.text = lower;
        }
        Absorb(chain, cand);
        used[j] = true;
        changed = true;
      }
      next.push_back(std::move(chain));
    }
    texts = std::move(next);
  }

  out.insert(out.end(), texts.begin(), texts.end());
  SortReadingOrder(out);
  return out;
}

std::vector<UIElement> GroupPictureCaption(std::span<const UIElement> elements,
                                           const GroupingConfig& cfg) {
  cfg.Validate();
  std::vector<UIElement> sorted(elements.begin(), elements.end());
  SortReadingOrder(sorted);
  std::vector<bool> absorbed(sorted.size(), false);

  for (std::size_t p = 0; p < sorted.size(); ++p) {
    auto& picture = sorted[p];
    if (picture.type.kind != UiKind::kPicture || HasCaption(picture)) continue;
    const double max_gap = cfg.caption_gap * picture.bbox.Height();
    std::optional<std::size_t> best;
    double best_gap = 0;
    for (std::size_t t = 0; t < sorted.size(); ++t) {
      const auto& text = sorted[t];
      if (absorbed[t] || text.type.kind != UiKind::kText) continue;
      const double gap = text.bbox.y1 - picture.bbox.y2;
      if (gap < 0 || gap > max_gap ||
          !OverlapsHorizontally(picture.bbox, text.bbox, cfg.horizontal_overlap_min)) {
        continue;
      }
      // Reading order breaks ties between equal gaps.
      if (!best || gap < best_gap) {
        best = t;
        best_gap = gap;
      }
    }
    if (!best) continue;
    picture.text = sorted[*best].text;
    Absorb(picture, sorted[*best]);
    absorbed[*best] = true;
  }

  std::vector<UIElement> out;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (!absorbed[i]) out.push_back(std::move(sorted[i]));
  }
  SortReadingOrder(out);
  return out;
}

ScreenAnnotation GroupScreen(const ScreenAnnotation& screen,
                             const GroupingConfig& cfg) {
  ScreenAnnotation out = screen;
  out.elements = GroupPictureCaption(GroupTextLines(screen.elements, cfg), cfg);
  return out;
}

std::vector<ScreenAnnotation> GroupScreens(std::span<const ScreenAnnotation> screens,
                                           const GroupingConfig& cfg, Exec exec) {
  cfg.Validate();
  std::vector<ScreenAnnotation> out(screens.size());
  const auto n = static_cast<std::int64_t>(screens.size());
  if (exec == Exec::kSerial) {
    for (std::int64_t i = 0; i < n; ++i) out[i] = GroupScreen(screens[i], cfg);
    return out;
  }
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) out[i] = GroupScreen(screens[i], cfg);
  return out;
}

}  // namespace uiground
