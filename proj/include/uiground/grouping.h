// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef UIGROUND_GROUPING_H_
#define UIGROUND_GROUPING_H_

#include <span>
#include <string_view>
#include <vector>

#include "uiground/parallel.h"
#include "uiground/screen.h"

namespace uiground {

struct GroupingConfig {
  // Max vertical gap between stacked lines, as a fraction of the median
  // text line height on the screen.
  double line_merge_gap = 0.6;
  // Min horizontal overlap, as a fraction of the narrower box's width.
  double horizontal_overlap_min = 0.5;
  // Max gap between a picture and its caption, as a fraction of the
  // picture's height.
  double caption_gap = 0.15;

  // Throws kConfig unless every fraction lies in (0, 2].
  void Validate() const;
};

// Total: "Checkbox (Checked)" -> Checkbox, "Toggle (Unchecked)" -> Toggle,
// known names (case-insensitive) -> their kind, anything else -> kOther
// with the raw label kept.
UiType CanonicalizeType(std::string_view raw_type);

// Sorts by (y1, x1, id).
void SortReadingOrder(std::vector<UIElement>& elements);

// Merges vertically stacked Text lines into one Text group per chain. The
// median line height is taken over original lines, so grouped output fed
// back in is left unchanged.
std::vector<UIElement> GroupTextLines(std::span<const UIElement> elements,
                                      const GroupingConfig& cfg);

// Folds a Text directly below a Picture into it as the picture's caption.
// Pictures that already hold a caption are skipped.
std::vector<UIElement> GroupPictureCaption(std::span<const UIElement> elements,
                                           const GroupingConfig& cfg);

// Line merge followed by caption merge.
ScreenAnnotation GroupScreen(const ScreenAnnotation& screen,
                             const GroupingConfig& cfg);
std::vector<ScreenAnnotation> GroupScreens(
    std::span<const ScreenAnnotation> screens, const GroupingConfig& cfg,
    Exec exec = Exec::kParallel);

}  // namespace uiground

#endif  // UIGROUND_GROUPING_H_
