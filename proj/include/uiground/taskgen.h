// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef UIGROUND_TASKGEN_H_
#define UIGROUND_TASKGEN_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "uiground/parallel.h"
#include "uiground/prompt_pool.h"
#include "uiground/screen.h"
#include "uiground/task_sample.h"

namespace uiground {

// Opening phrase of every widget-listing answer.
inline constexpr std::string_view kWidgetListingPrefix =
    "UI widgets present in this screen include";

// Max test samples kept per task.
inline constexpr std::size_t kTestCap = 5000;

// OCR targets need fewer than 10 whitespace tokens, and a lone token needs
// at least 2 characters.
bool EligibleOcr(const UIElement& e);

// Widgets other than icons and text (pictures included).
bool IsClassifiableWidget(const UIElement& e);

enum class FindKind { kText, kIcon, kWidget };

// False when the element is not of the kind, or when another element on the
// screen shares its identity key: the displayed text (kText), the icon
// class (kIcon) or the (type, text) pair (kWidget).
bool EligibleFindTarget(const UIElement& e, const ScreenAnnotation& screen,
                        FindKind kind);

// Whether the element can serve the given elementary task.
bool EligibleFor(Task task, const UIElement& e, const ScreenAnnotation& screen);

// ocr / icon_recognition / widget_classification. Throws kIneligible.
TaskSample GenReferringSample(const ScreenAnnotation& screen, const UIElement& e,
                              Task task, const PromptPool& pool,
                              std::uint64_t seed);

// find_text / find_icon / find_widget. Throws kIneligible.
TaskSample GenGroundingSample(const ScreenAnnotation& screen, const UIElement& e,
                              Task task, const PromptPool& pool,
                              std::uint64_t seed);

// Lowercased "{text} {type}" (or just the type) used to name find_widget
// targets.
std::string WidgetDescription(const UIElement& e);

// One listing sample per screen. Throws kEmptyScreen.
TaskSample GenWidgetListing(const ScreenAnnotation& screen,
                            const PromptPool& pool, std::uint64_t seed);

// Public benchmark record (screen2words / widget_captions / taperception).
struct SpotlightRecord {
  std::string record_id;
  Task task = Task::kScreen2Words;
  std::string screen_id;
  std::string image;
  int width = 0;
  int height = 0;
  std::optional<BBox> bbox;
  std::string answer;
  Split split = Split::kTrain;
};

SpotlightRecord SpotlightFromJson(const nlohmann::json& j);
std::vector<SpotlightRecord> ReadSpotlightJsonl(const std::filesystem::path& path);

// "Yes." / "No." from booleans, 0/1 or yes/no/tappable-style strings.
std::string CanonicalTapAnswer(const nlohmann::json& raw);

// Throws kMissingBBox for a box-bearing task without a box.
TaskSample ReformatSpotlight(const SpotlightRecord& record, const PromptPool& pool,
                             std::uint64_t seed);

// Keeps min(kTestCap, n) samples chosen by a seeded shuffle; survivors keep
// their input order.
std::vector<TaskSample> CapTestSet(std::vector<TaskSample> samples, Task task,
                                   std::uint64_t seed,
                                   std::size_t cap = kTestCap);

using DatasetKey = std::pair<Split, Task>;

struct ElementaryDataset {
  std::map<DatasetKey, std::vector<TaskSample>> buckets;

  std::size_t Count(Split split, Task task) const;
};

// Every elementary sample from one screen: one listing sample plus one
// sample per eligible element per task.
std::vector<TaskSample> GenerateForScreen(const ScreenAnnotation& screen,
                                          const PromptPool& pool,
                                          std::uint64_t seed);

// Screens are processed independently; buckets are filled in screen order
// so the result does not depend on the thread count. Test buckets are
// capped.
ElementaryDataset GenerateElementary(std::span<const ScreenAnnotation> screens,
                                     const PromptPool& pool, std::uint64_t seed,
                                     Exec exec = Exec::kParallel);

// Writes "<task>.<split>.jsonl" for every elementary task and split present
// in `splits` (empty files included) and returns the paths in write order.
std::vector<std::filesystem::path> WriteElementaryDataset(
    const ElementaryDataset& dataset, const std::filesystem::path& dir,
    std::span<const Split> splits);

}  // namespace uiground

#endif  // UIGROUND_TASKGEN_H_
