// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef UIGROUND_CIDER_H_
#define UIGROUND_CIDER_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uiground/parallel.h"

namespace uiground {

enum class CiderVariant {
  // Clipped TF-IDF cosine with a Gaussian length penalty, as in the
  // pycocoevalcap 1.2 CiderScorer.
  kCoco,
  // Unclipped cosine without the length penalty.
  kClassic,
};

std::string_view CiderVariantName(CiderVariant v);
CiderVariant CiderVariantFromName(std::string_view name);

struct CiderOptions {
  int n_max = 4;
  double sigma = 6.0;
  CiderVariant variant = CiderVariant::kCoco;
};

struct CiderResult {
  // Mean of item scores, on the raw (x10) scale.
  double score = 0.0;
  std::vector<double> item_scores;
};

// Lowercases, turns punctuation into spaces and splits on whitespace.
std::vector<std::string> CiderTokenize(std::string_view text);

CiderResult Cider(std::span<const std::string> candidates,
                  std::span<const std::vector<std::string>> references,
                  const CiderOptions& options = {}, Exec exec = Exec::kParallel);

}  // namespace uiground

#endif  // UIGROUND_CIDER_H_
