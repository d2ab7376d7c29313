// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#include "uiground/cider.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <exception>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "uiground/error.h"

namespace uiground {

namespace {

// N-gram keys join tokens with a unit separator.
using Counts = std::vector<std::pair<std::string, int>>;
using DocFreq = std::unordered_map<std::string, double>;

Counts CountNgrams(const std::vector<std::string>& words, int n_max) {
  std::unordered_map<std::string, std::size_t> index;
  Counts counts;
  for (int k = 1; k <= n_max; ++k) {
    for (std::size_t i = 0; i + k <= words.size(); ++i) {
      std::string key = words[i];
      for (int j = 1; j < k; ++j) key += '\x1f' + words[i + j];
      const auto [it, fresh] = index.emplace(key, counts.size());
      if (fresh) {
        counts.emplace_back(std::move(key), 1);
      } else {
        ++counts[it->second].second;
      }
    }
  }
  return counts;
}

int Order(const std::string& key) {
  return 1 + static_cast<int>(std::count(key.begin(), key.end(), '\x1f'));
}

struct TfIdf {
  std::vector<std::unordered_map<std::string, double>> vec;
  std::vector<std::vector<std::string>> keys;  // insertion order per n
  std::vector<double> norm;
  int length = 0;
};

TfIdf ToVector(const Counts& counts, const DocFreq& df, double ref_len, int n_max) {
  TfIdf t;
  t.vec.resize(n_max);
  t.keys.resize(n_max);
  t.norm.assign(n_max, 0.0);
  for (const auto& [key, tf] : counts) {
    const auto it = df.find(key);
    const double d = std::log(std::max(1.0, it == df.end() ? 0.0 : it->second));
    const int n = Order(key) - 1;
    const double w = static_cast<double>(tf) * (ref_len - d);
    t.vec[n][key] = w;
    t.keys[n].push_back(key);
    t.norm[n] += w * w;
    // Length follows the bigram term counts, matching the reference scorer.
    if (n == 1) t.length += tf;
  }
  for (auto& v : t.norm) v = std::sqrt(v);
  return t;
}

std::vector<double> Similarity(const TfIdf& hyp, const TfIdf& ref, const CiderOptions& o) {
  const double delta = static_cast<double>(hyp.length - ref.length);
  std::vector<double> val(o.n_max, 0.0);
  for (int n = 0; n < o.n_max; ++n) {
    for (const auto& key : hyp.keys[n]) {
      const auto it = ref.vec[n].find(key);
      const double r = it == ref.vec[n].end() ? 0.0 : it->second;
      const double h = hyp.vec[n].at(key);
      val[n] += (o.variant == CiderVariant::kCoco ? std::min(h, r) : h) * r;
    }
    if (hyp.norm[n] != 0 && ref.norm[n] != 0) val[n] /= hyp.norm[n] * ref.norm[n];
    if (o.variant == CiderVariant::kCoco) {
      val[n] *= std::exp(-(delta * delta) / (2 * o.sigma * o.sigma));
    }
  }
  return val;
}

}  // namespace

std::string_view CiderVariantName(CiderVariant v) {
  return v == CiderVariant::kCoco ? "pycocoevalcap-1.2" : "classic";
}

CiderVariant CiderVariantFromName(std::string_view name) {
  if (name == "pycocoevalcap-1.2" || name == "coco") return CiderVariant::kCoco;
  if (name == "classic") return CiderVariant::kClassic;
  throw Error(ErrorCode::kConfig, "unknown CIDEr variant: " + std::string(name));
}

std::vector<std::string> CiderTokenize(std::string_view text) {
  std::vector<std::string> words;
  std::string cur;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c) || std::ispunct(c)) {
      if (!cur.empty()) words.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += static_cast<char>(std::tolower(c));
    }
  }
  if (!cur.empty()) words.push_back(std::move(cur));
  return words;
}

CiderResult Cider(std::span<const std::string> candidates,
                  std::span<const std::vector<std::string>> references,
                  const CiderOptions& options, Exec exec) {
  if (candidates.size() != references.size()) {
    throw Error(ErrorCode::kLengthMismatch, "candidates and references differ in length");
  }
  if (candidates.empty()) throw Error(ErrorCode::kEmptyInput, "CIDEr needs at least one item");
  if (options.n_max < 1 || options.sigma <= 0) {
    throw Error(ErrorCode::kConfig, "CIDEr needs n_max >= 1 and sigma > 0");
  }
  const std::size_t m = candidates.size();
  std::vector<Counts> test(m);
  std::vector<std::vector<Counts>> refs(m);
  DocFreq df;
  for (std::size_t i = 0; i < m; ++i) {
    if (references[i].empty()) {
      throw Error(ErrorCode::kEmptyInput, "item " + std::to_string(i) + " has no references");
    }
    test[i] = CountNgrams(CiderTokenize(candidates[i]), options.n_max);
    std::unordered_set<std::string> seen;
    for (const auto& r : references[i]) {
      refs[i].push_back(CountNgrams(CiderTokenize(r), options.n_max));
      for (const auto& [key, tf] : refs[i].back()) seen.insert(key);
    }
    for (const auto& key : seen) df[key] += 1.0;
  }
  const double ref_len = std::log(static_cast<double>(m));

  CiderResult result;
  result.item_scores.assign(m, 0.0);
  auto score_item = [&](std::size_t i) {
    const TfIdf hyp = ToVector(test[i], df, ref_len, options.n_max);
    std::vector<double> acc(options.n_max, 0.0);
    for (const auto& r : refs[i]) {
      const auto sim = Similarity(hyp, ToVector(r, df, ref_len, options.n_max), options);
      for (int n = 0; n < options.n_max; ++n) acc[n] += sim[n];
    }
    double mean = 0.0;
    for (double v : acc) mean += v;
    mean /= options.n_max;
    mean /= static_cast<double>(refs[i].size());
    result.item_scores[i] = mean * 10.0;
  };
  const auto n = static_cast<std::int64_t>(m);
  if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < n; ++i) score_item(static_cast<std::size_t>(i));
  } else {
    for (std::int64_t i = 0; i < n; ++i) score_item(static_cast<std::size_t>(i));
  }
  for (double s : result.item_scores) result.score += s;
  result.score /= static_cast<double>(m);
  return result;
}

}  // namespace uiground
