// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef UIGROUND_MIXSTATS_H_
#define UIGROUND_MIXSTATS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "uiground/task_sample.h"

namespace uiground {

struct MixturePool {
  std::string name;
  std::filesystem::path path;
  double weight = 0.0;
};

// Pools keep their declared order; it breaks apportionment ties.
struct MixtureSpec {
  std::vector<MixturePool> pools;
  std::size_t total = 0;
  std::uint64_t seed = 0;
  bool with_replacement = false;

  void Validate() const;
};

// {"total": N, "seed": S, "with_replacement": false,
//  "pools": [{"name": ..., "path": ..., "weight": ...}, ...]}
// Relative pool paths resolve against base_dir.
MixtureSpec MixtureSpecFromJson(const nlohmann::json& j,
                                const std::filesystem::path& base_dir = {});
MixtureSpec LoadMixtureSpec(const std::filesystem::path& path);

// Largest-remainder apportionment of total by weight; ties go to the
// earlier pool. The counts always sum to total.
std::vector<std::size_t> Apportion(std::span<const double> weights, std::size_t total);

struct MixtureResult {
  // Selected JSONL lines, byte-for-byte, in interleaved order.
  std::vector<std::string> lines;
  std::vector<std::pair<std::string, std::size_t>> counts;

  std::string Jsonl() const;
};

// pool_lines[i] holds the records of spec.pools[i]. Throws
// kInsufficientPool when a pool is too small for a draw without
// replacement.
MixtureResult SampleMixture(const MixtureSpec& spec,
                            const std::vector<std::vector<std::string>>& pool_lines);
MixtureResult SampleMixtureFromFiles(const MixtureSpec& spec);

std::vector<std::string> ReadLines(const std::filesystem::path& path);

enum class RoleFilter { kQuestion, kAnswer, kBoth };
std::string_view RoleFilterName(RoleFilter f);
RoleFilter RoleFilterFromName(std::string_view name);

// Lowercased whitespace tokens with box tokens removed.
std::vector<std::string> StatsTokenize(std::string_view text);

struct CorpusStats {
  std::size_t turns = 0;
  std::size_t tokens = 0;
  std::size_t vocab_size = 0;
  std::size_t trigram_total = 0;
  std::vector<std::pair<std::string, std::size_t>> top_trigrams;

  nlohmann::json ToJson() const;
  std::string TrigramCsv() const;
};

// Trigrams never span turns. Throws kEmptyInput.
CorpusStats ComputeCorpusStats(std::span<const TaskSample> samples, RoleFilter filter,
                               std::size_t top_k = 20);

struct AgreementTable {
  std::vector<std::string> ids;
  std::vector<std::pair<std::string, std::vector<std::string>>> sources;
};

// {"ids": [...], "sources": [{"name": ..., "labels": [...]}, ...]}
AgreementTable AgreementTableFromJson(const nlohmann::json& j);

struct AgreementMatrix {
  std::vector<std::string> sources;
  std::vector<std::vector<double>> percent;
  std::size_t instances = 0;

  nlohmann::json ToJson() const;
};

// Pairwise percentage agreement, optionally over a subset of ids. Throws
// kMisalignedIds.
AgreementMatrix ComputeAgreement(const AgreementTable& table,
                                 const std::optional<std::set<std::string>>& subset = {});

}  // namespace uiground

#endif  // UIGROUND_MIXSTATS_H_
