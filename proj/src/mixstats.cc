// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#include "uiground/mixstats.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "uiground/error.h"
#include "uiground/geometry.h"
#include "uiground/hashing.h"
#include "uiground/screen.h"

namespace uiground {

namespace {

using nlohmann::json;

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace

void MixtureSpec::Validate() const {
  if (pools.empty()) throw Error(ErrorCode::kConfig, "mixture needs at least one pool");
  double sum = 0.0;
  std::set<std::string> names;
  for (const auto& p : pools) {
    if (!(p.weight >= 0) || !std::isfinite(p.weight)) {
      throw Error(ErrorCode::kConfig, "pool " + p.name + " has a negative weight");
    }
    if (!names.insert(p.name).second) {
      throw Error(ErrorCode::kConfig, "duplicate pool name " + p.name);
    }
    sum += p.weight;
  }
  if (!(sum > 0)) throw Error(ErrorCode::kConfig, "mixture weights must sum to more than 0");
}

MixtureSpec MixtureSpecFromJson(const json& j, const std::filesystem::path& base_dir) {
  try {
    MixtureSpec spec;
    spec.total = j.at("total").get<std::size_t>();
    spec.seed = j.value("seed", std::uint64_t{0});
    spec.with_replacement = j.value("with_replacement", false);
    for (const auto& p : j.at("pools")) {
      MixturePool pool;
      pool.name = p.at("name").get<std::string>();
      pool.path = p.at("path").get<std::string>();
      if (pool.path.is_relative() && !base_dir.empty()) pool.path = base_dir / pool.path;
      pool.weight = p.at("weight").get<double>();
      spec.pools.push_back(std::move(pool));
    }
    spec.Validate();
    return spec;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfig, std::string("mixture spec: ") + e.what());
  }
}

MixtureSpec LoadMixtureSpec(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(ReadFile(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kConfig, path.string() + ": " + e.what());
  }
  return MixtureSpecFromJson(j, path.parent_path());
}

std::vector<std::size_t> Apportion(std::span<const double> weights, std::size_t total) {
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (weights.empty() || !(sum > 0)) {
    throw Error(ErrorCode::kConfig, "apportionment needs positive total weight");
  }
  std::vector<std::size_t> counts(weights.size());
  std::vector<double> remainder(weights.size());
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double quota = static_cast<double>(total) * weights[i] / sum;
    // Absorb representation error so 3.0000000001 and 2.9999999999 both
    // land on 3.
    const double floor = std::floor(quota + 1e-9);
    counts[i] = static_cast<std::size_t>(floor);
    remainder[i] = std::max(0.0, quota - floor);
    assigned += counts[i];
  }
  while (assigned > total) {
    // Only reachable through the tolerance above.
    const auto it = std::max_element(counts.begin(), counts.end());
    --*it;
    --assigned;
  }
  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t k = 0; assigned < total; ++k) {
    ++counts[order[k % order.size()]];
    ++assigned;
  }
  return counts;
}

std::string MixtureResult::Jsonl() const {
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

MixtureResult SampleMixture(const MixtureSpec& spec,
                            const std::vector<std::vector<std::string>>& pool_lines) {
  spec.Validate();
  if (pool_lines.size() != spec.pools.size()) {
    throw Error(ErrorCode::kConfig, "pool contents do not match the mixture pools");
  }
  std::vector<double> weights;
  for (const auto& p : spec.pools) weights.push_back(p.weight);
  const auto counts = Apportion(weights, spec.total);

  MixtureResult result;
  std::vector<std::string> drawn;
  for (std::size_t i = 0; i < spec.pools.size(); ++i) {
    const auto& pool = spec.pools[i];
    const auto& lines = pool_lines[i];
    const std::size_t k = counts[i];
    result.counts.emplace_back(pool.name, k);
    if (k == 0) continue;
    const std::uint64_t seed = DeriveSeed(spec.seed, "mix/pool/" + pool.name);
    if (spec.with_replacement) {
      if (lines.empty()) {
        throw Error(ErrorCode::kInsufficientPool, "pool " + pool.name + " is empty");
      }
      Rng rng(seed);
      for (std::size_t d = 0; d < k; ++d) drawn.push_back(lines[rng.Below(lines.size())]);
    } else {
      if (k > lines.size()) {
        throw Error(ErrorCode::kInsufficientPool,
                    "pool " + pool.name + " has " + std::to_string(lines.size()) +
                        " records but " + std::to_string(k) + " were requested");
      }
      const auto order = ShuffledIndices(lines.size(), seed);
      for (std::size_t d = 0; d < k; ++d) drawn.push_back(lines[order[d]]);
    }
  }
  const auto order = ShuffledIndices(drawn.size(), DeriveSeed(spec.seed, "mix/interleave"));
  result.lines.reserve(drawn.size());
  for (auto idx : order) result.lines.push_back(std::move(drawn[idx]));
  return result;
}

std::vector<std::string> ReadLines(const std::filesystem::path& path) {
  std::istringstream in(ReadFile(path));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) lines.push_back(line);
  }
  return lines;
}

MixtureResult SampleMixtureFromFiles(const MixtureSpec& spec) {
  std::vector<std::vector<std::string>> pool_lines;
  for (const auto& p : spec.pools) pool_lines.push_back(ReadLines(p.path));
  return SampleMixture(spec, pool_lines);
}

std::string_view RoleFilterName(RoleFilter f) {
  switch (f) {
    case RoleFilter::kQuestion: return "question";
    case RoleFilter::kAnswer: return "answer";
    case RoleFilter::kBoth: return "both";
  }
  return "both";
}

RoleFilter RoleFilterFromName(std::string_view name) {
  if (name == "question") return RoleFilter::kQuestion;
  if (name == "answer") return RoleFilter::kAnswer;
  if (name == "both") return RoleFilter::kBoth;
  throw Error(ErrorCode::kConfig, "role filter must be question, answer or both");
}

std::vector<std::string> StatsTokenize(std::string_view text) {
  std::string stripped;
  try {
    stripped = StripBBoxTokens(text);
  } catch (const Error&) {
    stripped = std::string(text);
  }
  std::vector<std::string> tokens;
  std::istringstream in(stripped);
  std::string tok;
  while (in >> tok) {
    for (auto& c : tok) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

json CorpusStats::ToJson() const {
  json top = json::array();
  for (const auto& [tri, n] : top_trigrams) top.push_back({{"trigram", tri}, {"count", n}});
  return {{"turns", turns},
          {"tokens", tokens},
          {"vocab_size", vocab_size},
          {"trigram_total", trigram_total},
          {"top_trigrams", top}};
}

std::string CorpusStats::TrigramCsv() const {
  std::string out = "trigram,count\n";
  for (const auto& [tri, n] : top_trigrams) out += CsvField(tri) + "," + std::to_string(n) + "\n";
  return out;
}

CorpusStats ComputeCorpusStats(std::span<const TaskSample> samples, RoleFilter filter,
                               std::size_t top_k) {
  if (samples.empty()) throw Error(ErrorCode::kEmptyInput, "corpus statistics need samples");
  CorpusStats stats;
  std::unordered_set<std::string> vocab;
  std::unordered_map<std::string, std::size_t> trigrams;
  for (const auto& s : samples) {
    for (const auto& turn : s.turns) {
      if (filter == RoleFilter::kQuestion && turn.role != Role::kUser) continue;
      if (filter == RoleFilter::kAnswer && turn.role != Role::kAssistant) continue;
      const auto tokens = StatsTokenize(turn.text);
      ++stats.turns;
      stats.tokens += tokens.size();
      vocab.insert(tokens.begin(), tokens.end());
      for (std::size_t i = 0; i + 3 <= tokens.size(); ++i) {
        ++trigrams[tokens[i] + " " + tokens[i + 1] + " " + tokens[i + 2]];
        ++stats.trigram_total;
      }
    }
  }
  stats.vocab_size = vocab.size();
  stats.top_trigrams.assign(trigrams.begin(), trigrams.end());
  std::sort(stats.top_trigrams.begin(), stats.top_trigrams.end(),
            [](const auto& a, const auto& b) {
              return a.second != b.second ? a.second > b.second : a.first < b.first;
            });
  if (stats.top_trigrams.size() > top_k) stats.top_trigrams.resize(top_k);
  return stats;
}

AgreementTable AgreementTableFromJson(const json& j) {
  try {
    AgreementTable t;
    t.ids = j.at("ids").get<std::vector<std::string>>();
    for (const auto& s : j.at("sources")) {
      t.sources.emplace_back(s.at("name").get<std::string>(),
                             s.at("labels").get<std::vector<std::string>>());
    }
    return t;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string("agreement table: ") + e.what());
  }
}

json AgreementMatrix::ToJson() const {
  return {{"sources", sources}, {"percent", percent}, {"instances", instances}};
}

AgreementMatrix ComputeAgreement(const AgreementTable& table,
                                 const std::optional<std::set<std::string>>& subset) {
  if (table.sources.size() < 2) {
    throw Error(ErrorCode::kMisalignedIds, "agreement needs at least two sources");
  }
  if (std::set<std::string>(table.ids.begin(), table.ids.end()).size() != table.ids.size()) {
    throw Error(ErrorCode::kMisalignedIds, "instance ids must be unique");
  }
  for (const auto& [name, labels] : table.sources) {
    if (labels.size() != table.ids.size()) {
      throw Error(ErrorCode::kMisalignedIds,
                  "source " + name + " has " + std::to_string(labels.size()) + " labels for " +
                      std::to_string(table.ids.size()) + " ids");
    }
  }
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < table.ids.size(); ++i) {
    if (!subset || subset->contains(table.ids[i])) keep.push_back(i);
  }
  if (subset) {
    for (const auto& id : *subset) {
      if (std::find(table.ids.begin(), table.ids.end(), id) == table.ids.end()) {
        throw Error(ErrorCode::kMisalignedIds, "subset id " + id + " is not in the table");
      }
    }
  }
  if (keep.empty()) throw Error(ErrorCode::kEmptyInput, "no instances to compare");

  AgreementMatrix m;
  m.instances = keep.size();
  const std::size_t k = table.sources.size();
  m.percent.assign(k, std::vector<double>(k, 100.0));
  for (const auto& [name, labels] : table.sources) m.sources.push_back(name);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      std::size_t same = 0;
      for (auto i : keep) same += table.sources[a].second[i] == table.sources[b].second[i];
      m.percent[a][b] = m.percent[b][a] =
          100.0 * static_cast<double>(same) / static_cast<double>(keep.size());
    }
  }
  return m;
}

}  // namespace uiground
