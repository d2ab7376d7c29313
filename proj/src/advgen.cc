// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#include "uiground/advgen.h"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <regex>
#include <sstream>

#include "uiground/error.h"
#include "uiground/grouping.h"
#include "uiground/hashing.h"

namespace uiground {

namespace {

using nlohmann::json;

std::string TrimCopy(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string ReadAsset(const std::filesystem::path& path) { return TrimCopy(ReadFile(path)); }

bool IsConversation(Task task) {
  return task == Task::kConvPerception || task == Task::kConvInteraction;
}

std::optional<Role> RoleAlias(std::string name) {
  for (auto& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (name == "user" || name == "human" || name == "question") return Role::kUser;
  if (name == "assistant" || name == "gpt" || name == "answer") return Role::kAssistant;
  return std::nullopt;
}

std::string StripFence(std::string text) {
  text = TrimCopy(text);
  if (!text.starts_with("```")) return text;
  const auto first_nl = text.find('\n');
  if (first_nl == std::string::npos) return "";
  text = text.substr(first_nl + 1);
  const auto close = text.rfind("```");
  if (close != std::string::npos) text = text.substr(0, close);
  return TrimCopy(text);
}

std::optional<std::vector<Turn>> TurnsFromJson(const std::string& text) {
  if (!text.starts_with("[")) return std::nullopt;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error&) {
    return std::nullopt;
  }
  if (!doc.is_array()) return std::nullopt;
  std::vector<Turn> turns;
  for (const auto& item : doc) {
    if (!item.is_object()) {
      throw Error(ErrorCode::kFormat, "conversation array holds a non-object");
    }
    std::optional<Role> role;
    for (const char* key : {"role", "from", "speaker"}) {
      if (item.contains(key) && item[key].is_string()) role = RoleAlias(item[key].get<std::string>());
    }
    std::optional<std::string> body;
    for (const char* key : {"text", "content", "value"}) {
      if (item.contains(key) && item[key].is_string()) body = item[key].get<std::string>();
    }
    if (!role || !body) throw Error(ErrorCode::kFormat, "turn without role or text: " + item.dump());
    turns.push_back({*role, TrimCopy(*body), {}});
  }
  return turns;
}

std::vector<Turn> TurnsFromMarkers(const std::string& text) {
  static const std::regex kMarker(R"(^\s*\**\s*(user|assistant)\s*\**\s*:\s*\**\s*(.*)$)",
                                  std::regex::icase);
  std::vector<Turn> turns;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::smatch m;
    if (std::regex_match(line, m, kMarker)) {
      turns.push_back({*RoleAlias(m[1].str()), m[2].str(), {}});
    } else if (!turns.empty()) {
      turns.back().text += "\n" + line;
    } else if (!TrimCopy(line).empty()) {
      throw Error(ErrorCode::kFormat, "text before the first speaker marker");
    }
  }
  if (turns.empty()) throw Error(ErrorCode::kFormat, "no speaker markers found");
  for (auto& t : turns) t.text = TrimCopy(t.text);
  return turns;
}

int EdgeDistance(const NormBBox& a, const NormBBox& b) {
  return std::max({std::abs(a.x1 - b.x1), std::abs(a.y1 - b.y1), std::abs(a.x2 - b.x2),
                   std::abs(a.y2 - b.y2)});
}

int EdgeSum(const NormBBox& a, const NormBBox& b) {
  return std::abs(a.x1 - b.x1) + std::abs(a.y1 - b.y1) + std::abs(a.x2 - b.x2) +
         std::abs(a.y2 - b.y2);
}

// Extracts (and optionally snaps) the boxes of one turn, rewriting snapped
// tokens in canonical form.
void ResolveRegions(Turn& turn, std::size_t index, const std::vector<NormBBox>& detections,
                    int tolerance) {
  std::vector<BBoxTokenMatch> matches;
  try {
    matches = ExtractBBoxTokens(turn.text);
  } catch (const Error& e) {
    throw Error(e.code(), "turn " + std::to_string(index) + ": " + e.what());
  }
  std::string rebuilt;
  std::size_t cursor = 0;
  turn.regions.clear();
  for (const auto& m : matches) {
    NormBBox box = m.box;
    if (tolerance > 0 && !detections.empty()) {
      const auto best = std::min_element(
          detections.begin(), detections.end(), [&](const NormBBox& a, const NormBBox& b) {
            const int da = EdgeDistance(a, box);
            const int db = EdgeDistance(b, box);
            return da != db ? da < db : EdgeSum(a, box) < EdgeSum(b, box);
          });
      if (EdgeDistance(*best, box) <= tolerance) box = *best;
    }
    rebuilt.append(turn.text, cursor, m.pos - cursor);
    rebuilt += box == m.box ? turn.text.substr(m.pos, m.len) : BBoxToToken(box);
    cursor = m.pos + m.len;
    turn.regions.push_back(box);
  }
  rebuilt.append(turn.text, cursor, std::string::npos);
  turn.text = std::move(rebuilt);
}

std::string SampleIdFor(const ScreenAnnotation& screen, Task task) {
  return std::string(PlatformName(screen.platform)) + "-" + std::string(TaskName(task)) + "-" +
         screen.screen_id;
}

struct ScreenOutcome {
  bool attempted = false;
  std::optional<TaskSample> sample;
  std::string drop_reason;
  std::string failure;
};

}  // namespace

AdvTemplates LoadAdvTemplates(const std::filesystem::path& dir) {
  AdvTemplates t;
  t.version = ReadAsset(dir / "VERSION");
  t.system = ReadAsset(dir / "system.txt");
  for (Task task : kAdvancedTasks) {
    const std::string name(TaskName(task));
    t.base_prompts[task] = ReadAsset(dir / (name + ".txt"));
    if (IsConversation(task)) t.one_shots[task] = ReadAsset(dir / ("one_shot_" + name + ".txt"));
  }
  t.conversation_format = ReadAsset(dir / "format_conversation.txt");
  t.text_format = ReadAsset(dir / "format_text.txt");
  return t;
}

AdvTemplates LoadDefaultAdvTemplates() {
  return LoadAdvTemplates(AssetDir() / "prompts" / "advanced");
}

std::string AdvPromptBundle::Render() const {
  std::string out = base_prompt;
  out += "\n\nDetections:\n" + detections_block;
  if (one_shot) out += "\n\nHere is an example of the expected output.\n" + *one_shot;
  out += "\n\n" + format_suffix;
  return out;
}

bool ScreenEligibleAdvanced(const ScreenAnnotation& screen) {
  const auto n = screen.elements.size();
  return n > 2 && n < 15;
}

std::string DetectionsBlock(const ScreenAnnotation& screen) {
  std::vector<UIElement> ordered = screen.elements;
  SortReadingOrder(ordered);
  std::string block;
  for (const auto& e : ordered) {
    if (!block.empty()) block += '\n';
    block += e.type.Name();
    if (const auto label = e.Label(); !label.empty()) block += " " + label;
    block += " " + BBoxToToken(NormalizeBBox(e.bbox, screen.width, screen.height));
  }
  return block;
}

AdvPromptBundle BuildPrompt(const ScreenAnnotation& screen, Task task,
                            const AdvTemplates& templates) {
  if (!IsAdvanced(task)) {
    throw Error(ErrorCode::kUnknownTask, std::string(TaskName(task)) + " is not an advanced task");
  }
  if (!ScreenEligibleAdvanced(screen)) {
    throw Error(ErrorCode::kIneligible, screen.screen_id + " has " +
                                            std::to_string(screen.elements.size()) +
                                            " elements; advanced tasks need 3 to 14");
  }
  AdvPromptBundle b;
  b.task = task;
  b.system = templates.system;
  b.base_prompt = templates.base_prompts.at(task);
  b.detections_block = DetectionsBlock(screen);
  if (IsConversation(task)) {
    b.one_shot = templates.one_shots.at(task);
    b.format_suffix = templates.conversation_format;
  } else {
    b.format_suffix = templates.text_format;
  }
  return b;
}

ParsedConversation ParseConversation(const std::string& raw, Task task,
                                     const ScreenAnnotation& screen,
                                     const ParseOptions& options) {
  const std::string text = StripFence(raw);
  if (text.empty()) throw Error(ErrorCode::kEmptyConversation, "empty reply");

  ParsedConversation out;
  if (IsConversation(task)) {
    auto turns = TurnsFromJson(text);
    out.turns = turns ? std::move(*turns) : TurnsFromMarkers(text);
  } else {
    // A reply that still opens with a speaker label keeps only its body.
    static const std::regex kLead(R"(^\s*assistant\s*:\s*)", std::regex::icase);
    out.turns = {Turn{Role::kAssistant, TrimCopy(std::regex_replace(text, kLead, "")), {}}};
  }
  if (out.turns.empty()) throw Error(ErrorCode::kEmptyConversation, "no turns");

  std::vector<NormBBox> detections;
  for (const auto& e : screen.elements) {
    detections.push_back(NormalizeBBox(e.bbox, screen.width, screen.height));
  }
  bool has_user = false;
  bool has_assistant = false;
  for (std::size_t i = 0; i < out.turns.size(); ++i) {
    auto& turn = out.turns[i];
    if (turn.text.empty()) {
      throw Error(ErrorCode::kFormat, "turn " + std::to_string(i) + " is empty");
    }
    ResolveRegions(turn, i, detections, options.snap_tolerance);
    (turn.role == Role::kUser ? has_user : has_assistant) = true;
  }
  if (IsConversation(task) && (!has_user || !has_assistant)) {
    throw Error(ErrorCode::kFormat, "conversation needs both user and assistant turns");
  }
  if (task == Task::kConvInteraction) {
    for (const auto& turn : out.turns) {
      if (turn.role == Role::kAssistant && turn.regions.empty()) {
        out.valid = false;
        out.invalid_reason = "answer-without-box";
        break;
      }
    }
  }
  return out;
}

std::string ConversationToJson(const std::vector<Turn>& turns) {
  json arr = json::array();
  for (const auto& t : turns) arr.push_back({{"role", RoleName(t.role)}, {"text", t.text}});
  return arr.dump();
}

int GenerationReport::DroppedTotal() const {
  int total = 0;
  for (const auto& [reason, n] : dropped) total += n;
  return total;
}

json GenerationReport::ToJson() const {
  json fails = json::array();
  for (const auto& [screen, msg] : failures) fails.push_back({{"screen_id", screen}, {"error", msg}});
  return {{"task", TaskName(task)},   {"client", client},
          {"templates", templates_version}, {"eligible", eligible},
          {"sent", sent},             {"parsed", parsed},
          {"dropped", dropped},       {"dropped_total", DroppedTotal()},
          {"failures", fails}};
}

AdvgenResult RunAdvgen(std::span<const ScreenAnnotation> screens, Task task, LlmClient& client,
                       const AdvTemplates& templates, const PromptPool& pool,
                       const AdvgenOptions& options) {
  if (!IsAdvanced(task)) {
    throw Error(ErrorCode::kUnknownTask, std::string(TaskName(task)) + " is not an advanced task");
  }
  std::vector<ScreenOutcome> outcomes(screens.size());
  const auto n = static_cast<std::int64_t>(screens.size());
  const int in_flight = std::max(1, options.max_in_flight);

  auto process = [&](std::int64_t i) {
    const auto& screen = screens[i];
    auto& out = outcomes[i];
    if (!ScreenEligibleAdvanced(screen)) return;
    out.attempted = true;
    const AdvPromptBundle bundle = BuildPrompt(screen, task, templates);
    std::string raw;
    try {
      raw = client.Send(bundle.Render(), bundle.system);
    } catch (const Error& e) {
      out.failure = e.what();
      return;
    }
    try {
      auto parsed = ParseConversation(raw, task, screen, options.parse);
      if (!parsed.valid) {
        out.drop_reason = parsed.invalid_reason;
        return;
      }
      TaskSample s;
      s.sample_id = SampleIdFor(screen, task);
      s.task = task;
      s.platform = screen.platform;
      s.screen_id = screen.screen_id;
      s.split = screen.split;
      s.image = screen.image_path;
      if (IsConversation(task)) {
        s.turns = std::move(parsed.turns);
      } else {
        s.turns = {MakeTurn(Role::kUser, ExpandPrompt(pool, task, screen.screen_id, "",
                                                      options.seed)),
                   std::move(parsed.turns.front())};
      }
      out.sample = std::move(s);
    } catch (const Error& e) {
      out.drop_reason = std::string(ErrorCodeName(e.code()));
    }
  };

#pragma omp parallel for schedule(dynamic) num_threads(in_flight)
  for (std::int64_t i = 0; i < n; ++i) process(i);

  AdvgenResult result;
  auto& report = result.report;
  report.task = task;
  report.client = client.Describe();
  report.templates_version = templates.version;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    auto& o = outcomes[i];
    if (!o.attempted) continue;
    ++report.eligible;
    if (!o.failure.empty()) {
      report.failures.emplace_back(screens[i].screen_id, o.failure);
      continue;
    }
    ++report.sent;
    if (o.sample) {
      ++report.parsed;
      result.samples.push_back(std::move(*o.sample));
    } else {
      ++report.dropped[o.drop_reason];
    }
  }
  return result;
}

std::vector<TaskSample> SampleQaPairs(const TaskSample& conversation, std::uint64_t seed,
                                      std::size_t pairs) {
  std::vector<std::size_t> starts;
  const auto& turns = conversation.turns;
  for (std::size_t i = 0; i + 1 < turns.size(); ++i) {
    if (turns[i].role == Role::kUser && turns[i + 1].role == Role::kAssistant) {
      starts.push_back(i);
      ++i;
    }
  }
  auto order = ShuffledIndices(starts.size(), DeriveSeed(seed, "qa/" + conversation.sample_id));
  order.resize(std::min(pairs, order.size()));
  std::sort(order.begin(), order.end());
  std::vector<TaskSample> out;
  for (auto k : order) {
    TaskSample s = conversation;
    s.sample_id = conversation.sample_id + "-qa" + std::to_string(k);
    s.turns = {turns[starts[k]], turns[starts[k] + 1]};
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace uiground
