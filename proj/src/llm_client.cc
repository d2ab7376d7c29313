// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#include "uiground/llm_client.h"

#include <algorithm>
#include <cstdlib>
#include <vector>

#include "httplib.h"
#include "json.hpp"
#include "uiground/error.h"
#include "uiground/hashing.h"
#include "uiground/screen.h"

namespace uiground {

using nlohmann::json;

std::string FixtureKey(std::string_view prompt, std::string_view system) {
  std::string material(system);
  material += "\n\x1e\n";
  material += prompt;
  return Sha256Hex(material);
}

namespace {

std::string DirName(const std::filesystem::path& dir) {
  auto p = dir.lexically_normal();
  if (!p.has_filename()) p = p.parent_path();
  return p.filename().string();
}

}  // namespace

ReplayClient::ReplayClient(const std::filesystem::path& fixture_dir)
    : describe_("replay:" + DirName(fixture_dir)) {
  if (!std::filesystem::is_directory(fixture_dir)) {
    throw Error(ErrorCode::kIo, "fixture directory " + fixture_dir.string() + " not found");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(fixture_dir)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& file : files) {
    try {
      const json doc = json::parse(ReadFile(file));
      for (const auto& f : doc.at("fixtures")) {
        const std::string key = f.contains("key")
                                    ? f["key"].get<std::string>()
                                    : FixtureKey(f.at("prompt").get<std::string>(),
                                                 f.value("system", ""));
        const auto response = f.at("response").get<std::string>();
        const auto [it, inserted] = responses_.emplace(key, response);
        if (!inserted && it->second != response) {
          throw Error(ErrorCode::kSchema, file.string() + ": conflicting fixture " + key);
        }
      }
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kSchema, file.string() + ": " + e.what());
    }
  }
}

void ReplayClient::Add(const std::string& prompt, const std::string& system,
                       std::string response) {
  responses_[FixtureKey(prompt, system)] = std::move(response);
}

std::string ReplayClient::Send(const std::string& prompt, const std::string& system) {
  const auto key = FixtureKey(prompt, system);
  const auto it = responses_.find(key);
  if (it == responses_.end()) {
    throw Error(ErrorCode::kTransport, "no fixture for prompt " + key.substr(0, 16));
  }
  return it->second;
}

std::string RecordingClient::Send(const std::string& prompt, const std::string& system) {
  std::string response = inner_.Send(prompt, system);
  std::lock_guard lock(mu_);
  log_[FixtureKey(prompt, system)] = {system, prompt, response};
  return response;
}

void RecordingClient::Save(const std::filesystem::path& path) const {
  json fixtures = json::array();
  {
    std::lock_guard lock(mu_);
    for (const auto& [key, ex] : log_) {
      fixtures.push_back(
          {{"key", key}, {"system", ex.system}, {"prompt", ex.prompt}, {"response", ex.response}});
    }
  }
  WriteFile(path, json{{"fixtures", fixtures}}.dump(2) + "\n");
}

HttpLlmConfig HttpLlmConfig::FromEnv() {
  HttpLlmConfig cfg;
  auto env = [](const char* name) -> std::string {
    const char* v = std::getenv(name);
    return v ? v : "";
  };
  cfg.endpoint = env("UIGROUND_LLM_ENDPOINT");
  cfg.api_key = env("UIGROUND_LLM_API_KEY");
  cfg.model = env("UIGROUND_LLM_MODEL");
  if (cfg.model.empty()) cfg.model = "gpt-4";
  return cfg;
}

HttpLlmClient::HttpLlmClient(HttpLlmConfig config) : config_(std::move(config)) {
  if (config_.endpoint.empty()) {
    throw Error(ErrorCode::kConfig, "no LLM endpoint configured (UIGROUND_LLM_ENDPOINT)");
  }
}

std::string HttpLlmClient::Describe() const {
  return "http:" + config_.model + "@" + config_.endpoint;
}

std::string HttpLlmClient::Send(const std::string& prompt, const std::string& system) {
  // One connection per call keeps concurrent use free of shared state.
  httplib::Client cli(config_.endpoint);
  cli.set_connection_timeout(config_.timeout_seconds);
  cli.set_read_timeout(config_.timeout_seconds);
  httplib::Headers headers;
  if (!config_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + config_.api_key);
  }
  json messages = json::array();
  if (!system.empty()) messages.push_back({{"role", "system"}, {"content", system}});
  messages.push_back({{"role", "user"}, {"content", prompt}});
  const json body = {{"model", config_.model}, {"messages", messages}, {"temperature", 0}};

  const auto res = cli.Post(config_.path, headers, body.dump(), "application/json");
  if (!res) {
    throw Error(ErrorCode::kTransport, "request failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw Error(ErrorCode::kTransport, "HTTP " + std::to_string(res->status));
  }
  try {
    return json::parse(res->body).at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kTransport, std::string("unexpected response body: ") + e.what());
  }
}

}  // namespace uiground
