// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef UIGROUND_LLM_CLIENT_H_
#define UIGROUND_LLM_CLIENT_H_

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

namespace uiground {

// Text-in/text-out access to an external language model. Implementations
// must be safe to call from several threads at once. Failures throw
// Error(kTransport).
class LlmClient {
 public:
  virtual ~LlmClient() = default;

  virtual std::string Send(const std::string& prompt, const std::string& system) = 0;
  // Short identity recorded in reports, e.g. "replay:fixtures/advgen".
  virtual std::string Describe() const = 0;
};

// Fixture lookup key: SHA-256 of the system and user prompts.
std::string FixtureKey(std::string_view prompt, std::string_view system);

// Serves responses from fixture files. A fixture file is
//   {"fixtures": [{"key": ..., "system": ..., "prompt": ..., "response": ...}]}
// and every *.json file of the directory is loaded. Unknown prompts fail
// with kTransport; nothing touches the network.
class ReplayClient : public LlmClient {
 public:
  ReplayClient() = default;
  explicit ReplayClient(const std::filesystem::path& fixture_dir);

  void Add(const std::string& prompt, const std::string& system, std::string response);
  std::size_t size() const { return responses_.size(); }

  std::string Send(const std::string& prompt, const std::string& system) override;
  std::string Describe() const override { return describe_; }

 private:
  std::map<std::string, std::string> responses_;
  std::string describe_ = "replay";
};

// Forwards to another client and remembers every exchange so it can be
// saved as a fixture file.
class RecordingClient : public LlmClient {
 public:
  explicit RecordingClient(LlmClient& inner) : inner_(inner) {}

  std::string Send(const std::string& prompt, const std::string& system) override;
  std::string Describe() const override { return "record:" + inner_.Describe(); }

  // Entries are written sorted by key, so the file is order-independent.
  void Save(const std::filesystem::path& path) const;

 private:
  struct Exchange {
    std::string system;
    std::string prompt;
    std::string response;
  };

  LlmClient& inner_;
  mutable std::mutex mu_;
  std::map<std::string, Exchange> log_;
};

struct HttpLlmConfig {
  std::string endpoint;  // scheme://host[:port]
  std::string path = "/v1/chat/completions";
  std::string api_key;
  std::string model;
  int timeout_seconds = 120;

  // UIGROUND_LLM_ENDPOINT, UIGROUND_LLM_API_KEY, UIGROUND_LLM_MODEL.
  static HttpLlmConfig FromEnv();
};

// OpenAI-compatible chat-completions client.
class HttpLlmClient : public LlmClient {
 public:
  explicit HttpLlmClient(HttpLlmConfig config);

  std::string Send(const std::string& prompt, const std::string& system) override;
  std::string Describe() const override;

 private:
  HttpLlmConfig config_;
};

}  // namespace uiground

#endif  // UIGROUND_LLM_CLIENT_H_
