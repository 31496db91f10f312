// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <string>

#include "conductor/backend/backend.hpp"

namespace conductor::backend {

inline constexpr std::string_view kApiKeyEnv = "CONDUCTOR_API_KEY";

/// Token bucket: `burst` admissions at once, refilled at `per_second`.
class RateLimiter {
 public:
  using Clock = std::chrono::steady_clock;
  using Sleep = std::function<void(std::chrono::milliseconds)>;

  RateLimiter(double per_second, double burst, Sleep sleep = {});

  /// Blocks until a token is available.
  void acquire();

 private:
  std::mutex mu_;
  double per_second_;
  double burst_;
  double tokens_;
  Clock::time_point last_;
  Sleep sleep_;
};

struct LiveConfig {
  /// Prefix for "/chat/completions", e.g. "https://api.openai.com/v1".
  std::string base_url;
  std::string model_id = std::string(kDefaultModel);
  /// Explicit key; when empty the key is read from CONDUCTOR_API_KEY.
  std::string api_key;
  int max_attempts = 4;
  std::chrono::milliseconds initial_backoff{500};
  std::chrono::milliseconds max_backoff{30000};
  int max_in_flight = 4;
  double requests_per_second = 2.0;
  double burst = 4.0;
  std::chrono::seconds timeout{120};
  /// Replaceable for tests; defaults to std::this_thread::sleep_for.
  std::function<void(std::chrono::milliseconds)> sleep;
};

/// OpenAI-compatible chat-completions client.
class LiveBackend final : public Backend {
 public:
  /// Throws AuthMissing when no key is configured and InvalidArgument on a
  /// malformed base URL.
  explicit LiveBackend(LiveConfig config);
  ~LiveBackend() override;

  /// Retries 429, 5xx and transport failures with exponential backoff; other
  /// 4xx fail at once. Throws RateLimited or BackendUnavailable.
  Generation complete(const CompletionRequest& request) override;
  std::string tag() const override { return "live"; }

  /// The exact JSON body sent for `request`.
  static std::string wire_body(const CompletionRequest& request);

 private:
  LiveConfig config_;
  std::string scheme_host_port_;
  std::string path_prefix_;
  RateLimiter limiter_;
  std::counting_semaphore<1024> in_flight_;
};

}  // namespace conductor::backend
