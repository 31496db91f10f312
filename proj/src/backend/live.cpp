// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "conductor/backend/live.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

#include "conductor/core/errors.hpp"
#include "httplib.h"
#include "json.hpp"

namespace conductor::backend {
namespace {

using nlohmann::json;

void default_sleep(std::chrono::milliseconds d) { std::this_thread::sleep_for(d); }

bool retryable(int status) { return status == 429 || status >= 500; }

}  // namespace

RateLimiter::RateLimiter(double per_second, double burst, Sleep sleep)
    : per_second_(per_second), burst_(std::max(1.0, burst)), tokens_(std::max(1.0, burst)),
      last_(Clock::now()), sleep_(sleep ? std::move(sleep) : Sleep(default_sleep)) {
  if (!(per_second_ > 0.0)) throw Error(ErrorKind::InvalidArgument, "rate limit must be positive");
}

void RateLimiter::acquire() {
  for (;;) {
    std::chrono::milliseconds wait{0};
    {
      std::lock_guard lock(mu_);
      const auto now = Clock::now();
      const double elapsed = std::chrono::duration<double>(now - last_).count();
      last_ = now;
      tokens_ = std::min(burst_, tokens_ + elapsed * per_second_);
      if (tokens_ >= 1.0) {
        tokens_ -= 1.0;
        return;
      }
      wait = std::chrono::milliseconds(static_cast<long>((1.0 - tokens_) / per_second_ * 1000.0) + 1);
    }
    sleep_(wait);
  }
}

LiveBackend::LiveBackend(LiveConfig config)
    : config_(std::move(config)),
      limiter_(config_.requests_per_second, config_.burst, config_.sleep),
      in_flight_(std::clamp(config_.max_in_flight, 1, 1024)) {
  if (!config_.sleep) config_.sleep = default_sleep;
  if (config_.api_key.empty()) {
    if (const char* env = std::getenv(std::string(kApiKeyEnv).c_str()); env != nullptr) config_.api_key = env;
  }
  if (config_.api_key.empty()) {
    throw Error(ErrorKind::AuthMissing, "set " + std::string(kApiKeyEnv) + " to use the live backend");
  }
  if (config_.max_attempts < 1) throw Error(ErrorKind::InvalidArgument, "max_attempts must be >= 1");
  const std::string& url = config_.base_url;
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos || scheme_end == 0) {
    throw Error(ErrorKind::InvalidArgument, "base URL needs a scheme: '" + url + "'");
  }
  const auto path_start = url.find('/', scheme_end + 3);
  scheme_host_port_ = url.substr(0, path_start);
  path_prefix_ = path_start == std::string::npos ? "" : url.substr(path_start);
  while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
}

LiveBackend::~LiveBackend() = default;

std::string LiveBackend::wire_body(const CompletionRequest& request) {
  json body = {{"model", request.model_id},
               {"temperature", request.temperature},
               {"top_p", request.top_p}};
  json messages = json::array();
  for (const auto& m : request.messages) messages.push_back({{"role", m.role}, {"content", m.content}});
  body["messages"] = std::move(messages);
  if (request.max_tokens) body["max_tokens"] = *request.max_tokens;
  if (!request.stop.empty()) body["stop"] = request.stop;
  return body.dump(-1, ' ', false, json::error_handler_t::replace);
}

Generation LiveBackend::complete(const CompletionRequest& request) {
  request.validate();
  const std::string body = wire_body(request);
  const std::string path = path_prefix_ + "/chat/completions";

  in_flight_.acquire();
  struct Release {
    std::counting_semaphore<1024>& s;
    ~Release() { s.release(); }
  } release{in_flight_};

  std::chrono::milliseconds backoff = config_.initial_backoff;
  std::string last_problem;
  bool last_was_rate_limit = false;
  for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    limiter_.acquire();
    httplib::Client client(scheme_host_port_);
    const auto timeout = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout).count();
    client.set_connection_timeout(static_cast<time_t>(timeout), 0);
    client.set_read_timeout(static_cast<time_t>(timeout), 0);
    client.set_write_timeout(static_cast<time_t>(timeout), 0);
    const httplib::Headers headers = {{"Authorization", "Bearer " + config_.api_key}};

    const auto start = std::chrono::steady_clock::now();
    const auto res = client.Post(path, headers, body, "application/json");
    const auto latency =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();

    if (!res) {
      last_problem = "transport error: " + httplib::to_string(res.error());
      last_was_rate_limit = false;
    } else if (res->status >= 200 && res->status < 300) {
      json doc;
      try {
        doc = json::parse(res->body);
      } catch (const json::parse_error& e) {
        throw Error(ErrorKind::BackendUnavailable, std::string("malformed response body: ") + e.what());
      }
      const json* content = nullptr;
      if (doc.contains("choices") && doc["choices"].is_array() && !doc["choices"].empty()) {
        const json& choice = doc["choices"][0];
        if (choice.contains("message") && choice["message"].contains("content") &&
            choice["message"]["content"].is_string()) {
          content = &choice["message"]["content"];
        }
      }
      if (content == nullptr) throw Error(ErrorKind::BackendUnavailable, "response has no message content");
      Generation g;
      g.text = content->get<std::string>();
      g.latency_ms = latency;
      g.backend_tag = tag();
      g.model_id = request.model_id;
      const json* usage = doc.contains("usage") && doc["usage"].is_object() ? &doc["usage"] : nullptr;
      if (usage != nullptr && (*usage).value("prompt_tokens", -1) >= 0 &&
          (*usage).value("completion_tokens", -1) >= 0) {
        g.prompt_tokens = (*usage)["prompt_tokens"].get<std::int64_t>();
        g.completion_tokens = (*usage)["completion_tokens"].get<std::int64_t>();
      } else {
        g.prompt_tokens = estimate_tokens(request.prompt_text());
        g.completion_tokens = estimate_tokens(g.text);
      }
      return g;
    } else if (retryable(res->status)) {
      last_problem = "HTTP " + std::to_string(res->status);
      last_was_rate_limit = res->status == 429;
    } else {
      throw Error(ErrorKind::BackendUnavailable,
                  "HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200));
    }
    if (attempt < config_.max_attempts) {
      config_.sleep(backoff);
      backoff = std::min(backoff * 2, config_.max_backoff);
    }
  }
  throw Error(last_was_rate_limit ? ErrorKind::RateLimited : ErrorKind::BackendUnavailable,
              last_problem + " after " + std::to_string(config_.max_attempts) + " attempts");
}

}  // namespace conductor::backend
