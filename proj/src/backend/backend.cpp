// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#include "conductor/backend/backend.hpp"

#include <openssl/evp.h>

#include <chrono>

#include "conductor/core/errors.hpp"
#include "conductor/retrieval/tokenize.hpp"
#include "json.hpp"

namespace conductor::backend {
namespace {

using nlohmann::json;

std::string canonical_json(std::string_view model_id, const std::vector<ChatMessage>& messages) {
  json doc = json::object();
  json list = json::array();
  for (const auto& m : messages) list.push_back({{"content", m.content}, {"role", m.role}});
  doc["messages"] = std::move(list);
  doc["model"] = model_id;
  return doc.dump(-1, ' ', false, json::error_handler_t::replace);
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::InvalidArgument, "SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

}  // namespace

CompletionRequest CompletionRequest::from_prompt(std::string prompt, std::string model_id) {
  CompletionRequest r;
  r.messages.push_back({"user", std::move(prompt)});
  r.model_id = std::move(model_id);
  return r;
}

void CompletionRequest::validate() const {
  if (messages.empty()) throw Error(ErrorKind::InvalidArgument, "request has no messages");
  if (!(temperature >= 0.0)) throw Error(ErrorKind::InvalidArgument, "temperature must be >= 0");
  if (!(top_p > 0.0 && top_p <= 1.0)) throw Error(ErrorKind::InvalidArgument, "top_p must be in (0, 1]");
  if (max_tokens && *max_tokens <= 0) throw Error(ErrorKind::InvalidArgument, "max_tokens must be positive");
}

std::string CompletionRequest::prompt_text() const {
  std::string out;
  for (std::size_t i = 0; i < messages.size(); ++i) {
    if (i > 0) out += "\n\n";
    out += messages[i].content;
  }
  return out;
}

std::string request_hash(const CompletionRequest& request) {
  return sha256_hex(canonical_json(request.model_id, request.messages));
}

std::string request_hash(std::string_view model_id, std::string_view prompt) {
  return sha256_hex(canonical_json(model_id, {ChatMessage{"user", std::string(prompt)}}));
}

std::int64_t estimate_tokens(std::string_view text) {
  return static_cast<std::int64_t>(retrieval::tokenize(text).size() + retrieval::count_punctuation(text));
}

Generation ScriptedBackend::complete(const CompletionRequest& request) {
  request.validate();
  Generation g;
  g.text = responder_(request);
  g.prompt_tokens = estimate_tokens(request.prompt_text());
  g.completion_tokens = estimate_tokens(g.text);
  g.backend_tag = tag();
  g.model_id = request.model_id;
  return g;
}

}  // namespace conductor::backend
