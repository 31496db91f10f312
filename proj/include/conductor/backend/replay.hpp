// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#pragma once

#include <filesystem>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "conductor/backend/backend.hpp"

namespace conductor::backend {

/// One line of a replay fixture file.
struct FixtureEntry {
  std::string hash;
  std::string model;
  std::string prompt;
  std::string response;
  std::int64_t prompt_tokens = 0;
  std::int64_t completion_tokens = 0;
  friend bool operator==(const FixtureEntry&, const FixtureEntry&) = default;
};

std::string fixture_line(const FixtureEntry& entry);
/// Throws SchemaViolation naming the line number.
FixtureEntry parse_fixture_line(std::string_view line, std::size_t line_no);

/// Canned responses keyed by request hash. Read-only after construction.
class ReplayBackend final : public Backend {
 public:
  explicit ReplayBackend(std::vector<FixtureEntry> entries);
  /// Throws IoError or SchemaViolation.
  static ReplayBackend load(const std::filesystem::path& path);

  /// Throws ReplayMiss carrying the hash. Latency is always 0.
  Generation complete(const CompletionRequest& request) override;
  std::string tag() const override { return "replay"; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, FixtureEntry> entries_;
};

/// Passes requests through and remembers every exchange, in call order,
/// as fixture entries.
class RecordingBackend final : public Backend {
 public:
  explicit RecordingBackend(Backend& inner) : inner_(inner) {}

  Generation complete(const CompletionRequest& request) override;
  std::string tag() const override { return inner_.tag(); }

  std::vector<FixtureEntry> entries() const;

 private:
  Backend& inner_;
  mutable std::mutex mu_;
  std::vector<FixtureEntry> entries_;
};

/// Writes entries sorted by hash with duplicates removed, so the file is
/// independent of call order.
void write_fixtures(const std::filesystem::path& path, std::vector<FixtureEntry> entries);

}  // namespace conductor::backend
