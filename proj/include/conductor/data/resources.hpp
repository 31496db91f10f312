// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace conductor::data {

struct EmbeddedResource {
  std::string_view name;
  std::string_view content;
};

namespace detail {
/// Generated at build time from the resources/ directory.
const std::vector<EmbeddedResource>& embedded_resources();
}  // namespace detail

/// Templates, demonstration banks, toolsets and prices. Files in the
/// optional override directory shadow the built-in copies by relative path.
class ResourceStore {
 public:
  explicit ResourceStore(std::optional<std::filesystem::path> override_dir = std::nullopt);

  static const ResourceStore& builtin();

  std::optional<std::string> find(std::string_view name) const;
  /// Throws IoError when absent.
  std::string get(std::string_view name) const;
  /// Sorted names starting with `prefix`, built-in and override combined.
  std::vector<std::string> list(std::string_view prefix) const;

 private:
  std::optional<std::filesystem::path> override_dir_;
};

}  // namespace conductor::data
