// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#include "conductor/data/resources.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "conductor/core/errors.hpp"

namespace conductor::data {

ResourceStore::ResourceStore(std::optional<std::filesystem::path> override_dir)
    : override_dir_(std::move(override_dir)) {}

const ResourceStore& ResourceStore::builtin() {
  static const ResourceStore kStore;
  return kStore;
}

std::optional<std::string> ResourceStore::find(std::string_view name) const {
  if (override_dir_) {
    const auto path = *override_dir_ / std::filesystem::path(std::string(name));
    std::ifstream in(path, std::ios::binary);
    if (in) {
      std::ostringstream ss;
      ss << in.rdbuf();
      return ss.str();
    }
  }
  for (const auto& r : detail::embedded_resources()) {
    if (r.name == name) return std::string(r.content);
  }
  return std::nullopt;
}

std::string ResourceStore::get(std::string_view name) const {
  auto found = find(name);
  if (!found) throw Error(ErrorKind::IoError, "resource '" + std::string(name) + "' not found");
  return std::move(*found);
}

std::vector<std::string> ResourceStore::list(std::string_view prefix) const {
  std::set<std::string> names;
  for (const auto& r : detail::embedded_resources()) {
    if (r.name.starts_with(prefix)) names.emplace(r.name);
  }
  if (override_dir_ && std::filesystem::is_directory(*override_dir_)) {
    for (const auto& entry : std::filesystem::recursive_directory_iterator(*override_dir_)) {
      if (!entry.is_regular_file()) continue;
      const std::string rel = std::filesystem::relative(entry.path(), *override_dir_).generic_string();
      if (rel.starts_with(prefix)) names.insert(rel);
    }
  }
  return {names.begin(), names.end()};
}

}  // namespace conductor::data
