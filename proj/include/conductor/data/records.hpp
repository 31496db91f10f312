// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "conductor/core/types.hpp"

namespace conductor::data {

/// One record as a single-line JSON object; keys sorted, cost as a
/// six-place decimal string.
std::string record_to_json(const RunRecord& record);
/// Throws SchemaViolation.
RunRecord record_from_json(std::string_view line);

/// One record per line. Throws IoError.
void export_records(const std::vector<RunRecord>& records, const std::filesystem::path& path);
std::vector<RunRecord> load_records(const std::filesystem::path& path);

}  // namespace conductor::data
