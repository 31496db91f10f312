// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conductor/core/types.hpp"
#include "conductor/metrics/report.hpp"

namespace conductor::data {

inline constexpr std::size_t kFocusPersonaCandidates = 5;
inline constexpr std::size_t kFocusDocumentCandidates = 10;
inline constexpr std::string_view kOthersStrategy = "Others";

struct Sample {
  std::string id;
  Dialogue dialogue;
  std::string gold_response;
  std::optional<std::vector<std::string>> persona_candidates;
  std::optional<std::vector<std::string>> document_candidates;
  std::optional<std::vector<std::size_t>> gold_persona_indices;
  std::optional<std::size_t> gold_document_index;
  std::optional<std::vector<std::string>> gold_strategies;

  std::vector<std::string> gold_persona_texts() const;
  std::vector<std::string> gold_document_texts() const;
  metrics::Reference reference() const;
};

/// Parses and validates one JSONL record. Throws Error(SchemaViolation)
/// with the reason; `strategy_names` is the dataset's strategy set (empty for
/// source datasets).
Sample parse_sample(std::string_view line, DatasetKind kind, const std::vector<std::string>& strategy_names);

/// Every invalid line is reported in a single SchemaViolation, one
/// "line N: reason" per line. Throws IoError when the file cannot be read.
std::vector<Sample> load_dataset(const std::filesystem::path& path, DatasetKind kind);
std::vector<Sample> parse_dataset(std::string_view text, DatasetKind kind);

/// Strategy names of the dataset's shipped toolset.
std::vector<std::string> strategy_names(DatasetKind kind);

}  // namespace conductor::data
