// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "conductor/core/decimal.hpp"
#include "conductor/core/types.hpp"
#include "conductor/metrics/analysis.hpp"

namespace conductor::metrics {

/// What a record is scored against.
struct Reference {
  std::string sample_id;
  std::string response;
  /// Gold candidate texts; empty for strategy datasets.
  std::vector<std::string> gold_personas;
  std::vector<std::string> gold_documents;
};

/// Metric identifiers used in reports: "avg_bleu", "sbleu", "f1", "rouge_l",
/// "dist1".
std::vector<std::string> metric_panel(DatasetKind kind);

struct SampleScores {
  std::string sample_id;
  /// Per-sample values in [0, 1] for the per-sample metrics of the panel.
  std::map<std::string, double> values;
  friend bool operator==(const SampleScores&, const SampleScores&) = default;
};

struct MetricReport {
  DatasetKind kind = DatasetKind::Focus;
  std::size_t samples = 0;
  std::size_t failures = 0;
  std::vector<std::string> panel;
  /// Per-sample metrics are averaged here on the same [0, 1] scale; sbleu is
  /// on 0..100 and dist1 in [0, 1].
  std::map<std::string, double> aggregates;
  std::vector<SampleScores> per_sample;
  std::optional<StrategyHistogram> strategies;
  std::optional<RetrievalCounts> retrieval;
  Usd total_cost;
};

/// Aligns records to references by sample id (record order kept). Throws
/// LengthMismatch on unequal sizes, unknown ids or duplicate ids.
std::vector<const Reference*> align(std::span<const RunRecord> records, std::span<const Reference> references);

/// Per-sample metric panels. The OpenMP kernel must agree exactly with the
/// serial reference.
std::vector<SampleScores> score_samples_serial(DatasetKind kind, std::span<const RunRecord> records,
                                               std::span<const Reference* const> refs);
std::vector<SampleScores> score_samples(DatasetKind kind, std::span<const RunRecord> records,
                                        std::span<const Reference* const> refs);

MetricReport score_run(std::span<const RunRecord> records, std::span<const Reference> references,
                       DatasetKind kind);

/// The whole report as one JSON document.
std::string report_json(const MetricReport& report);
/// Aligned table; similarity metrics are shown as percentages.
std::string report_table(const MetricReport& report);

}  // namespace conductor::metrics
