// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "conductor/core/types.hpp"

namespace conductor::metrics {

/// Plan labels ("Hint Question") with their counts, verbatim.
struct StrategyHistogram {
  std::map<std::string, std::size_t> counts;
  std::size_t total = 0;

  std::map<std::string, double> proportions() const;
  double proportion(const std::string& label) const;
};

/// The space-joined plan labels of a record, empty when it has no parsed
/// plan.
std::string strategy_label(const RunRecord& record);

/// Records without a parsed plan (or with an empty one) are skipped.
StrategyHistogram strategy_distribution(std::span<const RunRecord> records);

struct RetrievalCounts {
  std::size_t correct_persona = 0;
  std::size_t correct_document = 0;
  friend bool operator==(const RetrievalCounts&, const RetrievalCounts&) = default;
};

/// Per record, the distinct gold strings found verbatim among all retrieved
/// passages, summed over the corpus per source. Gold sets are aligned with
/// `records`; throws LengthMismatch otherwise.
RetrievalCounts retrieval_accuracy(std::span<const RunRecord> records,
                                   std::span<const std::vector<std::string>> gold_personas,
                                   std::span<const std::vector<std::string>> gold_documents);

}  // namespace conductor::metrics
