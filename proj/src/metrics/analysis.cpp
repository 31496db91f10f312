// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#include "conductor/metrics/analysis.hpp"

#include <set>
#include <string_view>

#include "conductor/core/errors.hpp"
#include "conductor/core/text.hpp"
#include "conductor/plan/program.hpp"

namespace conductor::metrics {

std::map<std::string, double> StrategyHistogram::proportions() const {
  std::map<std::string, double> out;
  for (const auto& [label, count] : counts) out[label] = static_cast<double>(count) / static_cast<double>(total);
  return out;
}

double StrategyHistogram::proportion(const std::string& label) const {
  const auto it = counts.find(label);
  if (it == counts.end() || total == 0) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(total);
}

std::string strategy_label(const RunRecord& record) {
  if (!record.parsed_plan) return {};
  return text::join(plan::plan_labels(*record.parsed_plan), " ");
}

StrategyHistogram strategy_distribution(std::span<const RunRecord> records) {
  StrategyHistogram h;
  for (const auto& r : records) {
    std::string label = strategy_label(r);
    if (label.empty()) continue;
    ++h.counts[std::move(label)];
    ++h.total;
  }
  return h;
}

RetrievalCounts retrieval_accuracy(std::span<const RunRecord> records,
                                   std::span<const std::vector<std::string>> gold_personas,
                                   std::span<const std::vector<std::string>> gold_documents) {
  if (gold_personas.size() != records.size() || gold_documents.size() != records.size()) {
    throw Error(ErrorKind::LengthMismatch, "gold sets must align with records");
  }
  RetrievalCounts counts;
  for (std::size_t i = 0; i < records.size(); ++i) {
    std::set<std::string_view> retrieved;
    for (const auto& b : records[i].evidence.bindings()) {
      if (const auto* ev = std::get_if<Evidence>(&b)) {
        for (const auto& p : ev->passages) retrieved.insert(p.text);
      }
    }
    const auto hits = [&](const std::vector<std::string>& gold) {
      std::set<std::string_view> found;
      for (const auto& g : gold) {
        if (retrieved.contains(g)) found.insert(g);
      }
      return found.size();
    };
    counts.correct_persona += hits(gold_personas[i]);
    counts.correct_document += hits(gold_documents[i]);
  }
  return counts;
}

}  // namespace conductor::metrics
