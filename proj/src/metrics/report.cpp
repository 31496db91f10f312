// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#include "conductor/metrics/report.hpp"

#include <cstdio>
#include <unordered_map>

#include "conductor/core/errors.hpp"
#include "conductor/metrics/metrics.hpp"
#include "json.hpp"

namespace conductor::metrics {
namespace {

bool is_per_sample(const std::string& metric) {
  return metric == "avg_bleu" || metric == "f1" || metric == "rouge_l";
}

const char* display_name(const std::string& metric) {
  if (metric == "avg_bleu") return "Avg.B";
  if (metric == "sbleu") return "sBLEU";
  if (metric == "f1") return "F1";
  if (metric == "rouge_l") return "Rouge.L";
  if (metric == "dist1") return "D-1";
  return metric.c_str();
}

SampleScores score_one(const std::vector<std::string>& panel, const RunRecord& record, const Reference& ref) {
  SampleScores s;
  s.sample_id = record.sample_id;
  const Tokens cand = normalize(record.response);
  const Tokens gold = normalize(ref.response);
  for (const auto& m : panel) {
    if (m == "avg_bleu") {
      s.values[m] = sample_avg_bleu(cand, std::span<const Tokens>(&gold, 1));
    } else if (m == "f1") {
      s.values[m] = token_f1(cand, gold);
    } else if (m == "rouge_l") {
      s.values[m] = rouge_l(cand, gold);
    }
  }
  return s;
}

std::string fixed(double v, int places) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, v);
  return buf;
}

}  // namespace

std::vector<std::string> metric_panel(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::Focus:
      return {"avg_bleu", "f1", "rouge_l"};
    case DatasetKind::Cima:
      return {"sbleu", "f1"};
    case DatasetKind::PsyQA:
      return {"avg_bleu", "f1", "dist1"};
  }
  return {};
}

std::vector<const Reference*> align(std::span<const RunRecord> records, std::span<const Reference> references) {
  if (records.size() != references.size()) {
    throw Error(ErrorKind::LengthMismatch, std::to_string(records.size()) + " records vs " +
                                               std::to_string(references.size()) + " references");
  }
  std::unordered_map<std::string_view, const Reference*> by_id;
  for (const auto& r : references) {
    if (!by_id.emplace(r.sample_id, &r).second) {
      throw Error(ErrorKind::LengthMismatch, "duplicate reference id '" + r.sample_id + "'");
    }
  }
  std::vector<const Reference*> out;
  out.reserve(records.size());
  std::unordered_map<std::string_view, bool> used;
  for (const auto& rec : records) {
    const auto it = by_id.find(rec.sample_id);
    if (it == by_id.end()) throw Error(ErrorKind::LengthMismatch, "no reference for id '" + rec.sample_id + "'");
    if (used[rec.sample_id]) throw Error(ErrorKind::LengthMismatch, "duplicate record id '" + rec.sample_id + "'");
    used[rec.sample_id] = true;
    out.push_back(it->second);
  }
  return out;
}

std::vector<SampleScores> score_samples_serial(DatasetKind kind, std::span<const RunRecord> records,
                                               std::span<const Reference* const> refs) {
  if (records.size() != refs.size()) throw Error(ErrorKind::LengthMismatch, "records and references differ in size");
  const auto panel = metric_panel(kind);
  std::vector<SampleScores> out;
  out.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) out.push_back(score_one(panel, records[i], *refs[i]));
  return out;
}

std::vector<SampleScores> score_samples(DatasetKind kind, std::span<const RunRecord> records,
                                        std::span<const Reference* const> refs) {
  if (records.size() != refs.size()) throw Error(ErrorKind::LengthMismatch, "records and references differ in size");
  const auto panel = metric_panel(kind);
  std::vector<SampleScores> out(records.size());
  const auto n = static_cast<std::ptrdiff_t>(records.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    out[u] = score_one(panel, records[u], *refs[u]);
  }
  return out;
}

MetricReport score_run(std::span<const RunRecord> records, std::span<const Reference> references,
                       DatasetKind kind) {
  const auto refs = align(records, references);
  MetricReport report;
  report.kind = kind;
  report.samples = records.size();
  report.panel = metric_panel(kind);
  report.per_sample = score_samples(kind, records, refs);

  std::vector<std::string> candidates;
  std::vector<std::string> golds;
  for (std::size_t i = 0; i < records.size(); ++i) {
    candidates.push_back(records[i].response);
    golds.push_back(refs[i]->response);
    if (records[i].error) ++report.failures;
    report.total_cost += records[i].cost_usd;
  }
  for (const auto& m : report.panel) {
    if (is_per_sample(m)) {
      double sum = 0.0;
      for (const auto& s : report.per_sample) sum += s.values.at(m);
      report.aggregates[m] = records.empty() ? 0.0 : sum / static_cast<double>(records.size());
    } else if (m == "sbleu") {
      report.aggregates[m] = corpus_bleu(candidates, golds);
    } else if (m == "dist1") {
      report.aggregates[m] = distinct_n(std::span<const std::string>(candidates), 1);
    }
  }
  if (is_source_kind(kind)) {
    std::vector<std::vector<std::string>> personas;
    std::vector<std::vector<std::string>> documents;
    for (const auto* r : refs) {
      personas.push_back(r->gold_personas);
      documents.push_back(r->gold_documents);
    }
    report.retrieval = retrieval_accuracy(records, personas, documents);
  } else {
    report.strategies = strategy_distribution(records);
  }
  return report;
}

std::string report_json(const MetricReport& report) {
  using nlohmann::json;
  json j;
  j["kind"] = std::string(to_string(report.kind));
  j["samples"] = report.samples;
  j["failures"] = report.failures;
  j["panel"] = report.panel;
  j["aggregates"] = report.aggregates;
  json per = json::array();
  for (const auto& s : report.per_sample) per.push_back({{"sample_id", s.sample_id}, {"values", s.values}});
  j["per_sample"] = std::move(per);
  if (report.strategies) {
    j["strategy_distribution"] = {{"counts", report.strategies->counts},
                                  {"total", report.strategies->total},
                                  {"proportions", report.strategies->proportions()}};
  }
  if (report.retrieval) {
    j["retrieval_accuracy"] = {{"correct_persona", report.retrieval->correct_persona},
                               {"correct_document", report.retrieval->correct_document}};
  }
  j["total_cost_usd"] = report.total_cost.to_string(6);
  return j.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

std::string report_table(const MetricReport& report) {
  std::vector<std::pair<std::string, std::string>> rows;
  for (const auto& m : report.panel) {
    const double v = report.aggregates.at(m);
    rows.emplace_back(display_name(m), fixed(m == "sbleu" ? v : v * 100.0, 2));
  }
  rows.emplace_back("samples", std::to_string(report.samples));
  rows.emplace_back("failures", std::to_string(report.failures));
  rows.emplace_back("cost (USD)", report.total_cost.to_string(6));
  if (report.retrieval) {
    rows.emplace_back("correct persona", std::to_string(report.retrieval->correct_persona));
    rows.emplace_back("correct document", std::to_string(report.retrieval->correct_document));
  }
  std::size_t width = 6;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  std::string out = "dataset: " + std::string(to_string(report.kind)) + "\n";
  for (const auto& [k, v] : rows) {
    out += k;
    out.append(width - k.size() + 2, ' ');
    out += v;
    out.push_back('\n');
  }
  if (report.strategies && report.strategies->total > 0) {
    out += "strategy distribution:\n";
    for (const auto& [label, share] : report.strategies->proportions()) {
      out += "  " + fixed(share * 100.0, 1) + "%  " + label + "\n";
    }
  }
  return out;
}

}  // namespace conductor::metrics
