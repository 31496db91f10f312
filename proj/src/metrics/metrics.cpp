// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#include "conductor/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "conductor/core/errors.hpp"
#include "conductor/retrieval/tokenize.hpp"

namespace conductor::metrics {
namespace {

std::string ngram_key(std::span<const std::string> tokens, std::size_t start, int n) {
  std::string key;
  for (int i = 0; i < n; ++i) {
    if (i > 0) key.push_back('\x1f');
    key += tokens[start + static_cast<std::size_t>(i)];
  }
  return key;
}

std::unordered_map<std::string, std::int64_t> ngram_counts(std::span<const std::string> tokens, int n) {
  std::unordered_map<std::string, std::int64_t> counts;
  if (tokens.size() < static_cast<std::size_t>(n)) return counts;
  for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= tokens.size(); ++i) ++counts[ngram_key(tokens, i, n)];
  return counts;
}

void check_order(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n-gram order must be >= 1");
}

std::vector<Tokens> normalize_all(std::span<const std::string> texts) {
  std::vector<Tokens> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(normalize(t));
  return out;
}

void check_lengths(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorKind::LengthMismatch,
                std::to_string(a) + " candidates vs " + std::to_string(b) + " references");
  }
}

double sacre_log(double x) { return x == 0.0 ? -9999999999.0 : std::log(x); }

}  // namespace

Tokens normalize(std::string_view text) { return retrieval::tokenize(text); }

NgramMatch modified_ngram_precision(std::span<const std::string> candidate,
                                    std::span<const std::string> reference, int n) {
  const Tokens ref(reference.begin(), reference.end());
  return modified_ngram_precision(candidate, std::span<const Tokens>(&ref, 1), n);
}

NgramMatch modified_ngram_precision(std::span<const std::string> candidate,
                                    std::span<const Tokens> references, int n) {
  check_order(n);
  NgramMatch m;
  const auto un = static_cast<std::size_t>(n);
  m.total = candidate.size() >= un ? static_cast<std::int64_t>(candidate.size() - un + 1) : 0;
  if (m.total == 0) return m;
  std::unordered_map<std::string, std::int64_t> max_ref;
  for (const auto& ref : references) {
    for (const auto& [key, count] : ngram_counts(ref, n)) {
      auto& slot = max_ref[key];
      slot = std::max(slot, count);
    }
  }
  for (const auto& [key, count] : ngram_counts(candidate, n)) {
    const auto it = max_ref.find(key);
    if (it != max_ref.end()) m.clipped += std::min(count, it->second);
  }
  return m;
}

std::size_t closest_ref_length(std::size_t candidate_len, std::span<const Tokens> references) {
  std::size_t best = 0;
  bool have = false;
  for (const auto& ref : references) {
    const std::size_t len = ref.size();
    const auto diff = [&](std::size_t l) { return l > candidate_len ? l - candidate_len : candidate_len - l; };
    if (!have || diff(len) < diff(best) || (diff(len) == diff(best) && len < best)) {
      best = len;
      have = true;
    }
  }
  return best;
}

double sentence_bleu_n(std::span<const std::string> candidate, std::span<const Tokens> references, int n,
                       bool smoothing) {
  if (n < 1 || n > 4) throw Error(ErrorKind::InvalidArgument, "BLEU order must be in 1..4");
  if (candidate.empty()) throw Error(ErrorKind::EmptyCandidate, "empty candidate");
  double log_sum = 0.0;
  for (int i = 1; i <= n; ++i) {
    const NgramMatch m = modified_ngram_precision(candidate, references, i);
    double p = 0.0;
    if (m.clipped == 0) {
      if (!smoothing) return 0.0;
      p = 1.0 / static_cast<double>(m.total + 1);
    } else {
      p = static_cast<double>(m.clipped) / static_cast<double>(m.total);
    }
    log_sum += std::log(p);
  }
  const double c = static_cast<double>(candidate.size());
  const double r = static_cast<double>(closest_ref_length(candidate.size(), references));
  const double bp = std::min(1.0, std::exp(1.0 - r / c));
  return bp * std::exp(log_sum / n);
}

double sentence_bleu_n(std::string_view candidate, std::string_view reference, int n, bool smoothing) {
  const Tokens cand = normalize(candidate);
  const Tokens ref = normalize(reference);
  return sentence_bleu_n(cand, std::span<const Tokens>(&ref, 1), n, smoothing);
}

double sample_avg_bleu(std::span<const std::string> candidate, std::span<const Tokens> references) {
  if (candidate.empty()) return 0.0;
  double sum = 0.0;
  for (int n = 1; n <= 4; ++n) sum += sentence_bleu_n(candidate, references, n, true);
  return sum / 4.0;
}

double avg_bleu(std::span<const std::string> candidates, std::span<const std::string> references) {
  check_lengths(candidates.size(), references.size());
  if (candidates.empty()) throw Error(ErrorKind::EmptyCandidate, "empty corpus");
  double per_n[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Tokens cand = normalize(candidates[i]);
    const Tokens ref = normalize(references[i]);
    if (cand.empty()) continue;
    for (int n = 1; n <= 4; ++n) per_n[n - 1] += sentence_bleu_n(cand, std::span<const Tokens>(&ref, 1), n, true);
  }
  double total = 0.0;
  for (double v : per_n) total += v / static_cast<double>(candidates.size());
  return total / 4.0;
}

double corpus_bleu_tokens(std::span<const Tokens> candidates, std::span<const Tokens> references) {
  check_lengths(candidates.size(), references.size());
  constexpr int kOrder = 4;
  std::int64_t correct[kOrder] = {0, 0, 0, 0};
  std::int64_t total[kOrder] = {0, 0, 0, 0};
  std::size_t sys_len = 0;
  std::size_t ref_len = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto refs = references.subspan(i, 1);
    sys_len += candidates[i].size();
    ref_len += closest_ref_length(candidates[i].size(), refs);
    for (int n = 1; n <= kOrder; ++n) {
      const NgramMatch m = modified_ngram_precision(candidates[i], refs, n);
      correct[n - 1] += m.clipped;
      total[n - 1] += m.total;
    }
  }
  if (std::all_of(std::begin(correct), std::end(correct), [](std::int64_t c) { return c == 0; })) return 0.0;
  double precisions[kOrder] = {0.0, 0.0, 0.0, 0.0};
  double smooth = 1.0;
  for (int n = 0; n < kOrder; ++n) {
    if (total[n] == 0) break;
    if (correct[n] == 0) {
      smooth *= 2.0;
      precisions[n] = 100.0 / (smooth * static_cast<double>(total[n]));
    } else {
      precisions[n] = 100.0 * static_cast<double>(correct[n]) / static_cast<double>(total[n]);
    }
  }
  double bp = 1.0;
  if (sys_len < ref_len) {
    bp = sys_len > 0 ? std::exp(1.0 - static_cast<double>(ref_len) / static_cast<double>(sys_len)) : 0.0;
  }
  double log_sum = 0.0;
  for (double p : precisions) log_sum += sacre_log(p);
  return bp * std::exp(log_sum / kOrder);
}

double corpus_bleu(std::span<const std::string> candidates, std::span<const std::string> references) {
  check_lengths(candidates.size(), references.size());
  const auto cands = normalize_all(candidates);
  const auto refs = normalize_all(references);
  return corpus_bleu_tokens(cands, refs);
}

double token_f1(std::span<const std::string> candidate, std::span<const std::string> reference) {
  if (candidate.empty() || reference.empty()) return 0.0;
  std::map<std::string_view, std::int64_t> ref_counts;
  for (const auto& t : reference) ++ref_counts[t];
  std::int64_t overlap = 0;
  for (const auto& t : candidate) {
    auto it = ref_counts.find(t);
    if (it != ref_counts.end() && it->second > 0) {
      --it->second;
      ++overlap;
    }
  }
  if (overlap == 0) return 0.0;
  const double p = static_cast<double>(overlap) / static_cast<double>(candidate.size());
  const double r = static_cast<double>(overlap) / static_cast<double>(reference.size());
  return 2.0 * p * r / (p + r);
}

double token_f1(std::string_view candidate, std::string_view reference) {
  return token_f1(normalize(candidate), normalize(reference));
}

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double rouge_l(std::span<const std::string> candidate, std::span<const std::string> reference, double beta) {
  if (candidate.empty() || reference.empty()) return 0.0;
  const std::size_t lcs = lcs_length(candidate, reference);
  if (lcs == 0) return 0.0;
  const double p = static_cast<double>(lcs) / static_cast<double>(candidate.size());
  const double r = static_cast<double>(lcs) / static_cast<double>(reference.size());
  const double b2 = beta * beta;
  return (1.0 + b2) * p * r / (r + b2 * p);
}

double rouge_l(std::string_view candidate, std::string_view reference, double beta) {
  return rouge_l(normalize(candidate), normalize(reference), beta);
}

double distinct_n(std::span<const Tokens> candidates, int n) {
  check_order(n);
  std::set<std::string> seen;
  std::size_t total = 0;
  for (const auto& cand : candidates) {
    for (const auto& [key, count] : ngram_counts(cand, n)) {
      seen.insert(key);
      total += static_cast<std::size_t>(count);
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(seen.size()) / static_cast<double>(total);
}

double distinct_n(std::span<const std::string> candidates, int n) {
  const auto toks = normalize_all(candidates);
  return distinct_n(toks, n);
}

}  // namespace conductor::metrics
