// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace conductor::metrics {

using Tokens = std::vector<std::string>;

/// Normalization shared by every metric: the retrieval tokenizer.
Tokens normalize(std::string_view text);

struct NgramMatch {
  std::int64_t clipped = 0;
  std::int64_t total = 0;
  friend bool operator==(const NgramMatch&, const NgramMatch&) = default;
};

/// Candidate n-grams clipped by the maximum count in any reference;
/// total = max(0, |cand| - n + 1). Throws InvalidArgument when n < 1.
NgramMatch modified_ngram_precision(std::span<const std::string> candidate,
                                    std::span<const std::string> reference, int n);
NgramMatch modified_ngram_precision(std::span<const std::string> candidate,
                                    std::span<const Tokens> references, int n);

/// Reference length closest to `candidate_len`, the shorter one on ties.
std::size_t closest_ref_length(std::size_t candidate_len, std::span<const Tokens> references);

/// Geometric mean of the modified precisions 1..n times min(1, exp(1 - r/c)).
/// With smoothing, a zero match count becomes (0 + 1) / (total + 1).
/// Throws EmptyCandidate for an empty candidate and InvalidArgument unless
/// 1 <= n <= 4.
double sentence_bleu_n(std::span<const std::string> candidate, std::span<const Tokens> references, int n,
                       bool smoothing);
double sentence_bleu_n(std::string_view candidate, std::string_view reference, int n, bool smoothing);

/// Smoothed sentence BLEU-1..4 averaged over samples, then over n. An empty
/// candidate scores 0. Throws LengthMismatch on unequal sizes and
/// EmptyCandidate on an empty corpus.
double avg_bleu(std::span<const std::string> candidates, std::span<const std::string> references);
/// Per-sample mean of smoothed BLEU-1..4; the building block of avg_bleu.
double sample_avg_bleu(std::span<const std::string> candidate, std::span<const Tokens> references);

/// Corpus BLEU-4 on a 0..100 scale with exponential smoothing of zero match
/// counts and closest-reference brevity penalty; 0 when no n-gram matches.
double corpus_bleu(std::span<const std::string> candidates, std::span<const std::string> references);
double corpus_bleu_tokens(std::span<const Tokens> candidates, std::span<const Tokens> references);

/// Multiset-overlap F1; 0 when either side is empty.
double token_f1(std::span<const std::string> candidate, std::span<const std::string> reference);
double token_f1(std::string_view candidate, std::string_view reference);

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b);

/// LCS-based F-measure; beta = 1 is the balanced F1, larger beta weights
/// recall.
double rouge_l(std::span<const std::string> candidate, std::span<const std::string> reference,
               double beta = 1.0);
double rouge_l(std::string_view candidate, std::string_view reference, double beta = 1.0);

/// Distinct n-grams over all candidates divided by all n-grams; 0 for an
/// empty corpus. Throws InvalidArgument when n < 1.
double distinct_n(std::span<const Tokens> candidates, int n);
double distinct_n(std::span<const std::string> candidates, int n);

}  // namespace conductor::metrics
