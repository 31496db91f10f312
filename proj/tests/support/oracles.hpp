// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

// Brute-force reference implementations for the property tests. They share no
// code with the library: n-grams are keyed by token vectors, LCS is a
// memoized recursion and BM25 evaluates the textbook formula per document.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Seq = std::vector<std::string>;

inline std::map<Seq, long> grams(const Seq& s, int n) {
  std::map<Seq, long> out;
  for (int i = 0; i + n <= static_cast<int>(s.size()); ++i) ++out[Seq(s.begin() + i, s.begin() + i + n)];
  return out;
}

inline std::pair<long, long> clipped(const Seq& cand, const Seq& ref, int n) {
  const auto c = grams(cand, n);
  const auto r = grams(ref, n);
  long hit = 0;
  long total = 0;
  for (const auto& [g, count] : c) {
    total += count;
    const auto it = r.find(g);
    if (it != r.end()) hit += std::min(count, it->second);
  }
  return {hit, total};
}

/// Smoothed variant: a zero match count becomes 1 / (total + 1).
inline double bleu_n(const Seq& cand, const Seq& ref, int n, bool smoothing) {
  double product = 1.0;
  for (int i = 1; i <= n; ++i) {
    const auto [hit, total] = clipped(cand, ref, i);
    if (hit == 0) {
      if (!smoothing) return 0.0;
      product *= 1.0 / static_cast<double>(total + 1);
    } else {
      product *= static_cast<double>(hit) / static_cast<double>(total);
    }
  }
  const double c = static_cast<double>(cand.size());
  const double r = static_cast<double>(ref.size());
  const double bp = c >= r ? 1.0 : std::exp(1.0 - r / c);
  return bp * std::pow(product, 1.0 / n);
}

inline double avg_bleu(const std::vector<Seq>& cands, const std::vector<Seq>& refs) {
  double sum = 0.0;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (cands[i].empty()) continue;
    double s = 0.0;
    for (int n = 1; n <= 4; ++n) s += bleu_n(cands[i], refs[i], n, true);
    sum += s / 4.0;
  }
  return sum / static_cast<double>(cands.size());
}

/// sacreBLEU corpus BLEU with "exp" smoothing on a 0..100 scale.
inline double corpus_bleu(const std::vector<Seq>& cands, const std::vector<Seq>& refs) {
  long hit[4] = {0, 0, 0, 0};
  long tot[4] = {0, 0, 0, 0};
  double sys = 0.0;
  double ref = 0.0;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    sys += static_cast<double>(cands[i].size());
    ref += static_cast<double>(refs[i].size());
    for (int n = 1; n <= 4; ++n) {
      const auto [h, t] = clipped(cands[i], refs[i], n);
      hit[n - 1] += h;
      tot[n - 1] += t;
    }
  }
  if (hit[0] + hit[1] + hit[2] + hit[3] == 0) return 0.0;
  double p[4] = {0, 0, 0, 0};
  double smooth = 1.0;
  for (int n = 0; n < 4; ++n) {
    if (tot[n] == 0) break;
    if (hit[n] == 0) {
      smooth *= 2.0;
      p[n] = 100.0 / (smooth * static_cast<double>(tot[n]));
    } else {
      p[n] = 100.0 * static_cast<double>(hit[n]) / static_cast<double>(tot[n]);
    }
  }
  double product = 1.0;
  for (double v : p) {
    if (v == 0.0) return 0.0;
    product *= v;
  }
  const double bp = sys < ref ? std::exp(1.0 - ref / sys) : 1.0;
  return bp * std::pow(product, 0.25);
}

inline double f1(const Seq& cand, const Seq& ref) {
  if (cand.empty() || ref.empty()) return 0.0;
  Seq a = cand;
  Seq b = ref;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  Seq common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  if (common.empty()) return 0.0;
  const double p = static_cast<double>(common.size()) / static_cast<double>(cand.size());
  const double r = static_cast<double>(common.size()) / static_cast<double>(ref.size());
  return 2 * p * r / (p + r);
}

inline std::size_t lcs(const Seq& a, const Seq& b) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
  std::function<std::size_t(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t j) -> std::size_t {
    if (i == a.size() || j == b.size()) return 0;
    const auto key = std::make_pair(i, j);
    if (const auto it = memo.find(key); it != memo.end()) return it->second;
    const std::size_t v = a[i] == b[j] ? 1 + go(i + 1, j + 1) : std::max(go(i + 1, j), go(i, j + 1));
    memo[key] = v;
    return v;
  };
  return go(0, 0);
}

inline double rouge_l(const Seq& cand, const Seq& ref) {
  if (cand.empty() || ref.empty()) return 0.0;
  const double l = static_cast<double>(lcs(cand, ref));
  if (l == 0.0) return 0.0;
  const double p = l / static_cast<double>(cand.size());
  const double r = l / static_cast<double>(ref.size());
  return 2 * p * r / (p + r);
}

inline double distinct(const std::vector<Seq>& cands, int n) {
  std::set<Seq> seen;
  long total = 0;
  for (const auto& c : cands) {
    for (const auto& [g, count] : grams(c, n)) {
      seen.insert(g);
      total += count;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(seen.size()) / static_cast<double>(total);
}

struct Ranked {
  std::string doc_id;
  double score;
};

/// Scores every document with Okapi BM25 (idf with +1 inside the log) and
/// sorts by score, then doc id.
inline std::vector<Ranked> bm25_rank(const std::vector<std::string>& ids, const std::vector<Seq>& docs,
                                     const Seq& query, double k1 = 1.5, double b = 0.75) {
  const double n = static_cast<double>(docs.size());
  double total_len = 0.0;
  for (const auto& d : docs) total_len += static_cast<double>(d.size());
  const double avgdl = total_len / n;
  std::vector<Ranked> out;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    double s = 0.0;
    for (const auto& q : query) {
      const double tf = static_cast<double>(std::count(docs[i].begin(), docs[i].end(), q));
      if (tf == 0.0) continue;
      double df = 0.0;
      for (const auto& d : docs) df += std::find(d.begin(), d.end(), q) != d.end() ? 1.0 : 0.0;
      const double idf = std::log((n - df + 0.5) / (df + 0.5) + 1.0);
      const double len_ratio = avgdl > 0.0 ? static_cast<double>(docs[i].size()) / avgdl : 0.0;
      s += idf * tf * (k1 + 1.0) / (tf + k1 * (1.0 - b + b * len_ratio));
    }
    out.push_back({ids[i], s});
  }
  std::sort(out.begin(), out.end(), [](const Ranked& x, const Ranked& y) {
    if (x.score != y.score) return x.score > y.score;
    return x.doc_id < y.doc_id;
  });
  return out;
}

/// Random token sequence of length [min_len, max_len] over words w0..w{vocab-1}.
inline Seq random_seq(std::mt19937& rng, int min_len, int max_len, int vocab) {
  std::uniform_int_distribution<int> len(min_len, max_len);
  std::uniform_int_distribution<int> word(0, vocab - 1);
  Seq s(static_cast<std::size_t>(len(rng)));
  for (auto& t : s) t = "w" + std::to_string(word(rng));
  return s;
}

inline std::string join(const Seq& s) {
  std::string out;
  for (const auto& t : s) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

}  // namespace oracle
