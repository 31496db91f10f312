// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#include "conductor/retrieval/bm25.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "conductor/core/errors.hpp"
#include "conductor/core/text.hpp"
#include "conductor/retrieval/tokenize.hpp"

namespace conductor::retrieval {

Corpus::Corpus(std::string source_name, std::vector<Document> docs)
    : source_name_(std::move(source_name)), docs_(std::move(docs)) {
  if (docs_.empty()) throw Error(ErrorKind::EmptyCorpus, "source '" + source_name_ + "' has no documents");
  std::set<std::string_view> seen;
  for (const auto& d : docs_) {
    if (!seen.insert(d.doc_id).second) {
      throw Error(ErrorKind::InvalidArgument, "duplicate doc id '" + d.doc_id + "' in " + source_name_);
    }
  }
}

Corpus Corpus::from_texts(std::string source_name, const std::vector<std::string>& texts) {
  std::vector<Document> docs;
  docs.reserve(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    docs.push_back({source_name + "-" + std::to_string(i), texts[i]});
  }
  return Corpus(std::move(source_name), std::move(docs));
}

Bm25Index Bm25Index::build(const Corpus& corpus, Bm25Params params) {
  if (!(params.k1 >= 0.0) || !(params.b >= 0.0 && params.b <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "BM25 requires k1 >= 0 and 0 <= b <= 1");
  }
  if (corpus.docs().empty()) throw Error(ErrorKind::EmptyCorpus, "empty corpus");
  Bm25Index index;
  index.source_name_ = corpus.source_name();
  index.params_ = params;
  index.docs_ = corpus.docs();
  std::size_t total = 0;
  for (const auto& doc : index.docs_) {
    std::map<TermId, std::uint32_t> tf;
    const auto terms = tokenize(doc.text);
    for (const auto& term : terms) {
      auto [it, inserted] = index.vocab_.try_emplace(term, static_cast<TermId>(index.vocab_.size()));
      if (inserted) index.df_.push_back(0);
      ++tf[it->second];
    }
    std::vector<TermCount> row;
    row.reserve(tf.size());
    for (const auto& [id, count] : tf) {
      row.push_back({id, count});
      ++index.df_[id];
    }
    index.counts_.push_back(std::move(row));
    index.lengths_.push_back(terms.size());
    total += terms.size();
  }
  index.avgdl_ = static_cast<double>(total) / static_cast<double>(index.docs_.size());
  return index;
}

std::optional<Bm25Index::TermId> Bm25Index::term_id(std::string_view term) const {
  const auto it = vocab_.find(std::string(term));
  if (it == vocab_.end()) return std::nullopt;
  return it->second;
}

std::size_t Bm25Index::doc_freq(std::string_view term) const {
  const auto id = term_id(term);
  return id ? df_[*id] : 0;
}

double Bm25Index::idf(std::string_view term) const {
  const double n = static_cast<double>(docs_.size());
  const double df = static_cast<double>(doc_freq(term));
  return std::log((n - df + 0.5) / (df + 0.5) + 1.0);
}

double Bm25Index::score_ids(std::span<const std::optional<TermId>> ids, std::size_t index) const {
  const auto& row = counts_[index];
  const double n = static_cast<double>(docs_.size());
  // avgdl is 0 only when every document is empty, in which case tf is 0 too.
  const double norm = avgdl_ > 0.0 ? static_cast<double>(lengths_[index]) / avgdl_ : 0.0;
  double total = 0.0;
  for (const auto& id : ids) {
    if (!id) continue;
    const auto it = std::lower_bound(row.begin(), row.end(), *id,
                                     [](const TermCount& c, TermId t) { return c.term < t; });
    if (it == row.end() || it->term != *id) continue;
    const double tf = it->count;
    const double df = static_cast<double>(df_[*id]);
    const double idf = std::log((n - df + 0.5) / (df + 0.5) + 1.0);
    total += idf * tf * (params_.k1 + 1.0) / (tf + params_.k1 * (1.0 - params_.b + params_.b * norm));
  }
  return total;
}

double Bm25Index::score_at(std::span<const std::string> query_terms, std::size_t index) const {
  if (index >= docs_.size()) throw Error(ErrorKind::UnknownDoc, "doc index out of range");
  std::vector<std::optional<TermId>> ids;
  ids.reserve(query_terms.size());
  for (const auto& t : query_terms) ids.push_back(term_id(t));
  return score_ids(ids, index);
}

double Bm25Index::score(std::span<const std::string> query_terms, std::string_view doc_id) const {
  for (std::size_t i = 0; i < docs_.size(); ++i) {
    if (docs_[i].doc_id == doc_id) return score_at(query_terms, i);
  }
  throw Error(ErrorKind::UnknownDoc, "unknown doc id '" + std::string(doc_id) + "'");
}

std::vector<Passage> Bm25Index::retrieve_topk(std::string_view query, std::size_t k) const {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
  const auto terms = tokenize(query);
  std::vector<std::optional<TermId>> ids;
  ids.reserve(terms.size());
  for (const auto& t : terms) ids.push_back(term_id(t));

  std::vector<double> scores(docs_.size());
  for (std::size_t i = 0; i < docs_.size(); ++i) scores[i] = score_ids(ids, i);
  std::vector<std::size_t> order(docs_.size());
  std::iota(order.begin(), order.end(), 0);
  const auto better = [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return docs_[a].doc_id < docs_[b].doc_id;
  };
  const std::size_t take = std::min(k, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(), better);

  std::vector<Passage> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    const auto& d = docs_[order[i]];
    out.push_back({d.doc_id, d.text, scores[order[i]]});
  }
  return out;
}

std::string enrich_query(std::string_view dialogue_text, const std::optional<std::string>& status) {
  if (text::trim(dialogue_text).empty()) throw Error(ErrorKind::EmptyQuery, "empty dialogue context");
  std::string out(dialogue_text);
  if (status) {
    out.push_back('\n');
    out += *status;
  }
  return out;
}

RetrieverFactory bm25_factory(Bm25Params params) {
  return [params](const Corpus& corpus) -> std::unique_ptr<Retriever> {
    return std::make_unique<Bm25Retriever>(corpus, params);
  };
}

std::vector<std::vector<Passage>> retrieve_batch_serial(const Bm25Index& index,
                                                        std::span<const std::string> queries,
                                                        std::size_t k) {
  std::vector<std::vector<Passage>> out;
  out.reserve(queries.size());
  for (const auto& q : queries) out.push_back(index.retrieve_topk(q, k));
  return out;
}

std::vector<std::vector<Passage>> retrieve_batch(const Bm25Index& index,
                                                 std::span<const std::string> queries,
                                                 std::size_t k) {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
  std::vector<std::vector<Passage>> out(queries.size());
  const auto n = static_cast<std::ptrdiff_t>(queries.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = index.retrieve_topk(queries[static_cast<std::size_t>(i)], k);
  }
  return out;
}

}  // namespace conductor::retrieval
