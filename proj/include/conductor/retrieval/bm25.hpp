// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "conductor/core/types.hpp"

namespace conductor::retrieval {

struct Document {
  std::string doc_id;
  std::string text;
  friend bool operator==(const Document&, const Document&) = default;
};

/// One knowledge source's candidate pool.
class Corpus {
 public:
  /// Throws EmptyCorpus when `docs` is empty and InvalidArgument on duplicate
  /// ids.
  Corpus(std::string source_name, std::vector<Document> docs);

  /// Ids are "<source>-<index>" in candidate order.
  static Corpus from_texts(std::string source_name, const std::vector<std::string>& texts);

  const std::string& source_name() const { return source_name_; }
  const std::vector<Document>& docs() const { return docs_; }
  std::size_t size() const { return docs_.size(); }

 private:
  std::string source_name_;
  std::vector<Document> docs_;
};

struct Bm25Params {
  double k1 = 1.5;
  double b = 0.75;
};

/// Okapi BM25 with idf = ln((N - df + 0.5) / (df + 0.5) + 1), which keeps
/// every score non-negative.
class Bm25Index {
 public:
  /// Throws EmptyCorpus, or InvalidArgument when k1 < 0 or b outside [0, 1].
  static Bm25Index build(const Corpus& corpus, Bm25Params params = {});

  const std::string& source_name() const { return source_name_; }
  const Bm25Params& params() const { return params_; }
  std::size_t doc_count() const { return docs_.size(); }
  double avgdl() const { return avgdl_; }
  std::size_t doc_freq(std::string_view term) const;
  std::size_t doc_length(std::size_t index) const { return lengths_[index]; }
  const Document& doc(std::size_t index) const { return docs_[index]; }
  double idf(std::string_view term) const;

  /// Throws UnknownDoc.
  double score(std::span<const std::string> query_terms, std::string_view doc_id) const;
  double score_at(std::span<const std::string> query_terms, std::size_t index) const;

  /// Scores descending, ties by ascending doc id. Throws InvalidArgument when
  /// k == 0.
  std::vector<Passage> retrieve_topk(std::string_view query, std::size_t k) const;

 private:
  using TermId = std::uint32_t;
  struct TermCount {
    TermId term;
    std::uint32_t count;
  };

  std::optional<TermId> term_id(std::string_view term) const;
  double score_ids(std::span<const std::optional<TermId>> ids, std::size_t index) const;

  std::string source_name_;
  Bm25Params params_;
  std::vector<Document> docs_;
  std::vector<std::size_t> lengths_;
  double avgdl_ = 0.0;
  std::unordered_map<std::string, TermId> vocab_;
  std::vector<std::size_t> df_;
  /// Per document, sorted by term id.
  std::vector<std::vector<TermCount>> counts_;
};

/// Dialogue text, then a newline and the status when one is given. Throws
/// EmptyQuery on an empty or blank dialogue.
std::string enrich_query(std::string_view dialogue_text, const std::optional<std::string>& status);

/// Ranked lookup over one source. BM25 is the shipped implementation; dense
/// retrievers plug in here.
class Retriever {
 public:
  virtual ~Retriever() = default;
  virtual const std::string& source_name() const = 0;
  virtual std::vector<Passage> retrieve(std::string_view query, std::size_t k) const = 0;
};

class Bm25Retriever final : public Retriever {
 public:
  explicit Bm25Retriever(const Corpus& corpus, Bm25Params params = {})
      : index_(Bm25Index::build(corpus, params)) {}

  const std::string& source_name() const override { return index_.source_name(); }
  std::vector<Passage> retrieve(std::string_view query, std::size_t k) const override {
    return index_.retrieve_topk(query, k);
  }
  const Bm25Index& index() const { return index_; }

 private:
  Bm25Index index_;
};

using RetrieverFactory = std::function<std::unique_ptr<Retriever>(const Corpus&)>;

RetrieverFactory bm25_factory(Bm25Params params = {});

/// Top-k for many queries against one index. The parallel kernel uses OpenMP
/// and must agree exactly with the serial reference.
std::vector<std::vector<Passage>> retrieve_batch_serial(const Bm25Index& index,
                                                        std::span<const std::string> queries,
                                                        std::size_t k);
std::vector<std::vector<Passage>> retrieve_batch(const Bm25Index& index,
                                                 std::span<const std::string> queries,
                                                 std::size_t k);

}  // namespace conductor::retrieval
