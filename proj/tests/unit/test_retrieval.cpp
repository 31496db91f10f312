// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "conductor/core/errors.hpp"
#include "conductor/retrieval/bm25.hpp"
#include "conductor/retrieval/tokenize.hpp"
#include "oracles.hpp"

namespace conductor::retrieval {
namespace {

using Terms = std::vector<std::string>;

TEST(Tokenize, Examples) {
  EXPECT_EQ(tokenize("The Arctic Cordillera!"), (Terms{"the", "arctic", "cordillera"}));
  EXPECT_EQ(tokenize("e dentro la"), (Terms{"e", "dentro", "la"}));
  EXPECT_EQ(tokenize("我很难过today"), (Terms{"我", "很", "难", "过", "today"}));
  EXPECT_EQ(tokenize("  ,,  "), Terms{});
  EXPECT_EQ(tokenize("don't stop。好"), (Terms{"don", "t", "stop", "好"}));
}

TEST(Tokenize, PunctuationCount) {
  EXPECT_EQ(count_punctuation("Hello, world!"), 2u);
  EXPECT_EQ(count_punctuation("你好，世界。"), 2u);
}

TEST(Bm25Index, HandCountedStatistics) {
  const auto idx = Bm25Index::build(Corpus::from_texts("S", {"a", "b", "a"}));
  EXPECT_EQ(idx.doc_freq("a"), 2u);
  EXPECT_EQ(idx.doc_freq("b"), 1u);
  EXPECT_DOUBLE_EQ(idx.avgdl(), 1.0);
  EXPECT_DOUBLE_EQ(Bm25Index::build(Corpus::from_texts("S", {"one two three"})).avgdl(), 3.0);
}

TEST(Bm25Index, EmptyCorpusAndBadParams) {
  try {
    (void)Corpus::from_texts("S", {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyCorpus);
  }
  const auto c = Corpus::from_texts("S", {"x"});
  EXPECT_THROW(Bm25Index::build(c, {-1.0, 0.75}), Error);
  EXPECT_THROW(Bm25Index::build(c, {1.5, 1.5}), Error);
  EXPECT_THROW(Corpus("S", {{"a", "x"}, {"a", "y"}}), Error);
}

TEST(Bm25Index, WorkedTwoDocExample) {
  const auto idx = Bm25Index::build(Corpus::from_texts("S", {"cat sat", "dog ran"}));
  const Terms q{"cat"};
  const double expected = std::log((2 - 1 + 0.5) / (1 + 0.5) + 1) * (1 * 2.5) / (1 + 1.5 * 1);
  EXPECT_NEAR(idx.score(q, "S-0"), std::log(2.0), 1e-12);
  EXPECT_NEAR(idx.score(q, "S-0"), expected, 1e-12);
  EXPECT_EQ(idx.score(q, "S-1"), 0.0);
  const auto top = idx.retrieve_topk("cat", 1);
  ASSERT_EQ(top.size(), 1u);
  EXPECT_EQ(top[0].doc_id, "S-0");
  EXPECT_NEAR(top[0].score, 0.6931471805599453, 1e-12);
  EXPECT_THROW((void)idx.score(q, "S-9"), Error);
}

TEST(Bm25Index, AbsentTermAndDuplicates) {
  const auto idx = Bm25Index::build(Corpus::from_texts("S", {"the cat", "the cat", "a dog"}));
  EXPECT_EQ(idx.score(Terms{"zebra"}, "S-0"), 0.0);
  EXPECT_EQ(idx.score(Terms{"cat"}, "S-0"), idx.score(Terms{"cat"}, "S-1"));
}

TEST(Bm25Index, TopKBoundsAndTieBreak) {
  const auto idx = Bm25Index::build(Corpus::from_texts("S", {"x", "y", "z"}));
  const auto all = idx.retrieve_topk("nothing matches", 10);
  ASSERT_EQ(all.size(), 3u);
  EXPECT_EQ(all[0].doc_id, "S-0");
  EXPECT_EQ(all[1].doc_id, "S-1");
  EXPECT_EQ(all[2].doc_id, "S-2");
  EXPECT_THROW((void)idx.retrieve_topk("x", 0), Error);
}

TEST(Bm25Index, MatchesBruteForceOracle) {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> ndocs(1, 50);
  std::uniform_int_distribution<int> kdist(1, 8);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = ndocs(rng);
    std::vector<std::string> texts;
    std::vector<std::vector<std::string>> docs;
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) {
      docs.push_back(oracle::random_seq(rng, 0, 12, 10));
      texts.push_back(oracle::join(docs.back()));
      ids.push_back("S-" + std::to_string(i));
    }
    const auto idx = Bm25Index::build(Corpus::from_texts("S", texts));
    const auto query = oracle::random_seq(rng, 1, 5, 12);
    const std::size_t k = static_cast<std::size_t>(kdist(rng));
    const auto got = idx.retrieve_topk(oracle::join(query), k);
    const auto want = oracle::bm25_rank(ids, docs, query);
    ASSERT_EQ(got.size(), std::min<std::size_t>(k, docs.size()));
    for (std::size_t i = 0; i < got.size(); ++i) {
      ASSERT_EQ(got[i].doc_id, want[i].doc_id) << "trial " << trial << " rank " << i;
      ASSERT_NEAR(got[i].score, want[i].score, 1e-12);
      ASSERT_GE(got[i].score, 0.0);
      if (i > 0) ASSERT_LE(got[i].score, got[i - 1].score);
    }
  }
}

TEST(Bm25Index, DuplicateDocKeepsSingleTermOrderWhenBIsZero) {
  // With b = 0 and a single query term a document's score is idf times a
  // function of tf alone, so adding any document cannot reorder the others.
  std::mt19937 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::string> texts;
    for (int i = 0; i < 8; ++i) texts.push_back(oracle::join(oracle::random_seq(rng, 1, 6, 5)));
    const std::string term = "w" + std::to_string(trial % 5);
    const auto before = Bm25Index::build(Corpus::from_texts("S", texts), {1.5, 0.0});
    auto grown = texts;
    grown.push_back(texts[static_cast<std::size_t>(trial) % texts.size()]);
    const auto after = Bm25Index::build(Corpus::from_texts("S", grown), {1.5, 0.0});
    const Terms q{term};
    for (std::size_t a = 0; a < texts.size(); ++a) {
      for (std::size_t b = 0; b < texts.size(); ++b) {
        if (before.score_at(q, a) > before.score_at(q, b)) EXPECT_GT(after.score_at(q, a), after.score_at(q, b));
      }
    }
  }
}

TEST(EnrichQuery, Forms) {
  EXPECT_EQ(enrich_query("C", std::nullopt), "C");
  EXPECT_EQ(enrich_query("C", std::string("S")), "C\nS");
  try {
    (void)enrich_query("  ", std::string("S"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyQuery);
  }
}

TEST(EnrichQuery, GoldPersonaRanksFirstWhenStatusQuotesIt) {
  const std::vector<std::string> personas = {"I like living in a city.", "I don't hope to ever visit New Zealand.",
                                             "My dog is named Max.", "Hiking is my favorite hobby.",
                                             "My job is nursing."};
  const auto idx = Bm25Index::build(Corpus::from_texts("PERSONA", personas));
  for (std::size_t gold = 0; gold < personas.size(); ++gold) {
    const auto q = enrich_query("USER: Where should I go next?", personas[gold]);
    EXPECT_EQ(idx.retrieve_topk(q, 1)[0].text, personas[gold]);
  }
}

TEST(RetrieveBatch, ParallelMatchesSerial) {
  std::mt19937 rng(9);
  std::vector<std::string> texts;
  for (int i = 0; i < 40; ++i) texts.push_back(oracle::join(oracle::random_seq(rng, 1, 20, 30)));
  const auto idx = Bm25Index::build(Corpus::from_texts("D", texts));
  std::vector<std::string> queries;
  for (int i = 0; i < 500; ++i) queries.push_back(oracle::join(oracle::random_seq(rng, 1, 6, 30)));
  EXPECT_EQ(retrieve_batch(idx, queries, 3), retrieve_batch_serial(idx, queries, 3));
}

TEST(Bm25Retriever, FactoryBuildsWorkingRetriever) {
  const auto factory = bm25_factory();
  const auto r = factory(Corpus::from_texts("DOCUMENT", {"Newton is a suburb of Auckland", "Paris is in France"}));
  EXPECT_EQ(r->source_name(), "DOCUMENT");
  EXPECT_EQ(r->retrieve("Auckland suburb", 1)[0].doc_id, "DOCUMENT-0");
}

}  // namespace
}  // namespace conductor::retrieval
