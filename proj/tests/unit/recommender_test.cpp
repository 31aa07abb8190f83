#include <algorithm>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "polyrep/recommender.hpp"

using namespace polyrep;

namespace {

Document doc(std::string id, std::string title, std::vector<std::string> authors,
             std::string abstract = {}) {
  Document d;
  d.doc_id = std::move(id);
  d.title = std::move(title);
  d.abstract = std::move(abstract);
  d.authors = std::move(authors);
  return d;
}

std::vector<std::string> random_terms(std::mt19937_64& rng, std::size_t vocab) {
  std::vector<std::string> terms;
  for (std::size_t i = 0, n = 1 + rng() % 3; i < n; ++i) terms.push_back(oracle::vocab_word(rng() % (vocab + 2)));
  return terms;
}

}  // namespace

TEST(Jaccard, Examples) {
  EXPECT_DOUBLE_EQ(jaccard({1, 2}, {1, 2}), 1.0);
  EXPECT_DOUBLE_EQ(jaccard({1}, {2}), 0.0);
  EXPECT_DOUBLE_EQ(jaccard({1, 2, 3}, {2, 3, 4, 5}), 0.4);
  EXPECT_DOUBLE_EQ(jaccard({}, {}), 0.0);
}

TEST(EntityPostings, Build) {
  const std::vector<Document> corpus{doc("d1", "health", {"Hauser, Richard"}),
                                     doc("d2", "health", {}, "health care"),
                                     doc("d3", "", {"hauser, richard"})};
  const auto p = build_entity_postings(corpus, "AU");
  ASSERT_EQ(p.entities().size(), 1u);
  const auto& e = p.entities().at("hauser, richard");
  EXPECT_EQ(e.docs, (DocSet{0, 2}));
  EXPECT_EQ(e.display, "Hauser, Richard");
  EXPECT_EQ(p.term_docs("health"), (DocSet{0, 1}));
  EXPECT_TRUE(p.term_docs("absent").empty());
  EXPECT_EQ(p.doc_count(), 3u);
}

TEST(EntityPostings, EmptyCorpusAndUnknownField) {
  const std::vector<Document> none;
  const auto p = build_entity_postings(none, "CT");
  EXPECT_TRUE(p.entities().empty());
  EXPECT_TRUE(p.term_postings().empty());
  EXPECT_THROW(build_entity_postings(none, "journal"), std::invalid_argument);
  EXPECT_THROW(build_entity_postings(none, "TI"), std::invalid_argument);
}

TEST(EntityPostings, ExtraFields) {
  auto d = doc("d1", "x", {});
  d.extra_entities["journal"] = {"Sozialer Fortschritt"};
  const std::vector<Document> corpus{d, doc("d2", "y", {})};
  EXPECT_EQ(extra_entity_fields(corpus), std::vector<std::string>{"journal"});
  EXPECT_EQ(build_entity_postings(corpus, "journal").entities().size(), 1u);
}

TEST(Suggest, SingleTermIsPlainJaccard) {
  // term docs {d1, d2, d4}, author docs {d1, d2, d3}
  const std::vector<Document> corpus{doc("d1", "retirement", {"Hauser, Richard"}),
                                     doc("d2", "retirement", {"Hauser, Richard"}),
                                     doc("d3", "other", {"Hauser, Richard"}),
                                     doc("d4", "retirement", {})};
  const auto p = build_entity_postings(corpus, "AU");
  const std::vector<std::string> q{"retirement"};
  const auto s = suggest(p, q);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].entity, "Hauser, Richard");
  EXPECT_EQ(s[0].field, "AU");
  EXPECT_DOUBLE_EQ(s[0].score, 0.5);
}

TEST(Suggest, AbsentTermAddsZeroToMean) {
  const std::vector<Document> corpus{doc("d1", "retirement", {"A, B"})};
  const auto p = build_entity_postings(corpus, "AU");
  const std::vector<std::string> q{"retirement", "nowhere"};
  const auto s = suggest(p, q);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_DOUBLE_EQ(s[0].score, 0.5);
}

TEST(Suggest, ZeroScoresDroppedAndMinScoreExclusive) {
  const std::vector<Document> corpus{doc("d1", "health", {"A, One"}), doc("d2", "health care", {"B, Two"}),
                                     doc("d3", "care", {"C, Three"})};
  const auto p = build_entity_postings(corpus, "AU");
  const std::vector<std::string> q{"health"};
  const auto all = suggest(p, q, {.n = 10});
  ASSERT_EQ(all.size(), 2u);
  EXPECT_DOUBLE_EQ(all[0].score, 0.5);
  const auto strict = suggest(p, q, {.n = 10, .min_score = 0.5});
  EXPECT_TRUE(strict.empty());
}

TEST(Suggest, TiesByCasefoldedEntity) {
  const std::vector<Document> corpus{doc("d1", "x", {"beta, B", "Alpha, A", "alpha2, C"})};
  const auto p = build_entity_postings(corpus, "AU");
  const std::vector<std::string> q{"x"};
  const auto s = suggest(p, q, {.n = 10});
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0].entity, "Alpha, A");
  EXPECT_EQ(s[1].entity, "alpha2, C");
  EXPECT_EQ(s[2].entity, "beta, B");
}

TEST(Suggest, Errors) {
  const std::vector<Document> corpus{doc("d1", "x", {"A, B"})};
  const auto p = build_entity_postings(corpus, "AU");
  EXPECT_THROW(suggest(p, std::vector<std::string>{}), std::invalid_argument);
  const std::vector<std::string> q{"x"};
  EXPECT_THROW(suggest(p, q, {.n = 0}), std::invalid_argument);
  EXPECT_THROW(suggest(p, q, {.n = 4, .min_score = 1.0}), std::invalid_argument);
  EXPECT_THROW(suggest(p, q, {.n = 4, .min_score = -0.1}), std::invalid_argument);
}

TEST(Suggest, TermUnionVariant) {
  // union of term docs {d1, d2}; entity docs {d1}: 1/2
  const std::vector<Document> corpus{doc("d1", "a", {"E, E"}), doc("d2", "b", {})};
  const auto p = build_entity_postings(corpus, "AU");
  const std::vector<std::string> q{"a", "b"};
  EXPECT_DOUBLE_EQ(suggest(p, q, {.n = 4, .combine = Combine::kTermUnion})[0].score, 0.5);
  EXPECT_DOUBLE_EQ(suggest(p, q, {.n = 4, .combine = Combine::kMeanOfTerms})[0].score, 0.5);
}

TEST(Suggest, MatchesBruteForceOracle) {
  std::mt19937_64 rng(17);
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const auto corpus = oracle::random_corpus(seed, {.docs = 5 + seed % 26});
    for (const char* field : {"AU", "CT"}) {
      const auto p = build_entity_postings(corpus, field);
      const auto terms = random_terms(rng, 12);
      const std::size_t n = 1 + rng() % 6;
      const auto got = suggest(p, terms, {.n = n});
      const auto want = oracle::brute_suggest(corpus, field, terms, n);
      ASSERT_EQ(got.size(), want.size()) << "seed " << seed << " " << field;
      for (std::size_t i = 0; i < got.size(); ++i) {
        EXPECT_EQ(got[i].entity, want[i].entity) << "seed " << seed << " " << field << " #" << i;
        EXPECT_NEAR(got[i].score, want[i].score, 1e-12);
      }
    }
  }
}

TEST(Suggest, ScoresInUnitIntervalAndPrefixConsistent) {
  std::mt19937_64 rng(23);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto corpus = oracle::random_corpus(seed, {.docs = 30});
    const auto p = build_entity_postings(corpus, "AU");
    const auto terms = random_terms(rng, 12);
    const auto all = suggest(p, terms, {.n = p.entities().size()});
    for (const auto& s : all) {
      EXPECT_GT(s.score, 0.0);
      EXPECT_LE(s.score, 1.0);
    }
    for (std::size_t n = 1; n <= all.size(); ++n) {
      const auto top = suggest(p, terms, {.n = n});
      EXPECT_EQ(top, std::vector<Suggestion>(all.begin(), all.begin() + n));
    }
  }
}

TEST(Suggest, PermutationInvariant) {
  const auto corpus = oracle::random_corpus(4, {.docs = 30});
  const auto p = build_entity_postings(corpus, "CT");
  std::vector<std::string> terms{"pension", "health", "care", "retirement"};
  const auto base = suggest(p, terms, {.n = 20});
  std::sort(terms.begin(), terms.end());
  do {
    EXPECT_EQ(suggest(p, terms, {.n = 20}), base);
  } while (std::next_permutation(terms.begin(), terms.end()));
}

TEST(Suggest, DuplicatedEntityValueChangesNothing) {
  auto corpus = oracle::random_corpus(8, {.docs = 25});
  const std::vector<std::string> terms{"health", "pension"};
  const auto before = suggest(build_entity_postings(corpus, "AU"), terms, {.n = 20});
  for (auto& d : corpus) {
    if (!d.authors.empty()) d.authors.push_back(d.authors.front());
  }
  EXPECT_EQ(suggest(build_entity_postings(corpus, "AU"), terms, {.n = 20}), before);
}

TEST(KindLabels, RoundTrip) {
  EXPECT_EQ(kind_label("AU"), "author");
  EXPECT_EQ(kind_label("CT"), "controlled_term");
  EXPECT_EQ(kind_label("journal"), "journal");
  EXPECT_EQ(field_for_kind("author"), "AU");
  EXPECT_EQ(field_for_kind("controlled_term"), "CT");
  EXPECT_EQ(field_for_kind("journal"), "journal");
}
