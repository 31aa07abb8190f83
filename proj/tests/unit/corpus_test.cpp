#include <functional>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "polyrep/corpus.hpp"

using namespace polyrep;

namespace {

std::size_t error_line(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e.line();
  }
  ADD_FAILURE() << "no ParseError thrown";
  return 0;
}

}  // namespace

TEST(LoadCorpus, TwoLines) {
  std::istringstream in(
      R"({"doc_id":"d1","title":"A","abstract":"","controlled_terms":[],"authors":["Hauser, Richard"]})"
      "\n\n"
      R"({"doc_id":"d2","title":"B","abstract":"x","controlled_terms":["health"],"authors":[]})"
      "\n");
  const auto docs = load_corpus(in);
  ASSERT_EQ(docs.size(), 2u);
  EXPECT_EQ(docs[0].authors, std::vector<std::string>{"Hauser, Richard"});
  EXPECT_EQ(docs[1].controlled_terms, std::vector<std::string>{"health"});
}

TEST(LoadCorpus, MissingDocIdReportsLine) {
  std::istringstream in(R"({"doc_id":"d1","title":"A"})"
                        "\n"
                        R"({"title":"no id"})"
                        "\n");
  EXPECT_EQ(error_line([&] { load_corpus(in); }), 2u);
}

TEST(LoadCorpus, MalformedJsonReportsLine) {
  std::istringstream in("{\"doc_id\":\"d1\"}\n{not json\n");
  EXPECT_EQ(error_line([&] { load_corpus(in); }), 2u);
}

TEST(LoadCorpus, DuplicateIdNamesId) {
  std::istringstream in("{\"doc_id\":\"d1\"}\n{\"doc_id\":\"d1\"}\n");
  try {
    load_corpus(in);
    FAIL() << "expected duplicate-id error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("d1"), std::string::npos);
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(LoadCorpus, CanonicalizesEntityLists) {
  std::istringstream in(
      R"({"doc_id":"d1","authors":["Hauser, Richard","hauser, richard"," ","Bäcker, Gerhard"],"controlled_terms":["Health","health"]})"
      "\n");
  const auto docs = load_corpus(in);
  EXPECT_EQ(docs[0].authors, (std::vector<std::string>{"Hauser, Richard", "Bäcker, Gerhard"}));
  EXPECT_EQ(docs[0].controlled_terms, std::vector<std::string>{"Health"});
}

TEST(LoadCorpus, RejectsWrongTypes) {
  std::istringstream in(R"({"doc_id":"d1","authors":"Hauser, Richard"})"
                        "\n");
  EXPECT_EQ(error_line([&] { load_corpus(in); }), 1u);
}

TEST(LoadCorpus, RoundTrip) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto docs = oracle::random_corpus(seed);
    docs[0].extra_entities["journal"] = {"Sozialer Fortschritt", "Zeitschrift für Soziologie"};
    docs[0].title = "Quote \" and backslash \\ and tab\t and ünïcödé";
    std::ostringstream out;
    write_corpus(out, docs);
    std::istringstream in(out.str());
    EXPECT_EQ(load_corpus(in), docs) << "seed " << seed;
  }
}

TEST(LoadTopics, TokenizesAndFilters) {
  std::istringstream in("101\tRetirement and health issues\n");
  const auto topics = load_topics(in, Stoplist({"and", "issues"}));
  ASSERT_EQ(topics.size(), 1u);
  EXPECT_EQ(topics[0].topic_id, "101");
  EXPECT_EQ(topics[0].terms, (std::vector<std::string>{"retirement", "health"}));
  EXPECT_EQ(topics[0].title, "Retirement and health issues");
}

TEST(LoadTopics, EmptyStream) {
  std::istringstream in("");
  EXPECT_TRUE(load_topics(in, Stoplist()).empty());
}

TEST(LoadTopics, AllStopwordsNamesTopic) {
  std::istringstream in("101\thealth\n102\tthe and of\n");
  try {
    load_topics(in, Stoplist({"the", "and", "of"}));
    FAIL() << "expected error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("102"), std::string::npos);
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(LoadTopics, MissingTab) {
  std::istringstream in("101 no tab here\n");
  EXPECT_EQ(error_line([&] { load_topics(in, Stoplist()); }), 1u);
}

TEST(LoadQrels, ParsesGrades) {
  std::istringstream in("101 0 d7 1\n101 0 d8 0\n");
  const auto q = load_qrels(in);
  EXPECT_EQ(q.grade("101", "d7"), 1);
  EXPECT_TRUE(q.is_relevant("101", "d7"));
  EXPECT_FALSE(q.is_relevant("101", "d8"));
  EXPECT_EQ(q.size(), 2u);
  EXPECT_EQ(q.relevant_count("101"), 1u);
  EXPECT_FALSE(q.is_relevant("101", "unjudged"));
  EXPECT_FALSE(q.is_relevant("999", "d7"));
  EXPECT_EQ(q.grade("999", "d7"), 0);
}

TEST(LoadQrels, DuplicateJudgment) {
  std::istringstream in("101 0 d7 1\n101 0 d7 1\n");
  EXPECT_EQ(error_line([&] { load_qrels(in); }), 2u);
}

TEST(LoadQrels, NonIntegerAndShortLines) {
  std::istringstream bad_grade("101 0 d7 yes\n");
  EXPECT_EQ(error_line([&] { load_qrels(bad_grade); }), 1u);
  std::istringstream short_line("101 0 d7 1\n101 0 d8\n");
  EXPECT_EQ(error_line([&] { load_qrels(short_line); }), 2u);
  std::istringstream negative("101 0 d7 -1\n");
  EXPECT_EQ(error_line([&] { load_qrels(negative); }), 1u);
}

TEST(LoadQrels, RoundTrip) {
  std::istringstream in("102 0 b 2\n101 0 d7 1\n101 0 d1 0\n");
  const auto q = load_qrels(in);
  std::ostringstream out;
  write_qrels(out, q);
  std::istringstream again(out.str());
  EXPECT_EQ(load_qrels(again).judgments(), q.judgments());
}

TEST(LoadFiles, MissingPathIsNamed) {
  try {
    load_qrels_file("/nonexistent/qrels.txt");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/qrels.txt"), std::string::npos);
  }
}

TEST(LoadFiles, ShippedFixtures) {
  const std::string dir = POLYREP_TEST_DATA_DIR;
  EXPECT_EQ(load_corpus_file(dir + "/tiny_corpus.jsonl").size(), 6u);
  const auto topics = load_topics_file(dir + "/tiny_topics.tsv", Stoplist::default_english());
  ASSERT_EQ(topics.size(), 2u);
  EXPECT_EQ(load_qrels_file(dir + "/tiny_qrels.txt").relevant_count("101"), 3u);
}
