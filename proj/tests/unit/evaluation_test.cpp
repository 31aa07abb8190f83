#include <algorithm>
#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "polyrep/evaluation.hpp"
#include "polyrep/student_t.hpp"

using namespace polyrep;

namespace {

Ranking ranking(std::vector<std::string> ids, std::string topic = "1") {
  Ranking r;
  r.topic_id = std::move(topic);
  double score = static_cast<double>(ids.size());
  for (auto& id : ids) r.entries.push_back({std::move(id), score--});
  r.k = 1000;
  return r;
}

Qrels qrels(std::initializer_list<std::tuple<const char*, const char*, int>> rows) {
  Qrels q;
  for (const auto& [t, d, g] : rows) q.add(t, d, g);
  return q;
}

}  // namespace

TEST(AveragePrecision, Examples) {
  const auto q = qrels({{"1", "r1", 1}, {"1", "r2", 1}, {"1", "n1", 0}});
  EXPECT_NEAR(*average_precision(ranking({"r1", "n1", "r2"}), q, "1"), 0.833333, 1e-6);
  EXPECT_DOUBLE_EQ(*average_precision(ranking({"n1", "x"}), q, "1"), 0.0);
  EXPECT_DOUBLE_EQ(*average_precision(ranking({"r1", "r2"}), q, "1"), 1.0);
  EXPECT_FALSE(average_precision(ranking({"r1"}), qrels({{"1", "r1", 0}}), "1").has_value());
}

TEST(AveragePrecision, UnjudgedCountsAsNonRelevantAndGradesBinarize) {
  const auto q = qrels({{"1", "r1", 3}, {"1", "r2", 1}});
  EXPECT_NEAR(*average_precision(ranking({"unjudged", "r1", "r2"}), q, "1"), (0.5 + 2.0 / 3.0) / 2, 1e-12);
}

TEST(AveragePrecision, InvariantToNonRelevantOrderBelowLastRelevant) {
  const auto q = qrels({{"1", "a", 1}, {"1", "b", 1}});
  const auto x = *average_precision(ranking({"a", "n1", "b", "n2", "n3", "n4"}), q, "1");
  const auto y = *average_precision(ranking({"a", "n1", "b", "n4", "n2", "n3"}), q, "1");
  EXPECT_DOUBLE_EQ(x, y);
}

TEST(PrecisionAtK, Examples) {
  const auto q = qrels({{"1", "a", 1}, {"1", "b", 1}, {"1", "c", 1}, {"1", "d", 1}});
  EXPECT_DOUBLE_EQ(precision_at_k(ranking({"a", "x1", "b", "x2", "c", "x3", "d", "x4", "x5", "x6"}), q, "1", 10),
                   0.4);
  EXPECT_DOUBLE_EQ(precision_at_k(ranking({"a", "b", "c"}), q, "1", 10), 0.3);
  EXPECT_DOUBLE_EQ(precision_at_k(ranking({}), q, "1", 10), 0.0);
  EXPECT_THROW(precision_at_k(ranking({}), q, "1", 0), std::invalid_argument);
}

TEST(RPrecision, Examples) {
  const auto q = qrels({{"1", "a", 1}, {"1", "b", 1}, {"1", "c", 1}});
  EXPECT_NEAR(*r_precision(ranking({"a", "x", "b", "c"}), q, "1"), 2.0 / 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(*r_precision(ranking({"c", "b", "a"}), q, "1"), 1.0);
  EXPECT_DOUBLE_EQ(*r_precision(ranking({"x", "y", "z", "a"}), q, "1"), 0.0);
  EXPECT_FALSE(r_precision(ranking({}), qrels({{"1", "n", 0}}), "1").has_value());
}

TEST(EvaluateRun, MeansAndExclusion) {
  const auto q = qrels({{"1", "a", 1}, {"1", "b", 1}, {"2", "c", 1}, {"3", "n", 0}});
  RunResult run;
  run.run_tag = "r";
  run.rankings["1"] = ranking({"a", "x", "b"}, "1");   // AP 0.833333
  run.rankings["2"] = ranking({"x", "y", "c"}, "2");   // AP 1/3
  run.rankings["3"] = ranking({"n"}, "3");             // R = 0
  const auto report = evaluate_run(run, q);
  EXPECT_EQ(report.evaluated_topics(), 2u);
  EXPECT_EQ(report.excluded_topics, std::vector<std::string>{"3"});
  const double map = (5.0 / 6.0 + 1.0 / 3.0) / 2.0;
  EXPECT_NEAR(at(report.aggregate, Metric::kMap), map, 1e-12);
  double sum = 0.0;
  for (const auto& [t, m] : report.per_topic) {
    sum += at(m.values, Metric::kMap);
    for (const double v : m.values) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
  EXPECT_NEAR(at(report.aggregate, Metric::kMap), sum / 2.0, 1e-12);
  EXPECT_EQ(report.per_topic.at("1").relevant_retrieved, 2u);
}

TEST(EvaluateRun, SingleTopicMapEqualsAp) {
  RunResult run;
  run.rankings["1"] = ranking({"a", "x", "b"});
  const auto report = evaluate_run(run, qrels({{"1", "a", 1}, {"1", "b", 1}}));
  EXPECT_NEAR(at(report.aggregate, Metric::kMap), 0.833333, 1e-6);
}

TEST(EvaluateRun, OnlyTopicsInTheRunAreEvaluated) {
  RunResult run;
  run.rankings["1"] = ranking({"a"});
  const auto report = evaluate_run(run, qrels({{"1", "a", 1}, {"2", "b", 1}}));
  EXPECT_EQ(report.evaluated_topics(), 1u);
  EXPECT_DOUBLE_EQ(at(report.aggregate, Metric::kMap), 1.0);
}

TEST(EvaluateRun, UnknownTopicNamed) {
  RunResult run;
  run.run_tag = "r";
  run.rankings["77"] = ranking({"a"}, "77");
  try {
    evaluate_run(run, qrels({{"1", "a", 1}}));
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("77"), std::string::npos);
  }
}

TEST(EvaluateRun, AppendingBelowCutoffsChangesNothing) {
  const auto q = qrels({{"1", "a", 1}, {"1", "b", 1}});
  std::vector<std::string> ids{"a", "x", "b"};
  for (int i = 0; i < 100; ++i) ids.push_back("pad" + std::to_string(i));
  RunResult base;
  base.rankings["1"] = ranking(ids);
  ids.push_back("extra1");
  ids.push_back("extra2");
  RunResult more;
  more.rankings["1"] = ranking(ids);
  EXPECT_EQ(evaluate_run(base, q).aggregate, evaluate_run(more, q).aggregate);
}

TEST(TTest, HandDerivedFixture) {
  const std::vector<double> a{0.1, 0.2, 0.3, 0.4};
  const std::vector<double> b{0.15, 0.1, 0.35, 0.3};
  const auto r = paired_t_test(a, b);
  EXPECT_NEAR(r.t_statistic, 0.57735, 1e-5);
  EXPECT_EQ(r.degrees_of_freedom, 3u);
  EXPECT_NEAR(r.p_value, 0.6041813035905915, 1e-9);  // scipy.stats.ttest_rel
  EXPECT_FALSE(r.significant);
  EXPECT_DOUBLE_EQ(r.alpha, 0.05);
}

TEST(TTest, SymmetryAndIdentity) {
  const std::vector<double> a{0.3, 0.5, 0.1, 0.9, 0.4};
  const std::vector<double> b{0.2, 0.6, 0.05, 0.7, 0.1};
  const auto ab = paired_t_test(a, b);
  const auto ba = paired_t_test(b, a);
  EXPECT_DOUBLE_EQ(ab.t_statistic, -ba.t_statistic);
  EXPECT_DOUBLE_EQ(ab.p_value, ba.p_value);
  const auto same = paired_t_test(a, a);
  EXPECT_EQ(same.t_statistic, 0.0);
  EXPECT_EQ(same.p_value, 1.0);
  EXPECT_FALSE(same.significant);
}

TEST(TTest, DegenerateConstantDifference) {
  const std::vector<double> a{0.5, 0.6, 0.7};
  const std::vector<double> b{0.4, 0.5, 0.6};
  const auto r = paired_t_test(a, b);
  EXPECT_TRUE(r.degenerate);
  EXPECT_TRUE(r.significant);
  EXPECT_EQ(r.p_value, 0.0);
}

TEST(TTest, Errors) {
  const std::vector<double> one{0.1};
  const std::vector<double> two{0.1, 0.2};
  EXPECT_THROW(paired_t_test(one, one), std::invalid_argument);
  EXPECT_THROW(paired_t_test(one, two), std::invalid_argument);
  const std::map<std::string, double> x{{"1", 0.1}, {"2", 0.2}};
  const std::map<std::string, double> y{{"1", 0.1}, {"3", 0.2}};
  EXPECT_THROW(paired_t_test(x, y), std::invalid_argument);
}

TEST(StudentT, CriticalValueFiftyTopics) {
  EXPECT_NEAR(student_t_two_tailed_p(2.0096, 49), 0.05, 1e-3);
}

TEST(StudentT, MatchesReferenceCdf) {
  // scipy.stats.t.cdf and scipy.special.betainc
  EXPECT_NEAR(student_t_cdf(1.0, 1), 0.75, 1e-12);
  EXPECT_NEAR(student_t_cdf(2.5, 10), 0.9842765778816956, 1e-10);
  EXPECT_NEAR(student_t_cdf(-3.2, 7), 0.007532905671244649, 1e-10);
  EXPECT_NEAR(student_t_cdf(0.1, 200), 0.5397777537478394, 1e-10);
  EXPECT_NEAR(student_t_cdf(12.0, 4), 0.9998617857257486, 1e-10);
  EXPECT_NEAR(regularized_incomplete_beta(0.3, 2.0, 3.0), 0.3483, 1e-12);
  EXPECT_NEAR(regularized_incomplete_beta(0.9, 0.5, 0.5), 0.7951672353008665, 1e-10);
  EXPECT_NEAR(regularized_incomplete_beta(0.01, 5.0, 1.5), 2.6957276768685276e-10, 1e-18);
  EXPECT_EQ(regularized_incomplete_beta(0.0, 2.0, 3.0), 0.0);
  EXPECT_EQ(regularized_incomplete_beta(1.0, 2.0, 3.0), 1.0);
}

namespace {

MetricsReport report(std::string tag, std::vector<double> ap) {
  MetricsReport r;
  r.run_tag = std::move(tag);
  for (std::size_t i = 0; i < ap.size(); ++i) {
    TopicMetrics m;
    for (auto& v : m.values) v = ap[i];
    r.per_topic[std::to_string(i)] = m;
  }
  double sum = 0.0;
  for (const double v : ap) sum += v;
  for (auto& v : r.aggregate) v = sum / static_cast<double>(ap.size());
  return r;
}

}  // namespace

TEST(CompareRuns, IdenticalRunsNoMarksBestToFirst) {
  const std::vector<MetricsReport> reports{report("b", {0.1, 0.4, 0.3}), report("b+te", {0.1, 0.4, 0.3})};
  const auto table = compare_runs(reports, "b");
  ASSERT_EQ(table.rows.size(), 2u);
  for (std::size_t c = 0; c < kMetricCount; ++c) {
    EXPECT_FALSE(table.rows[0].significance[c].has_value());
    ASSERT_TRUE(table.rows[1].significance[c].has_value());
    EXPECT_FALSE(table.rows[1].significance[c]->significant);
    EXPECT_TRUE(table.rows[0].best[c]);
    EXPECT_FALSE(table.rows[1].best[c]);
  }
}

TEST(CompareRuns, FourRowsWithSignificance) {
  const std::vector<MetricsReport> reports{
      report("b", {0.1, 0.2, 0.3, 0.4, 0.5}), report("b+te", {0.2, 0.31, 0.39, 0.52, 0.6}),
      report("b+ae", {0.1, 0.21, 0.28, 0.41, 0.5}), report("b+te+ae", {0.3, 0.4, 0.5, 0.6, 0.72})};
  const auto table = compare_runs(reports, "b");
  ASSERT_EQ(table.rows.size(), 4u);
  EXPECT_TRUE(table.rows[1].significance[0]->significant);
  EXPECT_FALSE(table.rows[2].significance[0]->significant);
  EXPECT_TRUE(table.rows[3].best[0]);
  const auto text = render_table_text(table);
  EXPECT_NE(text.find("MAP"), std::string::npos);
  EXPECT_NE(text.find("P@100"), std::string::npos);
  EXPECT_NE(text.find("*^"), std::string::npos);
  const auto tsv = render_table_tsv(table);
  EXPECT_EQ(std::count(tsv.begin(), tsv.end(), '\n'), 1 + 4 * 5);
}

TEST(CompareRuns, BaselineOnlyAndErrors) {
  const std::vector<MetricsReport> one{report("b", {0.1, 0.2})};
  const auto table = compare_runs(one, "b");
  ASSERT_EQ(table.rows.size(), 1u);
  for (const auto& s : table.rows[0].significance) EXPECT_FALSE(s.has_value());
  EXPECT_THROW(compare_runs(one, "b+te"), std::invalid_argument);
  const std::vector<MetricsReport> empty{report("b", {0.1}), MetricsReport{"x", {}, {}, {}}};
  EXPECT_THROW(compare_runs(empty, "b"), std::invalid_argument);
}

TEST(RunFile, RoundTripReevaluatesIdentically) {
  RunResult run;
  run.run_tag = "b+te";
  run.rankings["2"] = ranking({"c", "a", "b"}, "2");
  run.rankings["1"] = ranking({"a", "x", "b"}, "1");
  run.rankings["1"].entries[1].score = 2.0 + 0.1 + 0.2;  // needs full precision to survive
  std::ostringstream out;
  write_run(out, run);
  EXPECT_EQ(out.str().substr(0, 18), "1 Q0 a 1 3 b+te\n1 ");
  std::istringstream in(out.str());
  const std::vector<std::string> expected{"1", "2", "3"};
  const auto back = load_run(in, "run", expected);
  EXPECT_EQ(back.run_tag, "b+te");
  ASSERT_EQ(back.rankings.size(), 3u);
  EXPECT_TRUE(back.rankings.at("3").entries.empty());
  EXPECT_EQ(back.rankings.at("1").entries, run.rankings.at("1").entries);
  const auto q = qrels({{"1", "a", 1}, {"1", "b", 1}, {"2", "b", 1}});
  RunResult trimmed = back;
  trimmed.rankings.erase("3");
  EXPECT_EQ(evaluate_run(trimmed, q).aggregate, evaluate_run(run, q).aggregate);
}

TEST(RunFile, LoadErrors) {
  std::istringstream short_line("1 Q0 a 1 3\n");
  EXPECT_THROW(load_run(short_line), ParseError);
  std::istringstream mixed("1 Q0 a 1 3 x\n1 Q0 b 2 2 y\n");
  EXPECT_THROW(load_run(mixed), ParseError);
  std::istringstream dup("1 Q0 a 1 3 x\n1 Q0 a 2 2 x\n");
  EXPECT_THROW(load_run(dup), ParseError);
}
