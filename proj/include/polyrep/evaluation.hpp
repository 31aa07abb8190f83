#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polyrep/corpus.hpp"
#include "polyrep/index.hpp"

namespace polyrep {

struct RunResult {
  std::string run_tag;
  std::map<std::string, Ranking> rankings;  // by topic_id
};

enum class Metric { kMap, kRPrecision, kP10, kP20, kP100 };
inline constexpr std::array kAllMetrics = {Metric::kMap, Metric::kRPrecision, Metric::kP10,
                                           Metric::kP20, Metric::kP100};
inline constexpr std::size_t kMetricCount = kAllMetrics.size();

/// Column header: "MAP", "rPrecision", "P@10", "P@20", "P@100".
std::string_view metric_name(Metric metric);

using MetricValues = std::array<double, kMetricCount>;

inline double& at(MetricValues& v, Metric m) { return v[static_cast<std::size_t>(m)]; }
inline double at(const MetricValues& v, Metric m) { return v[static_cast<std::size_t>(m)]; }

struct TopicMetrics {
  MetricValues values{};  // AP in the MAP slot
  std::size_t relevant = 0;
  std::size_t retrieved = 0;
  std::size_t relevant_retrieved = 0;
};

struct MetricsReport {
  std::string run_tag;
  std::map<std::string, TopicMetrics> per_topic;  // topics with R >= 1 only
  MetricValues aggregate{};
  std::vector<std::string> excluded_topics;  // judged topics with no relevant document

  std::size_t evaluated_topics() const { return per_topic.size(); }
};

/// Average precision over the ranking, divided by the total number of relevant
/// documents. nullopt when the topic has no relevant document.
std::optional<double> average_precision(const Ranking& ranking, const Qrels& qrels,
                                        std::string_view topic_id);

/// Relevant documents in the top k, divided by k even when fewer were retrieved.
double precision_at_k(const Ranking& ranking, const Qrels& qrels, std::string_view topic_id,
                      std::size_t k);

/// Precision at rank R. nullopt when R = 0.
std::optional<double> r_precision(const Ranking& ranking, const Qrels& qrels,
                                  std::string_view topic_id);

/// Throws std::invalid_argument if the run holds a topic absent from the qrels.
MetricsReport evaluate_run(const RunResult& run, const Qrels& qrels);

struct SignificanceResult {
  std::string metric;
  double t_statistic = 0.0;
  double p_value = 1.0;
  double alpha = 0.05;
  std::size_t degrees_of_freedom = 0;
  bool significant = false;
  bool degenerate = false;  // zero variance with nonzero mean difference
};

inline constexpr double kDefaultAlpha = 0.05;

/// Two-tailed paired t-test on d = a - b. Throws std::invalid_argument when the
/// vectors differ in length or hold fewer than two pairs.
SignificanceResult paired_t_test(std::span<const double> a, std::span<const double> b,
                                 double alpha = kDefaultAlpha, std::string metric = {});

/// Aligns two per-topic maps first; differing topic sets are an error.
SignificanceResult paired_t_test(const std::map<std::string, double>& a,
                                 const std::map<std::string, double>& b,
                                 double alpha = kDefaultAlpha, std::string metric = {});

/// Per-topic values of one metric.
std::map<std::string, double> per_topic_values(const MetricsReport& report, Metric metric);

struct ComparisonRow {
  std::string run_tag;
  MetricValues values{};
  std::array<std::optional<SignificanceResult>, kMetricCount> significance{};  // empty for baseline
  std::array<bool, kMetricCount> best{};
};

struct ComparisonTable {
  std::string baseline;
  double alpha = kDefaultAlpha;
  std::vector<ComparisonRow> rows;  // in report order
};

/// Tests every non-baseline cell against the baseline on its per-topic vector.
/// With fewer than two shared topics no test is run. The best value of each
/// column is flagged on the first row that reaches it.
ComparisonTable compare_runs(std::span<const MetricsReport> reports, std::string_view baseline,
                             double alpha = kDefaultAlpha);

/// Aligned plain text; '*' marks significance against the baseline, '^' the
/// column best.
std::string render_table_text(const ComparisonTable& table);
/// Tab-separated long format: run, metric, value, t, p_value, significant, best.
std::string render_table_tsv(const ComparisonTable& table);

/// TREC run format: `topic_id Q0 doc_id rank score run_tag`, ordered by
/// topic_id then rank. Scores use the shortest round-trip representation.
void write_run(std::ostream& out, const RunResult& run);

/// Rankings are re-sorted by score (then doc_id). Topics listed in
/// `expected_topics` but absent from the file get an empty ranking.
RunResult load_run(std::istream& in, const std::string& source = "run",
                   std::span<const std::string> expected_topics = {});
RunResult load_run_file(const std::string& path, std::span<const std::string> expected_topics = {});

}  // namespace polyrep
