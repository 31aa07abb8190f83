#include "polyrep/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "polyrep/student_t.hpp"

namespace polyrep {

namespace {

struct RankStats {
  std::size_t relevant = 0;
  std::size_t retrieved = 0;
  std::size_t relevant_retrieved = 0;
  double precision_sum = 0.0;  // sum of precision at each relevant rank
  std::size_t rel_at_r = 0;
  std::size_t rel_at_10 = 0;
  std::size_t rel_at_20 = 0;
  std::size_t rel_at_100 = 0;
};

RankStats scan(const Ranking& ranking, const Qrels& qrels, std::string_view topic_id) {
  RankStats s;
  s.relevant = qrels.relevant_count(topic_id);
  s.retrieved = ranking.entries.size();
  const auto* judged = [&]() -> const std::map<std::string, int, std::less<>>* {
    const auto it = qrels.judgments().find(topic_id);
    return it == qrels.judgments().end() ? nullptr : &it->second;
  }();
  for (std::size_t i = 0; i < ranking.entries.size(); ++i) {
    const std::size_t rank = i + 1;
    bool rel = false;
    if (judged != nullptr) {
      const auto it = judged->find(ranking.entries[i].doc_id);
      rel = it != judged->end() && it->second > 0;
    }
    if (rel) {
      ++s.relevant_retrieved;
      s.precision_sum += static_cast<double>(s.relevant_retrieved) / static_cast<double>(rank);
      if (rank <= s.relevant) ++s.rel_at_r;
      if (rank <= 10) ++s.rel_at_10;
      if (rank <= 20) ++s.rel_at_20;
      if (rank <= 100) ++s.rel_at_100;
    }
  }
  return s;
}

double ratio(std::size_t num, std::size_t den) {
  return static_cast<double>(num) / static_cast<double>(den);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("\"" + s + "\" is not a number");
  }
  return v;
}

}  // namespace

std::string_view metric_name(Metric metric) {
  switch (metric) {
    case Metric::kMap:
      return "MAP";
    case Metric::kRPrecision:
      return "rPrecision";
    case Metric::kP10:
      return "P@10";
    case Metric::kP20:
      return "P@20";
    case Metric::kP100:
      return "P@100";
  }
  return "?";
}

std::optional<double> average_precision(const Ranking& ranking, const Qrels& qrels,
                                        std::string_view topic_id) {
  const auto s = scan(ranking, qrels, topic_id);
  if (s.relevant == 0) return std::nullopt;
  return s.precision_sum / static_cast<double>(s.relevant);
}

double precision_at_k(const Ranking& ranking, const Qrels& qrels, std::string_view topic_id,
                      std::size_t k) {
  if (k == 0) throw std::invalid_argument("precision cutoff must be at least 1");
  const auto* judged = [&]() -> const std::map<std::string, int, std::less<>>* {
    const auto it = qrels.judgments().find(topic_id);
    return it == qrels.judgments().end() ? nullptr : &it->second;
  }();
  if (judged == nullptr) return 0.0;
  std::size_t hits = 0;
  const auto limit = std::min(k, ranking.entries.size());
  for (std::size_t i = 0; i < limit; ++i) {
    const auto it = judged->find(ranking.entries[i].doc_id);
    if (it != judged->end() && it->second > 0) ++hits;
  }
  return ratio(hits, k);
}

std::optional<double> r_precision(const Ranking& ranking, const Qrels& qrels,
                                  std::string_view topic_id) {
  const auto s = scan(ranking, qrels, topic_id);
  if (s.relevant == 0) return std::nullopt;
  return ratio(s.rel_at_r, s.relevant);
}

MetricsReport evaluate_run(const RunResult& run, const Qrels& qrels) {
  MetricsReport report;
  report.run_tag = run.run_tag;
  for (const auto& [topic, ranking] : run.rankings) {
    if (!qrels.has_topic(topic)) {
      throw std::invalid_argument("run " + run.run_tag + " contains topic " + topic +
                                  " which has no judgments");
    }
    const auto s = scan(ranking, qrels, topic);
    if (s.relevant == 0) {
      report.excluded_topics.push_back(topic);
      continue;
    }
    TopicMetrics m;
    m.relevant = s.relevant;
    m.retrieved = s.retrieved;
    m.relevant_retrieved = s.relevant_retrieved;
    at(m.values, Metric::kMap) = s.precision_sum / static_cast<double>(s.relevant);
    at(m.values, Metric::kRPrecision) = ratio(s.rel_at_r, s.relevant);
    at(m.values, Metric::kP10) = ratio(s.rel_at_10, 10);
    at(m.values, Metric::kP20) = ratio(s.rel_at_20, 20);
    at(m.values, Metric::kP100) = ratio(s.rel_at_100, 100);
    report.per_topic.emplace(topic, m);
  }
  if (!report.per_topic.empty()) {
    MetricValues sums{};
    for (const auto& [topic, m] : report.per_topic) {
      for (std::size_t i = 0; i < kMetricCount; ++i) sums[i] += m.values[i];
    }
    for (std::size_t i = 0; i < kMetricCount; ++i) {
      report.aggregate[i] = sums[i] / static_cast<double>(report.per_topic.size());
    }
  }
  return report;
}

SignificanceResult paired_t_test(std::span<const double> a, std::span<const double> b,
                                 double alpha, std::string metric) {
  if (a.size() != b.size()) throw std::invalid_argument("paired samples differ in length");
  if (a.size() < 2) throw std::invalid_argument("paired t-test needs at least two pairs");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");

  const auto m = static_cast<double>(a.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] - b[i];
  const double mean = sum / m;
  double ss = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double dev = (a[i] - b[i]) - mean;
    ss += dev * dev;
  }
  const double sd = std::sqrt(ss / (m - 1.0));

  SignificanceResult r;
  r.metric = std::move(metric);
  r.alpha = alpha;
  r.degrees_of_freedom = a.size() - 1;
  // Differences below this are rounding noise from subtracting equal-ish metric values.
  constexpr double kZero = 1e-15;
  if (sd <= kZero) {
    if (std::fabs(mean) <= kZero) {
      r.t_statistic = 0.0;
      r.p_value = 1.0;
      r.significant = false;
    } else {
      r.t_statistic = mean > 0 ? std::numeric_limits<double>::infinity()
                               : -std::numeric_limits<double>::infinity();
      r.p_value = 0.0;
      r.significant = true;
      r.degenerate = true;
    }
    return r;
  }
  r.t_statistic = mean / (sd / std::sqrt(m));
  r.p_value = student_t_two_tailed_p(r.t_statistic, static_cast<double>(r.degrees_of_freedom));
  r.significant = r.p_value < alpha;
  return r;
}

SignificanceResult paired_t_test(const std::map<std::string, double>& a,
                                 const std::map<std::string, double>& b, double alpha,
                                 std::string metric) {
  if (a.size() != b.size()) throw std::invalid_argument("paired samples cover different topics");
  std::vector<double> va;
  std::vector<double> vb;
  for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib) {
    if (ia->first != ib->first) {
      throw std::invalid_argument("paired samples cover different topics (" + ia->first +
                                  " vs " + ib->first + ")");
    }
    va.push_back(ia->second);
    vb.push_back(ib->second);
  }
  return paired_t_test(va, vb, alpha, std::move(metric));
}

std::map<std::string, double> per_topic_values(const MetricsReport& report, Metric metric) {
  std::map<std::string, double> out;
  for (const auto& [topic, m] : report.per_topic) out.emplace(topic, at(m.values, metric));
  return out;
}

ComparisonTable compare_runs(std::span<const MetricsReport> reports, std::string_view baseline,
                             double alpha) {
  const auto base = std::find_if(reports.begin(), reports.end(),
                                 [&](const MetricsReport& r) { return r.run_tag == baseline; });
  if (base == reports.end()) {
    throw std::invalid_argument("baseline run \"" + std::string(baseline) + "\" not among reports");
  }
  ComparisonTable table;
  table.baseline = std::string(baseline);
  table.alpha = alpha;
  for (const auto& report : reports) {
    if (report.per_topic.empty()) {
      throw std::invalid_argument("run " + report.run_tag + " has no per-topic data");
    }
    ComparisonRow row;
    row.run_tag = report.run_tag;
    row.values = report.aggregate;
    if (&report != &*base && report.per_topic.size() >= 2) {
      for (const auto metric : kAllMetrics) {
        row.significance[static_cast<std::size_t>(metric)] =
            paired_t_test(per_topic_values(report, metric), per_topic_values(*base, metric), alpha,
                          std::string(metric_name(metric)));
      }
    }
    table.rows.push_back(std::move(row));
  }
  for (std::size_t col = 0; col < kMetricCount; ++col) {
    std::size_t best = 0;
    for (std::size_t r = 1; r < table.rows.size(); ++r) {
      if (table.rows[r].values[col] > table.rows[best].values[col]) best = r;
    }
    table.rows[best].best[col] = true;
  }
  return table;
}

std::string render_table_text(const ComparisonTable& table) {
  std::size_t run_width = 3;
  for (const auto& row : table.rows) run_width = std::max(run_width, row.run_tag.size());
  constexpr std::size_t kCell = 12;

  std::string out = fmt::format("{:<{}}", "run", run_width + 2);
  for (const auto metric : kAllMetrics) out += fmt::format("{:<{}}", metric_name(metric), kCell);
  out += '\n';
  for (const auto& row : table.rows) {
    std::string line = fmt::format("{:<{}}", row.run_tag, run_width + 2);
    for (std::size_t c = 0; c < kMetricCount; ++c) {
      std::string cell = fmt::format("{:.4f}", row.values[c]);
      if (row.significance[c] && row.significance[c]->significant) cell += '*';
      if (row.best[c]) cell += '^';
      line += fmt::format("{:<{}}", cell, kCell);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line;
    out += '\n';
  }
  out += fmt::format("* significant vs {} (paired two-tailed t-test, alpha = {}); ^ best in column\n",
                     table.baseline, table.alpha);
  return out;
}

std::string render_table_tsv(const ComparisonTable& table) {
  std::string out = "run\tmetric\tvalue\tt_statistic\tp_value\tsignificant\tbest\n";
  for (const auto& row : table.rows) {
    for (const auto metric : kAllMetrics) {
      const auto c = static_cast<std::size_t>(metric);
      const auto& sig = row.significance[c];
      out += fmt::format("{}\t{}\t{:.6f}\t{}\t{}\t{}\t{}\n", row.run_tag, metric_name(metric),
                         row.values[c], sig ? fmt::format("{:.6f}", sig->t_statistic) : "",
                         sig ? fmt::format("{:.6f}", sig->p_value) : "",
                         sig ? (sig->significant ? "1" : "0") : "", row.best[c] ? "1" : "0");
    }
  }
  return out;
}

void write_run(std::ostream& out, const RunResult& run) {
  for (const auto& [topic, ranking] : run.rankings) {
    for (std::size_t i = 0; i < ranking.entries.size(); ++i) {
      const auto& e = ranking.entries[i];
      out << fmt::format("{} Q0 {} {} {} {}\n", topic, e.doc_id, i + 1, e.score, run.run_tag);
    }
  }
}

RunResult load_run(std::istream& in, const std::string& source,
                   std::span<const std::string> expected_topics) {
  RunResult run;
  std::map<std::string, std::set<std::string>> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<std::string> parts;
    for (std::string f; fields >> f;) parts.push_back(std::move(f));
    if (parts.empty()) continue;
    if (parts.size() != 6) {
      throw ParseError(source, line_no, "expected 6 fields (topic Q0 doc rank score tag)");
    }
    double score = 0.0;
    try {
      score = parse_double(parts[4]);
      (void)parse_double(parts[3]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(source, line_no, e.what());
    }
    if (run.run_tag.empty()) {
      run.run_tag = parts[5];
    } else if (run.run_tag != parts[5]) {
      throw ParseError(source, line_no, "run tag \"" + parts[5] + "\" differs from \"" +
                                            run.run_tag + "\"");
    }
    if (!seen[parts[0]].insert(parts[2]).second) {
      throw ParseError(source, line_no, "doc " + parts[2] + " listed twice for topic " + parts[0]);
    }
    auto& ranking = run.rankings[parts[0]];
    ranking.topic_id = parts[0];
    ranking.entries.push_back({parts[2], score});
  }
  for (const auto& t : expected_topics) run.rankings[t].topic_id = t;
  for (auto& [topic, ranking] : run.rankings) {
    std::sort(ranking.entries.begin(), ranking.entries.end(),
              [](const RankedDoc& a, const RankedDoc& b) {
                if (a.score != b.score) return a.score > b.score;
                return a.doc_id < b.doc_id;
              });
    ranking.k = std::max<std::size_t>(ranking.entries.size(), 1);
  }
  return run;
}

RunResult load_run_file(const std::string& path, std::span<const std::string> expected_topics) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open run file");
  return load_run(in, path, expected_topics);
}

}  // namespace polyrep
