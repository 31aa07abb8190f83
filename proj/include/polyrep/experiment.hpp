#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "polyrep/corpus.hpp"
#include "polyrep/engine.hpp"
#include "polyrep/evaluation.hpp"
#include "polyrep/expansion.hpp"

namespace polyrep {

struct ExperimentOptions {
  std::vector<RunConfig> configs{kAllRunConfigs.begin(), kAllRunConfigs.end()};
  SuggestConfig suggest;
  std::size_t k = kDefaultDepth;
  double alpha = kDefaultAlpha;
  unsigned threads = 1;
};

struct ExperimentResult {
  std::vector<RunResult> runs;  // one per config, in option order
  std::vector<MetricsReport> reports;
  ComparisonTable table;
  /// topic_id -> config tag -> rendered query, for inspection.
  std::map<std::string, std::map<std::string, std::string>> rendered_queries;
  std::vector<std::string> warnings;
};

/// Tag used for run files and table rows: "b", "b+te", ...
std::string run_tag(RunConfig config);

/// For each topic: suggest thesaurus terms and authors from its terms, build
/// every configured query, search, then evaluate and compare against B (or the
/// first configured run when B is absent). Per-topic work is spread over
/// `threads` workers; the result does not depend on the thread count.
ExperimentResult run_experiment(const Engine& engine, const std::vector<Topic>& topics,
                                const Qrels& qrels, const ExperimentOptions& options);

}  // namespace polyrep
