#include "polyrep/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

namespace polyrep {

std::string run_tag(RunConfig config) { return std::string(to_string(config)); }

namespace {

struct TopicOutcome {
  std::vector<Ranking> rankings;  // parallel to options.configs
  std::vector<std::string> rendered;
  std::vector<std::string> warnings;
};

TopicOutcome process_topic(const Engine& engine, const Topic& topic,
                           const ExperimentOptions& options) {
  TopicOutcome out;
  for (const auto config : options.configs) {
    auto expansion = engine.expand(topic, config, options.suggest);
    if (expansion.fell_back) {
      out.warnings.push_back(fmt::format("topic {}: {} lacks suggestions, ran as {}",
                                         topic.topic_id, display_name(config),
                                         display_name(expansion.effective)));
    }
    out.rendered.push_back(render_query(expansion.query));
    out.rankings.push_back(search(engine.index(), expansion.query, options.k));
  }
  return out;
}

}  // namespace

ExperimentResult run_experiment(const Engine& engine, const std::vector<Topic>& topics,
                                const Qrels& qrels, const ExperimentOptions& options) {
  if (options.configs.empty()) throw std::invalid_argument("no run configurations given");

  std::vector<TopicOutcome> outcomes(topics.size());
  const unsigned workers =
      std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(topics.size())));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto work = [&] {
    for (std::size_t i = next++; i < topics.size(); i = next++) {
      try {
        outcomes[i] = process_topic(engine, topics[i], options);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  ExperimentResult result;
  for (std::size_t c = 0; c < options.configs.size(); ++c) {
    RunResult run;
    run.run_tag = run_tag(options.configs[c]);
    for (std::size_t t = 0; t < topics.size(); ++t) {
      run.rankings.emplace(topics[t].topic_id, outcomes[t].rankings[c]);
      result.rendered_queries[topics[t].topic_id][run.run_tag] = outcomes[t].rendered[c];
    }
    result.runs.push_back(std::move(run));
  }
  for (const auto& o : outcomes) {
    result.warnings.insert(result.warnings.end(), o.warnings.begin(), o.warnings.end());
  }
  for (const auto& run : result.runs) result.reports.push_back(evaluate_run(run, qrels));

  const bool has_b =
      std::find(options.configs.begin(), options.configs.end(), RunConfig::kB) != options.configs.end();
  const auto baseline = run_tag(has_b ? RunConfig::kB : options.configs.front());
  result.table = compare_runs(result.reports, baseline, options.alpha);
  return result;
}

}  // namespace polyrep
