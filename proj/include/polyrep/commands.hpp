#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "polyrep/expansion.hpp"
#include "polyrep/index.hpp"
#include "polyrep/synth.hpp"

namespace polyrep {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // input or runtime error
inline constexpr int kExitUsage = 2;    // invalid arguments

struct ExperimentSpec {
  std::string corpus_path;
  std::string topics_path;
  std::string qrels_path;
  std::vector<RunConfig> configs{kAllRunConfigs.begin(), kAllRunConfigs.end()};
  std::size_t n = 4;
  std::size_t k = kDefaultDepth;
  double alpha = 0.05;
  std::optional<std::string> stoplist_path;
  std::string output_dir;
  unsigned threads = 1;
};

/// Writes `<tag>.run` per config plus table.txt, table.tsv and run_meta.json
/// into the output directory and prints the table.
int cmd_experiment(const ExperimentSpec& spec, std::ostream& out, std::ostream& err);

struct SuggestSpec {
  std::string corpus_path;  // JSONL corpus, or a snapshot when `snapshot` is set
  bool snapshot = false;
  std::string query;
  std::string kind = "author";
  std::size_t n = 4;
  std::optional<std::string> stoplist_path;
};

/// Prints `entity<TAB>kind<TAB>score` lines, scores with six decimals.
int cmd_suggest(const SuggestSpec& spec, std::ostream& out, std::ostream& err);

struct SearchSpec {
  std::string corpus_path;
  bool snapshot = false;
  std::string query;
  RunConfig config = RunConfig::kB;
  std::size_t n = 4;
  std::size_t k = 10;
  std::optional<std::string> stoplist_path;
};

/// Prints the rendered query, a blank line, then `rank<TAB>doc_id<TAB>score<TAB>title`.
int cmd_search(const SearchSpec& spec, std::ostream& out, std::ostream& err);

struct IndexSpec {
  std::string corpus_path;
  std::string output_path;
};

/// Builds the index and writes a snapshot.
int cmd_index(const IndexSpec& spec, std::ostream& out, std::ostream& err);

/// Writes corpus.jsonl, topics.tsv and qrels.txt into `output_dir`.
int cmd_synth(const SynthParams& params, const std::string& output_dir, std::ostream& out,
              std::ostream& err);

}  // namespace polyrep
