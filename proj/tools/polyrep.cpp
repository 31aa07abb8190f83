// polyrep: author- and thesaurus-aware term suggestion, query expansion and
// evaluation from the command line.

#include <csignal>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polyrep/commands.hpp"
#include "polyrep/corpus.hpp"
#include "polyrep/engine.hpp"
#include "polyrep/service.hpp"

namespace {

polyrep::HttpService* g_service = nullptr;

void handle_signal(int) {
  if (g_service != nullptr) g_service->stop();
}

std::vector<polyrep::RunConfig> parse_configs(const std::vector<std::string>& names) {
  std::vector<polyrep::RunConfig> out;
  for (const auto& name : names) {
    const auto c = polyrep::parse_run_config(name);
    if (!c) throw CLI::ValidationError("--config", "unknown configuration \"" + name + "\"");
    out.push_back(*c);
  }
  return out;
}

const auto kConfigCheck = CLI::Validator(
    [](std::string& v) -> std::string {
      return polyrep::parse_run_config(v) ? std::string() : "expected b, b+te, b+ae or b+te+ae";
    },
    "CONFIG");

struct ServeOptions {
  std::string corpus;
  std::string snapshot;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::size_t n = 4;
  std::size_t k = polyrep::kDefaultDepth;
  std::string stoplist;
};

int cmd_serve(const ServeOptions& opt) {
  try {
    auto engine = opt.snapshot.empty()
                      ? polyrep::Engine(polyrep::load_corpus_file(opt.corpus))
                      : polyrep::Engine(polyrep::load_snapshot_file(opt.snapshot));
    polyrep::ServiceState state{
        std::move(engine),
        opt.stoplist.empty() ? polyrep::Stoplist::default_english()
                             : polyrep::Stoplist::from_file(opt.stoplist),
        polyrep::SuggestConfig{opt.n},
        opt.k,
        opt.snapshot.empty() ? opt.corpus : opt.snapshot,
    };
    polyrep::HttpService service(state);
    if (!service.bind(opt.host, opt.port)) {
      std::cerr << "error: cannot bind " << opt.host << ":" << opt.port << '\n';
      return polyrep::kExitFailure;
    }
    g_service = &service;
    std::signal(SIGINT, handle_signal);
    std::signal(SIGTERM, handle_signal);
    std::cerr << "serving " << state.engine.index().doc_count() << " documents on http://"
              << opt.host << ":" << opt.port << '\n';
    service.listen_after_bind();
    g_service = nullptr;
    return polyrep::kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return polyrep::kExitFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Term suggestion with author names and thesaurus terms: suggest, expand, search, "
               "evaluate."};
  app.require_subcommand(1);

  // index
  polyrep::IndexSpec index_spec;
  auto* index_cmd = app.add_subcommand("index", "Build the index and write a snapshot");
  index_cmd->add_option("--corpus", index_spec.corpus_path, "Corpus JSONL file")->required();
  index_cmd->add_option("--output", index_spec.output_path, "Snapshot file to write")->required();

  // suggest
  polyrep::SuggestSpec suggest_spec;
  std::string suggest_snapshot;
  std::string suggest_stoplist;
  auto* suggest_cmd = app.add_subcommand("suggest", "Suggest co-occurring entities for a query");
  auto* suggest_src = suggest_cmd->add_option("--corpus", suggest_spec.corpus_path, "Corpus JSONL");
  suggest_cmd->add_option("--snapshot", suggest_snapshot, "Index snapshot")->excludes(suggest_src);
  suggest_cmd->add_option("--query,-q", suggest_spec.query, "Query text")->required();
  suggest_cmd->add_option("--kind", suggest_spec.kind,
                          "author, controlled_term, or an extra entity field")
      ->capture_default_str();
  suggest_cmd->add_option("--n", suggest_spec.n, "Number of suggestions")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  suggest_cmd->add_option("--stoplist", suggest_stoplist, "Stopword file (one per line)");

  // search
  polyrep::SearchSpec search_spec;
  std::string search_snapshot;
  std::string search_stoplist;
  std::string search_config = "b";
  auto* search_cmd = app.add_subcommand("search", "Expand a query and print the ranking");
  auto* search_src = search_cmd->add_option("--corpus", search_spec.corpus_path, "Corpus JSONL");
  search_cmd->add_option("--snapshot", search_snapshot, "Index snapshot")->excludes(search_src);
  search_cmd->add_option("--query,-q", search_spec.query, "Query text")->required();
  search_cmd->add_option("--config", search_config, "b, b+te, b+ae or b+te+ae")
      ->check(kConfigCheck)
      ->capture_default_str();
  search_cmd->add_option("--n", search_spec.n, "Expansions per kind")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  search_cmd->add_option("--k", search_spec.k, "Results to print")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  search_cmd->add_option("--stoplist", search_stoplist, "Stopword file");

  // experiment
  polyrep::ExperimentSpec exp;
  std::vector<std::string> exp_configs;
  std::string exp_stoplist;
  auto* exp_cmd = app.add_subcommand("experiment", "Run, evaluate and compare the configurations");
  exp_cmd->add_option("--corpus", exp.corpus_path, "Corpus JSONL")->required();
  exp_cmd->add_option("--topics", exp.topics_path, "Topics file (id<TAB>title)")->required();
  exp_cmd->add_option("--qrels", exp.qrels_path, "trec_eval qrels")->required();
  exp_cmd->add_option("--config", exp_configs, "Configurations (repeatable; default all four)")
      ->check(kConfigCheck);
  exp_cmd->add_option("--n", exp.n, "Expansions per kind")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  exp_cmd->add_option("--k", exp.k, "Retrieval depth")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  exp_cmd->add_option("--alpha", exp.alpha, "Significance level")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  exp_cmd->add_option("--stoplist", exp_stoplist, "Stopword file");
  exp_cmd->add_option("--output", exp.output_dir, "Output directory")->required();
  exp_cmd->add_option("--threads", exp.threads, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  // synth
  polyrep::SynthParams synth;
  std::string synth_output;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a seeded synthetic collection");
  synth_cmd->add_option("--output", synth_output, "Output directory")->required();
  synth_cmd->add_option("--seed", synth.seed, "PRNG seed")->capture_default_str();
  synth_cmd->add_option("--topic-count", synth.topic_count)->capture_default_str();
  synth_cmd->add_option("--docs-per-topic", synth.docs_per_topic)->capture_default_str();
  synth_cmd->add_option("--distractor-docs", synth.distractor_docs)->capture_default_str();
  synth_cmd->add_option("--term-pool-size", synth.term_pool_size)->capture_default_str();
  synth_cmd->add_option("--ct-pool-size", synth.ct_pool_size)->capture_default_str();
  synth_cmd->add_option("--general-vocab-size", synth.general_vocab_size)->capture_default_str();
  synth_cmd->add_option("--general-ct-size", synth.general_ct_size)->capture_default_str();
  synth_cmd->add_option("--query-terms", synth.query_terms)->capture_default_str();
  synth_cmd->add_option("--title-length", synth.title_length)->capture_default_str();
  synth_cmd->add_option("--abstract-length", synth.abstract_length)->capture_default_str();
  synth_cmd->add_option("--cts-per-doc", synth.cts_per_doc)->capture_default_str();
  synth_cmd->add_option("--authors-per-doc", synth.authors_per_doc)->capture_default_str();
  synth_cmd->add_option("--topical-authors", synth.topical_authors_per_topic)
      ->capture_default_str();
  synth_cmd->add_option("--promiscuous-authors", synth.promiscuous_authors)
      ->capture_default_str();
  synth_cmd->add_option("--background-authors", synth.background_authors)->capture_default_str();
  synth_cmd->add_option("--promiscuous-rate", synth.promiscuous_rate)
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  synth_cmd->add_option("--topical-author-rate", synth.topical_author_rate)
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  synth_cmd->add_option("--peripheral-rate", synth.peripheral_rate)
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  synth_cmd->add_option("--term-noise", synth.term_noise)
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  synth_cmd->add_option("--distractor-topicality", synth.distractor_topicality)
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();

  // serve
  ServeOptions serve;
  auto* serve_cmd = app.add_subcommand("serve", "Serve /suggest, /search and /health over HTTP");
  auto* serve_src = serve_cmd->add_option("--corpus", serve.corpus, "Corpus JSONL");
  serve_cmd->add_option("--snapshot", serve.snapshot, "Index snapshot")->excludes(serve_src);
  serve_cmd->add_option("--host", serve.host)->capture_default_str();
  serve_cmd->add_option("--port", serve.port)->check(CLI::Range(1, 65535))->capture_default_str();
  serve_cmd->add_option("--n", serve.n, "Default suggestions per kind")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  serve_cmd->add_option("--k", serve.k, "Default retrieval depth")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  serve_cmd->add_option("--stoplist", serve.stoplist, "Stopword file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : polyrep::kExitUsage;
  }

  const auto optional_path = [](const std::string& p) {
    return p.empty() ? std::nullopt : std::optional<std::string>(p);
  };

  if (index_cmd->parsed()) return polyrep::cmd_index(index_spec, std::cout, std::cerr);
  if (suggest_cmd->parsed()) {
    if (suggest_spec.corpus_path.empty() && suggest_snapshot.empty()) {
      std::cerr << "usage error: one of --corpus or --snapshot is required\n";
      return polyrep::kExitUsage;
    }
    if (!suggest_snapshot.empty()) {
      suggest_spec.corpus_path = suggest_snapshot;
      suggest_spec.snapshot = true;
    }
    suggest_spec.stoplist_path = optional_path(suggest_stoplist);
    return polyrep::cmd_suggest(suggest_spec, std::cout, std::cerr);
  }
  if (search_cmd->parsed()) {
    if (search_spec.corpus_path.empty() && search_snapshot.empty()) {
      std::cerr << "usage error: one of --corpus or --snapshot is required\n";
      return polyrep::kExitUsage;
    }
    if (!search_snapshot.empty()) {
      search_spec.corpus_path = search_snapshot;
      search_spec.snapshot = true;
    }
    search_spec.config = *polyrep::parse_run_config(search_config);
    search_spec.stoplist_path = optional_path(search_stoplist);
    return polyrep::cmd_search(search_spec, std::cout, std::cerr);
  }
  if (exp_cmd->parsed()) {
    if (!exp_configs.empty()) exp.configs = parse_configs(exp_configs);
    exp.stoplist_path = optional_path(exp_stoplist);
    return polyrep::cmd_experiment(exp, std::cout, std::cerr);
  }
  if (synth_cmd->parsed()) return polyrep::cmd_synth(synth, synth_output, std::cout, std::cerr);
  if (serve_cmd->parsed()) {
    if (serve.corpus.empty() && serve.snapshot.empty()) {
      std::cerr << "usage error: one of --corpus or --snapshot is required\n";
      return polyrep::kExitUsage;
    }
    return cmd_serve(serve);
  }
  return polyrep::kExitUsage;
}
