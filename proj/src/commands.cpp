#include "polyrep/commands.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#include "polyrep/engine.hpp"
#include "polyrep/experiment.hpp"

namespace polyrep {

namespace fs = std::filesystem;

namespace {

Stoplist load_stoplist(const std::optional<std::string>& path) {
  return path ? Stoplist::from_file(*path) : Stoplist::default_english();
}

Engine load_engine(const std::string& path, bool snapshot) {
  if (snapshot) return Engine(load_snapshot_file(path));
  return Engine(load_corpus_file(path));
}

std::vector<std::string> query_terms(const std::string& text, const Stoplist& stoplist) {
  auto terms = remove_stopwords(tokenize(text), stoplist);
  if (terms.empty()) {
    throw std::invalid_argument("query \"" + text + "\" has no terms after stopword removal");
  }
  return terms;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace

int cmd_experiment(const ExperimentSpec& spec, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (spec.configs.empty()) throw std::invalid_argument("no run configurations given");
    for (const auto* p : {&spec.corpus_path, &spec.topics_path, &spec.qrels_path}) {
      if (!fs::exists(*p)) throw std::runtime_error("input file not found: " + *p);
    }
    const auto stoplist = load_stoplist(spec.stoplist_path);
    Engine engine(load_corpus_file(spec.corpus_path));
    const auto topics = load_topics_file(spec.topics_path, stoplist);
    const auto qrels = load_qrels_file(spec.qrels_path);

    ExperimentOptions options;
    options.configs = spec.configs;
    options.suggest.n = spec.n;
    options.k = spec.k;
    options.alpha = spec.alpha;
    options.threads = spec.threads;
    const auto result = run_experiment(engine, topics, qrels, options);

    const fs::path dir(spec.output_dir);
    fs::create_directories(dir);
    for (const auto& run : result.runs) {
      std::ofstream f(dir / (run.run_tag + ".run"), std::ios::binary);
      if (!f) throw std::runtime_error("cannot write run file in " + dir.string());
      write_run(f, run);
    }
    const auto text = render_table_text(result.table);
    write_file(dir / "table.txt", text);
    write_file(dir / "table.tsv", render_table_tsv(result.table));

    nlohmann::ordered_json meta;
    meta["corpus"] = spec.corpus_path;
    meta["topics"] = spec.topics_path;
    meta["qrels"] = spec.qrels_path;
    meta["topic_field"] = "title";
    meta["stoplist"] = {{"source", stoplist.source()}, {"words", stoplist.sorted_words()}};
    std::vector<std::string> tags;
    for (const auto c : spec.configs) tags.push_back(run_tag(c));
    meta["configs"] = tags;
    meta["n"] = spec.n;
    meta["k"] = spec.k;
    meta["alpha"] = spec.alpha;
    meta["warnings"] = result.warnings;
    write_file(dir / "run_meta.json", meta.dump(2) + "\n");

    for (const auto& w : result.warnings) err << "warning: " << w << '\n';
    out << text;
    return kExitOk;
  });
}

int cmd_suggest(const SuggestSpec& spec, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto stoplist = load_stoplist(spec.stoplist_path);
    const auto terms = query_terms(spec.query, stoplist);
    const auto engine = load_engine(spec.corpus_path, spec.snapshot);
    SuggestConfig config;
    config.n = spec.n;
    for (const auto& s : engine.suggest(field_for_kind(spec.kind), terms, config)) {
      out << fmt::format("{}\t{}\t{:.6f}\n", s.entity, kind_label(s.field), s.score);
    }
    return kExitOk;
  });
}

int cmd_search(const SearchSpec& spec, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto stoplist = load_stoplist(spec.stoplist_path);
    Topic topic;
    topic.topic_id = "query";
    topic.title = spec.query;
    topic.terms = query_terms(spec.query, stoplist);
    const auto engine = load_engine(spec.corpus_path, spec.snapshot);
    SuggestConfig config;
    config.n = spec.n;
    const auto expansion = engine.expand(topic, spec.config, config);
    if (expansion.fell_back) {
      err << "warning: " << display_name(spec.config) << " lacks suggestions, ran as "
          << display_name(expansion.effective) << '\n';
    }
    const auto ranking = search(engine.index(), expansion.query, spec.k);
    std::map<std::string_view, std::string_view> titles;
    for (const auto& d : engine.index().docs()) titles.emplace(d.doc_id, d.title);
    out << render_query(expansion.query) << "\n\n";
    for (std::size_t i = 0; i < ranking.entries.size(); ++i) {
      const auto& e = ranking.entries[i];
      out << fmt::format("{}\t{}\t{:.6f}\t{}\n", i + 1, e.doc_id, e.score, titles[e.doc_id]);
    }
    return kExitOk;
  });
}

int cmd_index(const IndexSpec& spec, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto corpus = load_corpus_file(spec.corpus_path);
    const auto index = FieldedIndex::build(corpus);
    std::ofstream f(spec.output_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + spec.output_path);
    save_snapshot(f, index, corpus);
    out << fmt::format("indexed {} documents into {}\n", index.doc_count(), spec.output_path);
    return kExitOk;
  });
}

int cmd_synth(const SynthParams& params, const std::string& output_dir, std::ostream& out,
              std::ostream& err) {
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  return guarded(err, [&] {
    const auto collection = generate(params);
    const fs::path dir(output_dir);
    fs::create_directories(dir);
    {
      std::ofstream f(dir / "corpus.jsonl", std::ios::binary);
      write_corpus(f, collection.corpus);
    }
    {
      std::ofstream f(dir / "topics.tsv", std::ios::binary);
      write_topics(f, collection.topics);
    }
    {
      std::ofstream f(dir / "qrels.txt", std::ios::binary);
      write_qrels(f, collection.qrels);
    }
    out << fmt::format("wrote {} documents, {} topics, {} judgments to {}\n",
                       collection.corpus.size(), collection.topics.size(),
                       collection.qrels.size(), dir.string());
    return kExitOk;
  });
}

}  // namespace polyrep
