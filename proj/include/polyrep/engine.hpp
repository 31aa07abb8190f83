#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polyrep/corpus.hpp"
#include "polyrep/expansion.hpp"
#include "polyrep/index.hpp"
#include "polyrep/recommender.hpp"

namespace polyrep {

/// Index plus entity postings for AU, CT and every extra entity field, all
/// built from one corpus snapshot. Immutable once constructed; safe to share
/// between threads.
class Engine {
 public:
  explicit Engine(std::vector<Document> corpus);
  explicit Engine(Snapshot snapshot);

  const std::vector<Document>& corpus() const { return corpus_; }
  const FieldedIndex& index() const { return index_; }

  bool has_entity_field(std::string_view field) const;
  /// Throws std::invalid_argument for a field without postings.
  const EntityPostings& entity_postings(std::string_view field) const;
  std::vector<std::string> entity_fields() const;

  std::vector<Suggestion> suggest(std::string_view field, std::span<const std::string> terms,
                                  const SuggestConfig& config) const;

  struct Expansion {
    std::vector<Suggestion> te;
    std::vector<Suggestion> ae;
    ExpandedQuery query;
    RunConfig effective = RunConfig::kB;  // configuration the query was built for
    bool fell_back = false;               // a required suggestion list was empty
  };

  /// Suggests thesaurus terms and authors for the topic terms and builds the
  /// query for `config`. An expansion whose suggestion list comes back empty is
  /// left out (B+TE+AE may degrade to B+TE, B+AE or B) and `fell_back` is set.
  Expansion expand(const Topic& topic, RunConfig config, const SuggestConfig& suggest) const;

 private:
  void build_postings();

  std::vector<Document> corpus_;
  FieldedIndex index_;
  std::map<std::string, EntityPostings, std::less<>> postings_;
};

}  // namespace polyrep
