#include "polyrep/engine.hpp"

#include <stdexcept>

namespace polyrep {

Engine::Engine(std::vector<Document> corpus)
    : corpus_(std::move(corpus)), index_(FieldedIndex::build(corpus_)) {
  build_postings();
}

Engine::Engine(Snapshot snapshot)
    : corpus_(std::move(snapshot.corpus)), index_(std::move(snapshot.index)) {
  build_postings();
}

void Engine::build_postings() {
  for (const auto field : {field::kAuthor, field::kControlledTerm}) {
    postings_.emplace(std::string(field), build_entity_postings(corpus_, field));
  }
  for (const auto& name : extra_entity_fields(corpus_)) {
    postings_.emplace(name, build_entity_postings(corpus_, name));
  }
}

bool Engine::has_entity_field(std::string_view field) const {
  return postings_.find(field) != postings_.end();
}

const EntityPostings& Engine::entity_postings(std::string_view field) const {
  const auto it = postings_.find(field);
  if (it == postings_.end()) {
    throw std::invalid_argument("no entity field \"" + std::string(field) + "\" in this corpus");
  }
  return it->second;
}

std::vector<std::string> Engine::entity_fields() const {
  std::vector<std::string> out;
  for (const auto& [name, p] : postings_) out.push_back(name);
  return out;
}

std::vector<Suggestion> Engine::suggest(std::string_view field, std::span<const std::string> terms,
                                        const SuggestConfig& config) const {
  return polyrep::suggest(entity_postings(field), terms, config);
}

Engine::Expansion Engine::expand(const Topic& topic, RunConfig config,
                                 const SuggestConfig& suggest_config) const {
  Expansion e;
  if (uses_terms(config)) e.te = suggest(field::kControlledTerm, topic.terms, suggest_config);
  if (uses_authors(config)) e.ae = suggest(field::kAuthor, topic.terms, suggest_config);
  const bool have_te = uses_terms(config) && !e.te.empty();
  const bool have_ae = uses_authors(config) && !e.ae.empty();
  RunConfig& effective = e.effective;
  if (have_te && have_ae) {
    effective = RunConfig::kBTeAe;
  } else if (have_te) {
    effective = RunConfig::kBTe;
  } else if (have_ae) {
    effective = RunConfig::kBAe;
  }
  e.fell_back = effective != config;
  e.query = build_query(topic, e.te, e.ae, effective);
  return e;
}

}  // namespace polyrep
