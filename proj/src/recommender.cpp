#include "polyrep/recommender.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace polyrep {

namespace {

std::size_t intersection_size(const DocSet& a, const DocSet& b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n, ++i, ++j;
    }
  }
  return n;
}

const std::vector<std::string>* entity_values(const Document& doc, std::string_view field) {
  if (field == field::kAuthor) return &doc.authors;
  if (field == field::kControlledTerm) return &doc.controlled_terms;
  const auto it = doc.extra_entities.find(std::string(field));
  return it == doc.extra_entities.end() ? nullptr : &it->second;
}

const DocSet kEmpty;

}  // namespace

double jaccard(const DocSet& a, const DocSet& b) {
  if (a.empty() && b.empty()) return 0.0;
  const auto inter = intersection_size(a, b);
  const auto uni = a.size() + b.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

const DocSet& EntityPostings::term_docs(std::string_view token) const {
  const auto it = terms_.find(token);
  return it == terms_.end() ? kEmpty : it->second;
}

std::vector<std::string> extra_entity_fields(std::span<const Document> corpus) {
  std::set<std::string> names;
  for (const auto& d : corpus) {
    for (const auto& [name, values] : d.extra_entities) {
      if (!values.empty()) names.insert(name);
    }
  }
  return {names.begin(), names.end()};
}

EntityPostings build_entity_postings(std::span<const Document> corpus, std::string_view field) {
  if (field != field::kAuthor && field != field::kControlledTerm) {
    const auto extras = extra_entity_fields(corpus);
    if (!std::binary_search(extras.begin(), extras.end(), std::string(field))) {
      throw std::invalid_argument("unknown entity field \"" + std::string(field) + "\"");
    }
  }
  EntityPostings out;
  out.field_ = std::string(field);
  out.doc_count_ = corpus.size();
  // Documents are visited in order, so every push_back keeps the sets sorted;
  // the back() checks collapse repeats within one document.
  for (std::uint32_t d = 0; d < corpus.size(); ++d) {
    const Document& doc = corpus[d];
    if (const auto* values = entity_values(doc, field)) {
      for (const auto& raw : *values) {
        const auto display = trim(raw);
        auto key = casefold(display);
        if (key.empty()) continue;
        auto [it, inserted] = out.entities_.try_emplace(std::move(key));
        if (inserted) it->second.display = std::string(display);
        auto& docs = it->second.docs;
        if (docs.empty() || docs.back() != d) docs.push_back(d);
      }
    }
    for (const auto* text : {&doc.title, &doc.abstract}) {
      for (auto& token : tokenize(*text)) {
        auto& docs = out.terms_[std::move(token)];
        if (docs.empty() || docs.back() != d) docs.push_back(d);
      }
    }
  }
  return out;
}

std::string kind_label(std::string_view field) {
  if (field == field::kAuthor) return "author";
  if (field == field::kControlledTerm) return "controlled_term";
  return std::string(field);
}

std::string field_for_kind(std::string_view kind) {
  if (kind == "author") return std::string(field::kAuthor);
  if (kind == "controlled_term") return std::string(field::kControlledTerm);
  return std::string(kind);
}

std::vector<Suggestion> suggest(const EntityPostings& postings,
                                std::span<const std::string> query_terms,
                                const SuggestConfig& config) {
  if (query_terms.empty()) throw std::invalid_argument("suggest needs at least one query term");
  if (config.n == 0) throw std::invalid_argument("suggestion count n must be at least 1");
  if (!(config.min_score >= 0.0 && config.min_score < 1.0)) {
    throw std::invalid_argument("min_score must lie in [0, 1)");
  }

  // Summing in sorted order makes the mean independent of query term order.
  std::vector<std::string> terms(query_terms.begin(), query_terms.end());
  std::sort(terms.begin(), terms.end());
  std::vector<const DocSet*> term_sets;
  for (const auto& t : terms) term_sets.push_back(&postings.term_docs(t));

  DocSet term_union;
  if (config.combine == Combine::kTermUnion) {
    std::set<std::uint32_t> u;
    for (const auto* s : term_sets) u.insert(s->begin(), s->end());
    term_union.assign(u.begin(), u.end());
  }

  struct Scored {
    const std::string* key;
    const EntityPostings::Entry* entry;
    double score;
  };
  std::vector<Scored> scored;
  for (const auto& [key, entry] : postings.entities()) {
    double score = 0.0;
    if (config.combine == Combine::kMeanOfTerms) {
      double sum = 0.0;
      for (const auto* s : term_sets) sum += jaccard(*s, entry.docs);
      score = sum / static_cast<double>(term_sets.size());
    } else {
      score = jaccard(term_union, entry.docs);
    }
    if (score > config.min_score) scored.push_back({&key, &entry, score});
  }

  const auto better = [](const Scored& a, const Scored& b) {
    if (a.score != b.score) return a.score > b.score;
    return *a.key < *b.key;
  };
  const auto keep = std::min(config.n, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep),
                    scored.end(), better);

  std::vector<Suggestion> out;
  out.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) {
    out.push_back({scored[i].entry->display, postings.field(), scored[i].score});
  }
  return out;
}

}  // namespace polyrep
