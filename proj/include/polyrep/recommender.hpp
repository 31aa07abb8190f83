#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polyrep/corpus.hpp"

namespace polyrep {

/// Sorted, duplicate-free set of document numbers (positions in the corpus
/// given to build_entity_postings).
using DocSet = std::vector<std::uint32_t>;

/// |a ∩ b| / |a ∪ b| over sorted sets; 0 when both are empty.
double jaccard(const DocSet& a, const DocSet& b);

/// Documents containing each value of one entity field, alongside the
/// documents containing each title/abstract token.
class EntityPostings {
 public:
  struct Entry {
    std::string display;  // first spelling seen in the corpus
    DocSet docs;
  };

  const std::string& field() const { return field_; }
  /// Keyed by casefolded entity value.
  const std::map<std::string, Entry, std::less<>>& entities() const { return entities_; }
  /// Keyed by token.
  const std::map<std::string, DocSet, std::less<>>& term_postings() const { return terms_; }
  std::size_t doc_count() const { return doc_count_; }

  const DocSet& term_docs(std::string_view token) const;

 private:
  friend EntityPostings build_entity_postings(std::span<const Document>, std::string_view);

  std::string field_;
  std::size_t doc_count_ = 0;
  std::map<std::string, Entry, std::less<>> entities_;
  std::map<std::string, DocSet, std::less<>> terms_;
};

/// `field` is AU, CT, or an extra_entities key present in at least one
/// document. Throws std::invalid_argument for anything else.
EntityPostings build_entity_postings(std::span<const Document> corpus, std::string_view field);

/// The extra entity field names that occur in the corpus, sorted.
std::vector<std::string> extra_entity_fields(std::span<const Document> corpus);

/// How per-term similarities are combined for a multi-term query.
enum class Combine {
  kMeanOfTerms,  // mean over terms of jaccard(term docs, entity docs)
  kTermUnion,    // jaccard(union of term docs, entity docs)
};

struct SuggestConfig {
  std::size_t n = 4;
  double min_score = 0.0;  // exclusive
  Combine combine = Combine::kMeanOfTerms;
};

struct Suggestion {
  std::string entity;
  std::string field;  // AU, CT or an extra field name
  double score = 0.0;

  bool operator==(const Suggestion&) const = default;
};

/// "author", "controlled_term", or the field name itself for extra fields.
std::string kind_label(std::string_view field);
/// Inverse of kind_label; returns the field code.
std::string field_for_kind(std::string_view kind);

/// Top-n entities by descending score, ties by ascending casefolded key.
/// Scores at or below min_score are dropped. Throws std::invalid_argument on
/// an empty query or an invalid config.
std::vector<Suggestion> suggest(const EntityPostings& postings,
                                std::span<const std::string> query_terms,
                                const SuggestConfig& config = {});

}  // namespace polyrep
