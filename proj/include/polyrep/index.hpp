#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polyrep/corpus.hpp"
#include "polyrep/query.hpp"

namespace polyrep {

/// Dense document number. Ordinals follow ascending doc_id, so sorting
/// postings by ordinal sorts them by doc_id.
using DocOrdinal = std::uint32_t;

struct Posting {
  DocOrdinal doc;
  std::uint32_t tf;

  bool operator==(const Posting&) const = default;
};

enum class FieldKind { kText, kKeyword };

struct RankedDoc {
  std::string doc_id;
  double score = 0.0;

  bool operator==(const RankedDoc&) const = default;
};

/// Scores are non-increasing, ties by ascending doc_id, no doc twice, size <= k.
struct Ranking {
  std::string topic_id;
  std::vector<RankedDoc> entries;
  std::size_t k = 0;

  bool operator==(const Ranking&) const = default;
};

/// Default retrieval depth, as used by trec_eval-style experiments.
inline constexpr std::size_t kDefaultDepth = 1000;

/// Read-only inverted index over TI and AB (tokenized text) and CT, AU and any
/// extra entity field (whole casefolded values, tf = 1).
class FieldedIndex {
 public:
  struct FieldData {
    FieldKind kind = FieldKind::kText;
    std::map<std::string, std::vector<Posting>, std::less<>> postings;

    bool operator==(const FieldData&) const = default;
  };

  struct DocSummary {
    std::string doc_id;
    std::string title;

    bool operator==(const DocSummary&) const = default;
  };

  static FieldedIndex build(std::span<const Document> corpus);

  /// Assembles an index from already-computed parts and checks every
  /// structural invariant. Throws std::invalid_argument on violation.
  static FieldedIndex from_parts(std::vector<DocSummary> docs,
                                 std::map<std::string, FieldData, std::less<>> fields);

  std::size_t doc_count() const { return docs_.size(); }
  std::span<const Posting> postings(std::string_view field, std::string_view term) const;
  std::size_t df(std::string_view field, std::string_view term) const {
    return postings(field, term).size();
  }

  /// 1 + ln(N / df), or 0 when the term is absent.
  double idf(std::string_view field, std::string_view term) const;

  bool has_field(std::string_view field) const;
  FieldKind kind(std::string_view field) const;
  std::vector<std::string> field_names() const;

  const DocSummary& doc(DocOrdinal ordinal) const { return docs_.at(ordinal); }
  const std::vector<DocSummary>& docs() const { return docs_; }
  const std::map<std::string, FieldData, std::less<>>& fields() const { return fields_; }

  bool operator==(const FieldedIndex&) const = default;

 private:
  std::vector<DocSummary> docs_;
  std::map<std::string, FieldData, std::less<>> fields_;
};

/// Kind implied by a field name: TI and AB are text, everything else keyword.
FieldKind field_kind_for(std::string_view field);

/// The distinct match keys a clause set produces for each field: token sets
/// for text fields, casefolded values for keyword fields.
std::map<std::string, std::vector<std::string>, std::less<>> match_terms(
    std::span<const Clause> clauses);

/// Disjunctive TF*IDF retrieval: score(d) = sum over matched (field, term) of
/// (1 + ln tf) * idf. Documents matching nothing are left out.
/// Throws std::invalid_argument if the clause list is empty or k == 0.
Ranking search(const FieldedIndex& index, const ExpandedQuery& query,
               std::size_t k = kDefaultDepth);

/// Versioned line-delimited snapshot: a header line, one line per document,
/// then one line per (field, term) postings list.
void save_snapshot(std::ostream& out, const FieldedIndex& index,
                   const std::vector<Document>& corpus);

struct Snapshot {
  std::vector<Document> corpus;
  FieldedIndex index;
};

inline constexpr int kSnapshotVersion = 1;

Snapshot load_snapshot(std::istream& in, const std::string& source = "snapshot");
Snapshot load_snapshot_file(const std::string& path);

}  // namespace polyrep
