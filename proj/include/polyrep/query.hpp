#pragma once

#include <string>
#include <vector>

namespace polyrep {

/// One disjunct of a fielded query. For text fields (TI, AB) the value is
/// tokenized at match time, so a multi-word value ORs its tokens. For keyword
/// fields the casefolded value must equal the stored entity string.
struct Clause {
  std::string field;
  std::string value;

  bool operator==(const Clause&) const = default;
  auto operator<=>(const Clause&) const = default;
};

struct ExpandedQuery {
  std::string topic_id;
  std::vector<std::string> base_terms;
  std::vector<std::string> te_terms;  // controlled terms used by the expansion
  std::vector<std::string> ae_names;  // author names used by the expansion
  std::vector<Clause> clauses;

  bool operator==(const ExpandedQuery&) const = default;
};

}  // namespace polyrep
