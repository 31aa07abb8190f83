#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polyrep/corpus.hpp"
#include "polyrep/query.hpp"
#include "polyrep/recommender.hpp"

namespace polyrep {

/// The four query configurations: baseline, + thesaurus terms, + author
/// names, + both.
enum class RunConfig { kB, kBTe, kBAe, kBTeAe };

inline constexpr std::array kAllRunConfigs = {RunConfig::kB, RunConfig::kBTe, RunConfig::kBAe,
                                              RunConfig::kBTeAe};

/// "b", "b+te", "b+ae", "b+te+ae".
std::string_view to_string(RunConfig config);
/// "B", "B+TE", "B+AE", "B+TE+AE".
std::string_view display_name(RunConfig config);
std::optional<RunConfig> parse_run_config(std::string_view text);

bool uses_terms(RunConfig config);
bool uses_authors(RunConfig config);

/// Thrown when a configuration needs an expansion list that is empty.
class MissingExpansionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Builds the fielded disjunction for `config`:
///   B        TI/AB over the base terms
///   B+TE     TI/AB and CT over base terms plus thesaurus terms
///   B+AE     B plus AU over the author names
///   B+TE+AE  union of B+TE and B+AE
/// TI/AB means one TI and one AB clause per value. Expansion strings are used
/// verbatim. Repeated values (after casefold) are dropped.
ExpandedQuery build_query(const Topic& topic, std::span<const std::string> te_terms,
                          std::span<const std::string> ae_names, RunConfig config);

/// Same, from recommender output. Throws std::invalid_argument if `te` holds
/// anything but controlled-term suggestions or `ae` anything but authors.
ExpandedQuery build_query(const Topic& topic, std::span<const Suggestion> te,
                          std::span<const Suggestion> ae, RunConfig config);

/// One line per field group, values sorted bytewise, multi-word values quoted:
///   TI/AB = (health OR retirement)
///   OR CT = (health OR retirement)
///   OR AU = ("Gerhard Bäcker")
/// TI and AB share a line when their value sets agree. No trailing newline.
std::string render_query(const ExpandedQuery& query);

}  // namespace polyrep
