#include "polyrep/expansion.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace polyrep {

namespace {

class ClauseSet {
 public:
  void add(std::string_view field, const std::string& value) {
    const auto stripped = trim(value);
    if (stripped.empty()) return;
    if (seen_.emplace(std::string(field), casefold(stripped)).second) {
      clauses_.push_back({std::string(field), std::string(stripped)});
    }
  }
  void add_text(const std::vector<std::string>& values) {
    for (const auto& v : values) add(field::kTitle, v), add(field::kAbstract, v);
  }
  void add_keyword(std::string_view field, const std::vector<std::string>& values) {
    for (const auto& v : values) add(field, v);
  }
  std::vector<Clause> take() { return std::move(clauses_); }

 private:
  std::set<std::pair<std::string, std::string>> seen_;
  std::vector<Clause> clauses_;
};

std::vector<std::string> unique_values(std::span<const std::string> values) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& v : values) {
    const auto stripped = trim(v);
    if (!stripped.empty() && seen.insert(casefold(stripped)).second) out.emplace_back(stripped);
  }
  return out;
}

bool needs_quotes(std::string_view value) {
  const auto tokens = tokenize(value);
  return tokens.size() != 1 || tokens.front() != value;
}

std::string render_value(std::string_view value) {
  if (!needs_quotes(value)) return std::string(value);
  std::string out = "\"";
  for (const char c : value) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string render_group(std::string_view label, std::vector<std::string> values) {
  std::sort(values.begin(), values.end());
  std::string line(label);
  line += " = (";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) line += " OR ";
    line += render_value(values[i]);
  }
  line += ")";
  return line;
}

int group_rank(std::string_view field) {
  if (field == field::kTitle) return 0;
  if (field == field::kAbstract) return 1;
  if (field == field::kControlledTerm) return 2;
  if (field == field::kAuthor) return 3;
  return 4;
}

}  // namespace

std::string_view to_string(RunConfig config) {
  switch (config) {
    case RunConfig::kB:
      return "b";
    case RunConfig::kBTe:
      return "b+te";
    case RunConfig::kBAe:
      return "b+ae";
    case RunConfig::kBTeAe:
      return "b+te+ae";
  }
  return "b";
}

std::string_view display_name(RunConfig config) {
  switch (config) {
    case RunConfig::kB:
      return "B";
    case RunConfig::kBTe:
      return "B+TE";
    case RunConfig::kBAe:
      return "B+AE";
    case RunConfig::kBTeAe:
      return "B+TE+AE";
  }
  return "B";
}

std::optional<RunConfig> parse_run_config(std::string_view text) {
  const auto key = casefold(trim(text));
  for (const auto c : kAllRunConfigs) {
    if (key == to_string(c)) return c;
  }
  return std::nullopt;
}

bool uses_terms(RunConfig config) {
  return config == RunConfig::kBTe || config == RunConfig::kBTeAe;
}

bool uses_authors(RunConfig config) {
  return config == RunConfig::kBAe || config == RunConfig::kBTeAe;
}

ExpandedQuery build_query(const Topic& topic, std::span<const std::string> te_terms,
                          std::span<const std::string> ae_names, RunConfig config) {
  ExpandedQuery q;
  q.topic_id = topic.topic_id;
  q.base_terms = unique_values(topic.terms);
  if (q.base_terms.empty()) throw std::invalid_argument("topic " + topic.topic_id + " has no terms");

  if (uses_terms(config)) {
    q.te_terms = unique_values(te_terms);
    if (q.te_terms.empty()) {
      throw MissingExpansionError(std::string(display_name(config)) +
                                  " requires thesaurus term expansions, none given");
    }
  }
  if (uses_authors(config)) {
    q.ae_names = unique_values(ae_names);
    if (q.ae_names.empty()) {
      throw MissingExpansionError(std::string(display_name(config)) +
                                  " requires author name expansions, none given");
    }
  }

  ClauseSet clauses;
  if (uses_terms(config)) {
    auto values = q.base_terms;
    values.insert(values.end(), q.te_terms.begin(), q.te_terms.end());
    clauses.add_text(values);
    clauses.add_keyword(field::kControlledTerm, values);
  } else {
    clauses.add_text(q.base_terms);
  }
  if (uses_authors(config)) clauses.add_keyword(field::kAuthor, q.ae_names);
  q.clauses = clauses.take();
  return q;
}

ExpandedQuery build_query(const Topic& topic, std::span<const Suggestion> te,
                          std::span<const Suggestion> ae, RunConfig config) {
  std::vector<std::string> te_terms;
  std::vector<std::string> ae_names;
  for (const auto& s : te) {
    if (s.field != field::kControlledTerm) {
      throw std::invalid_argument("thesaurus expansion list holds a " + kind_label(s.field) +
                                  " suggestion");
    }
    te_terms.push_back(s.entity);
  }
  for (const auto& s : ae) {
    if (s.field != field::kAuthor) {
      throw std::invalid_argument("author expansion list holds a " + kind_label(s.field) +
                                  " suggestion");
    }
    ae_names.push_back(s.entity);
  }
  return build_query(topic, te_terms, ae_names, config);
}

std::string render_query(const ExpandedQuery& query) {
  std::map<std::string, std::vector<std::string>> groups;
  for (const auto& c : query.clauses) groups[c.field].push_back(c.value);

  std::vector<std::pair<std::string, std::vector<std::string>>> ordered(groups.begin(),
                                                                        groups.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    return group_rank(a.first) < group_rank(b.first);
  });

  const auto sorted_copy = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  const auto ti = groups.find(std::string(field::kTitle));
  const auto ab = groups.find(std::string(field::kAbstract));
  const bool merge_text = ti != groups.end() && ab != groups.end() &&
                          sorted_copy(ti->second) == sorted_copy(ab->second);

  std::vector<std::string> lines;
  for (const auto& [name, values] : ordered) {
    if (merge_text && name == field::kAbstract) continue;
    const std::string label = (merge_text && name == field::kTitle) ? "TI/AB" : name;
    lines.push_back(render_group(label, values));
  }

  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i > 0) out += "\nOR ";
    out += lines[i];
  }
  return out;
}

}  // namespace polyrep
