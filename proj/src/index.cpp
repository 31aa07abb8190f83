#include "polyrep/index.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace polyrep {

namespace {

void add_keyword_values(FieldedIndex::FieldData& data, const std::vector<std::string>& values,
                        DocOrdinal ordinal) {
  std::set<std::string> keys;
  for (const auto& v : values) {
    auto key = casefold(trim(v));
    if (!key.empty()) keys.insert(std::move(key));
  }
  for (const auto& key : keys) data.postings[key].push_back({ordinal, 1});
}

void add_text(FieldedIndex::FieldData& data, std::string_view text, DocOrdinal ordinal) {
  std::map<std::string, std::uint32_t> counts;
  for (auto& token : tokenize(text)) ++counts[std::move(token)];
  for (const auto& [term, tf] : counts) data.postings[term].push_back({ordinal, tf});
}

}  // namespace

FieldKind field_kind_for(std::string_view field) {
  return (field == field::kTitle || field == field::kAbstract) ? FieldKind::kText
                                                               : FieldKind::kKeyword;
}

FieldedIndex FieldedIndex::build(std::span<const Document> corpus) {
  std::vector<const Document*> sorted;
  sorted.reserve(corpus.size());
  for (const auto& d : corpus) sorted.push_back(&d);
  std::sort(sorted.begin(), sorted.end(),
            [](const Document* a, const Document* b) { return a->doc_id < b->doc_id; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i]->doc_id == sorted[i - 1]->doc_id) {
      throw std::invalid_argument("duplicate doc_id \"" + sorted[i]->doc_id + "\"");
    }
  }

  FieldedIndex index;
  for (const auto name : {field::kTitle, field::kAbstract, field::kControlledTerm, field::kAuthor}) {
    index.fields_[std::string(name)].kind = field_kind_for(name);
  }
  index.docs_.reserve(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const Document& doc = *sorted[i];
    const auto ordinal = static_cast<DocOrdinal>(i);
    index.docs_.push_back({doc.doc_id, doc.title});
    add_text(index.fields_.find(field::kTitle)->second, doc.title, ordinal);
    add_text(index.fields_.find(field::kAbstract)->second, doc.abstract, ordinal);
    add_keyword_values(index.fields_.find(field::kControlledTerm)->second, doc.controlled_terms,
                       ordinal);
    add_keyword_values(index.fields_.find(field::kAuthor)->second, doc.authors, ordinal);
    for (const auto& [name, values] : doc.extra_entities) {
      auto& data = index.fields_[name];
      data.kind = FieldKind::kKeyword;
      add_keyword_values(data, values, ordinal);
    }
  }
  return index;
}

FieldedIndex FieldedIndex::from_parts(std::vector<DocSummary> docs,
                                      std::map<std::string, FieldData, std::less<>> fields) {
  for (std::size_t i = 1; i < docs.size(); ++i) {
    if (!(docs[i - 1].doc_id < docs[i].doc_id)) {
      throw std::invalid_argument("document table not strictly sorted by doc_id");
    }
  }
  for (const auto& [name, data] : fields) {
    if (data.kind != field_kind_for(name)) {
      throw std::invalid_argument("field " + name + " has the wrong kind");
    }
    for (const auto& [term, list] : data.postings) {
      if (term.empty() || list.empty()) {
        throw std::invalid_argument("empty term or postings list in field " + name);
      }
      for (std::size_t i = 0; i < list.size(); ++i) {
        if (list[i].doc >= docs.size() || list[i].tf == 0 ||
            (i > 0 && list[i - 1].doc >= list[i].doc)) {
          throw std::invalid_argument("malformed postings for " + name + ":" + term);
        }
        if (data.kind == FieldKind::kKeyword && list[i].tf != 1) {
          throw std::invalid_argument("keyword postings must have tf 1: " + name + ":" + term);
        }
      }
    }
  }
  FieldedIndex index;
  index.docs_ = std::move(docs);
  index.fields_ = std::move(fields);
  return index;
}

std::span<const Posting> FieldedIndex::postings(std::string_view field,
                                                std::string_view term) const {
  const auto f = fields_.find(field);
  if (f == fields_.end()) return {};
  const auto t = f->second.postings.find(term);
  if (t == f->second.postings.end()) return {};
  return t->second;
}

double FieldedIndex::idf(std::string_view field, std::string_view term) const {
  const auto n = df(field, term);
  if (n == 0) return 0.0;
  return 1.0 + std::log(static_cast<double>(docs_.size()) / static_cast<double>(n));
}

bool FieldedIndex::has_field(std::string_view field) const {
  return fields_.find(field) != fields_.end();
}

FieldKind FieldedIndex::kind(std::string_view field) const {
  const auto f = fields_.find(field);
  return f == fields_.end() ? field_kind_for(field) : f->second.kind;
}

std::vector<std::string> FieldedIndex::field_names() const {
  std::vector<std::string> out;
  for (const auto& [name, data] : fields_) out.push_back(name);
  return out;
}

std::map<std::string, std::vector<std::string>, std::less<>> match_terms(
    std::span<const Clause> clauses) {
  std::map<std::string, std::set<std::string>, std::less<>> sets;
  for (const auto& c : clauses) {
    auto& terms = sets[c.field];
    if (field_kind_for(c.field) == FieldKind::kText) {
      for (auto& t : tokenize(c.value)) terms.insert(std::move(t));
    } else {
      auto key = casefold(trim(c.value));
      if (!key.empty()) terms.insert(std::move(key));
    }
  }
  std::map<std::string, std::vector<std::string>, std::less<>> out;
  for (auto& [field, terms] : sets) out.emplace(field, std::vector<std::string>(terms.begin(), terms.end()));
  return out;
}

Ranking search(const FieldedIndex& index, const ExpandedQuery& query, std::size_t k) {
  if (query.clauses.empty()) throw std::invalid_argument("query has no clauses");
  if (k == 0) throw std::invalid_argument("retrieval depth k must be at least 1");

  std::vector<double> scores(index.doc_count(), 0.0);
  std::vector<bool> matched(index.doc_count(), false);
  for (const auto& [field, terms] : match_terms(query.clauses)) {
    for (const auto& term : terms) {
      const auto list = index.postings(field, term);
      if (list.empty()) continue;
      const double idf = index.idf(field, term);
      for (const auto& p : list) {
        scores[p.doc] += (1.0 + std::log(static_cast<double>(p.tf))) * idf;
        matched[p.doc] = true;
      }
    }
  }

  std::vector<DocOrdinal> hits;
  for (DocOrdinal d = 0; d < matched.size(); ++d) {
    if (matched[d]) hits.push_back(d);
  }
  // Ordinals follow doc_id order, so the ordinal is the tie-breaker.
  const auto better = [&](DocOrdinal a, DocOrdinal b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  };
  const auto keep = std::min(k, hits.size());
  std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(keep), hits.end(),
                    better);

  Ranking ranking;
  ranking.topic_id = query.topic_id;
  ranking.k = k;
  ranking.entries.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) {
    ranking.entries.push_back({index.doc(hits[i]).doc_id, scores[hits[i]]});
  }
  return ranking;
}

void save_snapshot(std::ostream& out, const FieldedIndex& index,
                   const std::vector<Document>& corpus) {
  std::map<std::string_view, const Document*> by_id;
  for (const auto& d : corpus) by_id.emplace(d.doc_id, &d);
  if (by_id.size() != index.doc_count()) {
    throw std::invalid_argument("corpus does not match index document count");
  }

  nlohmann::ordered_json header;
  header["format"] = "polyrep-snapshot";
  header["version"] = kSnapshotVersion;
  header["doc_count"] = index.doc_count();
  header["fields"] = index.field_names();
  out << header.dump() << '\n';

  for (const auto& summary : index.docs()) {
    const auto it = by_id.find(summary.doc_id);
    if (it == by_id.end()) throw std::invalid_argument("corpus lacks doc " + summary.doc_id);
    out << document_to_json_line(*it->second) << '\n';
  }
  for (const auto& [name, data] : index.fields()) {
    for (const auto& [term, list] : data.postings) {
      nlohmann::ordered_json line;
      line["field"] = name;
      line["term"] = term;
      auto& arr = line["postings"] = nlohmann::ordered_json::array();
      for (const auto& p : list) arr.push_back({p.doc, p.tf});
      out << line.dump() << '\n';
    }
  }
}

Snapshot load_snapshot(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError(source, 0, "empty snapshot");
  std::size_t doc_count = 0;
  std::map<std::string, FieldedIndex::FieldData, std::less<>> fields;
  try {
    const auto header = nlohmann::json::parse(line);
    if (header.value("format", "") != "polyrep-snapshot") {
      throw std::invalid_argument("not a polyrep snapshot");
    }
    const int version = header.value("version", -1);
    if (version != kSnapshotVersion) {
      throw std::invalid_argument("unsupported snapshot version " + std::to_string(version));
    }
    doc_count = header.at("doc_count").get<std::size_t>();
    for (const auto& name : header.at("fields")) {
      const auto n = name.get<std::string>();
      fields[n].kind = field_kind_for(n);
    }
  } catch (const std::exception& e) {
    throw ParseError(source, line_no, e.what());
  }

  Snapshot snap;
  std::vector<FieldedIndex::DocSummary> docs;
  while (docs.size() < doc_count && std::getline(in, line)) {
    ++line_no;
    try {
      auto doc = document_from_json_line(line);
      docs.push_back({doc.doc_id, doc.title});
      snap.corpus.push_back(std::move(doc));
    } catch (const std::invalid_argument& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  if (docs.size() != doc_count) throw ParseError(source, line_no, "truncated document section");

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      const auto name = j.at("field").get<std::string>();
      const auto f = fields.find(name);
      if (f == fields.end()) throw std::invalid_argument("undeclared field " + name);
      auto& list = f->second.postings[j.at("term").get<std::string>()];
      if (!list.empty()) throw std::invalid_argument("repeated postings line");
      for (const auto& p : j.at("postings")) {
        list.push_back({p.at(0).get<DocOrdinal>(), p.at(1).get<std::uint32_t>()});
      }
    } catch (const std::exception& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  try {
    snap.index = FieldedIndex::from_parts(std::move(docs), std::move(fields));
  } catch (const std::invalid_argument& e) {
    throw ParseError(source, 0, e.what());
  }
  return snap;
}

Snapshot load_snapshot_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open snapshot file");
  return load_snapshot(in, path);
}

}  // namespace polyrep
