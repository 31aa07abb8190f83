#include "polyrep/corpus.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace polyrep {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string format_parse_message(const std::string& source, std::size_t line,
                                 const std::string& message) {
  if (line == 0) return source + ": " + message;
  return source + ":" + std::to_string(line) + ": " + message;
}

std::vector<std::string> string_array(const nlohmann::json& obj, const char* key) {
  std::vector<std::string> out;
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return out;
  if (!it->is_array()) throw std::invalid_argument(std::string("\"") + key + "\" must be an array");
  for (const auto& v : *it) {
    if (!v.is_string()) {
      throw std::invalid_argument(std::string("\"") + key + "\" must contain only strings");
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::string string_field(const nlohmann::json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return {};
  if (!it->is_string()) throw std::invalid_argument(std::string("\"") + key + "\" must be a string");
  return it->get<std::string>();
}

std::ifstream open_or_throw(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, std::string("cannot open ") + what + " file");
  return in;
}

}  // namespace

ParseError::ParseError(std::string source, std::size_t line, const std::string& message)
    : std::runtime_error(format_parse_message(source, line, message)),
      source_(std::move(source)),
      line_(line) {}

void Qrels::add(const std::string& topic_id, const std::string& doc_id, int grade) {
  if (grade < 0) throw std::invalid_argument("negative relevance grade");
  auto& per_topic = judgments_[topic_id];
  if (!per_topic.emplace(doc_id, grade).second) {
    throw std::invalid_argument("duplicate judgment for topic " + topic_id + ", doc " + doc_id);
  }
}

int Qrels::grade(std::string_view topic_id, std::string_view doc_id) const {
  const auto t = judgments_.find(topic_id);
  if (t == judgments_.end()) return 0;
  const auto d = t->second.find(doc_id);
  return d == t->second.end() ? 0 : d->second;
}

bool Qrels::has_topic(std::string_view topic_id) const {
  return judgments_.find(topic_id) != judgments_.end();
}

std::size_t Qrels::relevant_count(std::string_view topic_id) const {
  const auto t = judgments_.find(topic_id);
  if (t == judgments_.end()) return 0;
  std::size_t n = 0;
  for (const auto& [doc, grade] : t->second) {
    if (grade > 0) ++n;
  }
  return n;
}

std::vector<std::string> Qrels::topics() const {
  std::vector<std::string> out;
  out.reserve(judgments_.size());
  for (const auto& [topic, docs] : judgments_) out.push_back(topic);
  return out;
}

std::size_t Qrels::size() const {
  std::size_t n = 0;
  for (const auto& [topic, docs] : judgments_) n += docs.size();
  return n;
}

std::vector<std::string> canonical_entity_list(const std::vector<std::string>& values) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& raw : values) {
    const auto value = trim(raw);
    if (value.empty()) continue;
    if (seen.insert(casefold(value)).second) out.emplace_back(value);
  }
  return out;
}

std::string document_to_json_line(const Document& doc) {
  ordered_json j;
  j["doc_id"] = doc.doc_id;
  j["title"] = doc.title;
  j["abstract"] = doc.abstract;
  j["controlled_terms"] = doc.controlled_terms;
  j["authors"] = doc.authors;
  if (!doc.extra_entities.empty()) {
    ordered_json extra = ordered_json::object();
    for (const auto& [name, values] : doc.extra_entities) extra[name] = values;
    j["extra_entities"] = std::move(extra);
  }
  return j.dump();
}

Document document_from_json_line(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("record is not a JSON object");
  Document doc;
  doc.doc_id = std::string(trim(string_field(j, "doc_id")));
  if (doc.doc_id.empty()) throw std::invalid_argument("missing or empty \"doc_id\"");
  doc.title = string_field(j, "title");
  doc.abstract = string_field(j, "abstract");
  doc.controlled_terms = canonical_entity_list(string_array(j, "controlled_terms"));
  doc.authors = canonical_entity_list(string_array(j, "authors"));
  if (const auto it = j.find("extra_entities"); it != j.end() && !it->is_null()) {
    if (!it->is_object()) throw std::invalid_argument("\"extra_entities\" must be an object");
    for (const auto& [name, values] : it->items()) {
      if (name.empty()) throw std::invalid_argument("empty extra entity field name");
      if (name == field::kTitle || name == field::kAbstract || name == field::kControlledTerm ||
          name == field::kAuthor) {
        throw std::invalid_argument("extra entity field \"" + name + "\" shadows a core field");
      }
      auto list = canonical_entity_list(string_array(*it, name.c_str()));
      if (!list.empty()) doc.extra_entities.emplace(name, std::move(list));
    }
  }
  return doc;
}

std::vector<Document> load_corpus(std::istream& in, const std::string& source) {
  std::vector<Document> docs;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    Document doc;
    try {
      doc = document_from_json_line(line);
    } catch (const std::invalid_argument& e) {
      throw ParseError(source, line_no, e.what());
    }
    if (!ids.insert(doc.doc_id).second) {
      throw ParseError(source, line_no, "duplicate doc_id \"" + doc.doc_id + "\"");
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<Document> load_corpus_file(const std::string& path) {
  auto in = open_or_throw(path, "corpus");
  return load_corpus(in, path);
}

void write_corpus(std::ostream& out, const std::vector<Document>& docs) {
  for (const auto& doc : docs) out << document_to_json_line(doc) << '\n';
}

std::vector<Topic> load_topics(std::istream& in, const Stoplist& stoplist,
                               const std::string& source) {
  std::vector<Topic> topics;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError(source, line_no, "expected topic_id<TAB>text");
    Topic topic;
    topic.topic_id = std::string(trim(std::string_view(line).substr(0, tab)));
    topic.title = std::string(trim(std::string_view(line).substr(tab + 1)));
    if (topic.topic_id.empty()) throw ParseError(source, line_no, "empty topic_id");
    if (!ids.insert(topic.topic_id).second) {
      throw ParseError(source, line_no, "duplicate topic_id \"" + topic.topic_id + "\"");
    }
    topic.terms = remove_stopwords(tokenize(topic.title), stoplist);
    if (topic.terms.empty()) {
      throw ParseError(source, line_no,
                       "topic " + topic.topic_id + " has no terms after stopword removal");
    }
    topics.push_back(std::move(topic));
  }
  return topics;
}

std::vector<Topic> load_topics_file(const std::string& path, const Stoplist& stoplist) {
  auto in = open_or_throw(path, "topics");
  return load_topics(in, stoplist, path);
}

void write_topics(std::ostream& out, const std::vector<Topic>& topics) {
  for (const auto& t : topics) out << t.topic_id << '\t' << t.title << '\n';
}

Qrels load_qrels(std::istream& in, const std::string& source) {
  Qrels qrels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<std::string> parts;
    for (std::string f; fields >> f;) parts.push_back(std::move(f));
    if (parts.empty()) continue;
    if (parts.size() != 4) {
      throw ParseError(source, line_no,
                       "expected 4 fields (topic iter doc grade), got " +
                           std::to_string(parts.size()));
    }
    int grade = 0;
    const auto& g = parts[3];
    const auto [ptr, ec] = std::from_chars(g.data(), g.data() + g.size(), grade);
    if (ec != std::errc() || ptr != g.data() + g.size()) {
      throw ParseError(source, line_no, "grade \"" + g + "\" is not an integer");
    }
    try {
      qrels.add(parts[0], parts[2], grade);
    } catch (const std::invalid_argument& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  return qrels;
}

Qrels load_qrels_file(const std::string& path) {
  auto in = open_or_throw(path, "qrels");
  return load_qrels(in, path);
}

void write_qrels(std::ostream& out, const Qrels& qrels) {
  for (const auto& [topic, docs] : qrels.judgments()) {
    for (const auto& [doc, grade] : docs) out << topic << " 0 " << doc << ' ' << grade << '\n';
  }
}

}  // namespace polyrep
