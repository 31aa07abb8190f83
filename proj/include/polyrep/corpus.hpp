#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "polyrep/text.hpp"

namespace polyrep {

/// Field codes used throughout the index, recommender and query renderer.
namespace field {
inline constexpr std::string_view kTitle = "TI";
inline constexpr std::string_view kAbstract = "AB";
inline constexpr std::string_view kControlledTerm = "CT";
inline constexpr std::string_view kAuthor = "AU";
}  // namespace field

/// A loader failure. `line()` is 1-based, or 0 when the error is not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& message);
  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

struct Document {
  std::string doc_id;
  std::string title;
  std::string abstract;
  std::vector<std::string> controlled_terms;
  std::vector<std::string> authors;  // "Lastname, Firstname", matched as opaque strings
  std::map<std::string, std::vector<std::string>> extra_entities;  // journal, affiliation, ...

  bool operator==(const Document&) const = default;
};

struct Topic {
  std::string topic_id;
  std::string title;               // raw text as read from the topics file
  std::vector<std::string> terms;  // tokenized, stopwords removed

  bool operator==(const Topic&) const = default;
};

/// Relevance judgments. Unjudged pairs are non-relevant; grade > 0 is relevant.
class Qrels {
 public:
  /// Throws std::invalid_argument on a negative grade or a repeated (topic, doc) pair.
  void add(const std::string& topic_id, const std::string& doc_id, int grade);

  int grade(std::string_view topic_id, std::string_view doc_id) const;
  bool is_relevant(std::string_view topic_id, std::string_view doc_id) const {
    return grade(topic_id, doc_id) > 0;
  }
  bool has_topic(std::string_view topic_id) const;
  std::size_t relevant_count(std::string_view topic_id) const;
  std::vector<std::string> topics() const;
  std::size_t size() const;

  const std::map<std::string, std::map<std::string, int, std::less<>>, std::less<>>& judgments()
      const {
    return judgments_;
  }

 private:
  std::map<std::string, std::map<std::string, int, std::less<>>, std::less<>> judgments_;
};

/// Drops blank entries and repeats (compared after casefold), keeping the first spelling.
std::vector<std::string> canonical_entity_list(const std::vector<std::string>& values);

/// One JSON object per line. Blank lines are skipped.
std::vector<Document> load_corpus(std::istream& in, const std::string& source = "corpus");
std::vector<Document> load_corpus_file(const std::string& path);
void write_corpus(std::ostream& out, const std::vector<Document>& docs);

/// Serializes one document as a single JSON line (no trailing newline).
std::string document_to_json_line(const Document& doc);
/// Parses one record; throws std::invalid_argument with a description on bad input.
Document document_from_json_line(std::string_view line);

/// `topic_id<TAB>raw title` per line. Title text is tokenized and stopword-filtered.
std::vector<Topic> load_topics(std::istream& in, const Stoplist& stoplist,
                               const std::string& source = "topics");
std::vector<Topic> load_topics_file(const std::string& path, const Stoplist& stoplist);
void write_topics(std::ostream& out, const std::vector<Topic>& topics);

/// trec_eval qrels: `topic_id iter doc_id grade`.
Qrels load_qrels(std::istream& in, const std::string& source = "qrels");
Qrels load_qrels_file(const std::string& path);
void write_qrels(std::ostream& out, const Qrels& qrels);

}  // namespace polyrep
