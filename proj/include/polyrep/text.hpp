#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace polyrep {

/// Splits UTF-8 text on non-alphanumeric boundaries and lowercases each
/// token. Letters outside ASCII (umlauts, accented Latin, Greek, Cyrillic,
/// CJK, ...) count as alphanumeric and keep their diacritics. Invalid UTF-8
/// bytes act as separators, so the function is total.
std::vector<std::string> tokenize(std::string_view text);

/// Lowercases a whole UTF-8 string without splitting it. Used as the match
/// key for keyword fields (authors, controlled terms, extra entities).
std::string casefold(std::string_view text);

/// Trims ASCII whitespace from both ends.
std::string_view trim(std::string_view text);

class Stoplist {
 public:
  Stoplist() = default;
  explicit Stoplist(const std::vector<std::string>& words, std::string source = "inline");

  /// The built-in English list shipped with the project.
  static Stoplist default_english();

  /// One word per line; blank lines and lines starting with '#' are ignored.
  static Stoplist from_stream(std::istream& in, std::string source);
  static Stoplist from_file(const std::string& path);

  bool contains(std::string_view token) const;
  std::size_t size() const { return words_.size(); }

  /// Where the list came from ("builtin:en" or a file path); recorded in run metadata.
  const std::string& source() const { return source_; }

  /// Sorted words, for metadata and hashing.
  std::vector<std::string> sorted_words() const;

 private:
  std::unordered_set<std::string> words_;
  std::string source_ = "empty";
};

/// Order-preserving filter.
std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const Stoplist& stoplist);

}  // namespace polyrep
