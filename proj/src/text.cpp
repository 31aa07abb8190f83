#include "polyrep/text.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <istream>
#include <stdexcept>

namespace polyrep {

namespace {

constexpr char32_t kInvalid = 0xFFFFFFFF;

// Decodes one code point starting at text[pos] and advances pos. Overlong
// forms, surrogates and truncated sequences decode as kInvalid (one byte).
char32_t decode_utf8(std::string_view text, std::size_t& pos) {
  const auto lead = static_cast<unsigned char>(text[pos]);
  if (lead < 0x80) {
    ++pos;
    return lead;
  }
  std::size_t len = 0;
  char32_t cp = 0;
  char32_t min = 0;
  if ((lead & 0xE0) == 0xC0) {
    len = 2, cp = lead & 0x1F, min = 0x80;
  } else if ((lead & 0xF0) == 0xE0) {
    len = 3, cp = lead & 0x0F, min = 0x800;
  } else if ((lead & 0xF8) == 0xF0) {
    len = 4, cp = lead & 0x07, min = 0x10000;
  } else {
    ++pos;
    return kInvalid;
  }
  if (pos + len > text.size()) {
    ++pos;
    return kInvalid;
  }
  for (std::size_t i = 1; i < len; ++i) {
    const auto cont = static_cast<unsigned char>(text[pos + i]);
    if ((cont & 0xC0) != 0x80) {
      ++pos;
      return kInvalid;
    }
    cp = (cp << 6) | (cont & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    ++pos;
    return kInvalid;
  }
  pos += len;
  return cp;
}

void encode_utf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Punctuation, symbol and space blocks. Everything else above ASCII is
// treated as part of a word.
bool is_word_char(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
  }
  if (cp == kInvalid) return false;
  if (cp <= 0xBF) return cp == 0xAA || cp == 0xB5 || cp == 0xBA;
  if (cp == 0xD7 || cp == 0xF7) return false;
  if (cp >= 0x2000 && cp <= 0x2BFF) return false;  // general punctuation .. misc symbols
  if (cp >= 0x2E00 && cp <= 0x2E7F) return false;  // supplemental punctuation
  if (cp >= 0x3000 && cp <= 0x303F) return false;  // CJK symbols and punctuation
  if (cp >= 0xFE10 && cp <= 0xFE6F) return false;  // vertical/small forms
  if (cp >= 0xFF00 && cp <= 0xFF0F) return false;  // fullwidth punctuation
  if (cp >= 0xFF1A && cp <= 0xFF20) return false;
  if (cp >= 0xFF3B && cp <= 0xFF40) return false;
  if (cp >= 0xFF5B && cp <= 0xFF65) return false;
  if (cp == 0xFEFF || cp == 0xFFFD) return false;
  if (cp >= 0x1F000 && cp <= 0x1FAFF) return false;  // emoji and pictographs
  return true;
}

// Simple one-to-one lowercase mapping for Latin-1, Latin Extended-A, Greek
// and Cyrillic. Other scripts pass through unchanged.
char32_t to_lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  if (cp < 0xC0) return cp;
  if (cp <= 0xDE) return cp == 0xD7 ? cp : cp + 32;
  if (cp >= 0x100 && cp <= 0x17F) {
    if (cp == 0x130) return 'i';
    if (cp == 0x178) return 0xFF;
    if ((cp <= 0x137) || (cp >= 0x14A && cp <= 0x177)) return (cp % 2 == 0) ? cp + 1 : cp;
    if ((cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E)) {
      return (cp % 2 == 1) ? cp + 1 : cp;
    }
    return cp;
  }
  if (cp == 0x386) return 0x3AC;
  if (cp >= 0x388 && cp <= 0x38A) return cp + 37;
  if (cp == 0x38C) return 0x3CC;
  if (cp == 0x38E || cp == 0x38F) return cp + 63;
  if (cp >= 0x391 && cp <= 0x3AB && cp != 0x3A2) return cp + 32;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 80;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 32;
  return cp;
}

constexpr std::array kEnglishStopwords = {
    "a",       "about",   "above",  "after",   "again",  "against", "all",   "also",
    "am",      "an",      "and",    "any",     "are",    "as",      "at",    "be",
    "because", "been",    "before", "being",   "below",  "between", "both",  "but",
    "by",      "can",     "could",  "did",     "do",     "does",    "doing", "down",
    "during",  "each",    "few",    "for",     "from",   "further", "had",   "has",
    "have",    "having",  "he",     "her",     "here",   "hers",    "him",   "his",
    "how",     "i",       "if",     "in",      "into",   "is",      "it",    "its",
    "itself",  "me",      "more",   "most",    "my",     "no",      "nor",   "not",
    "of",      "off",     "on",     "once",    "only",   "or",      "other", "our",
    "ours",    "out",     "over",   "own",     "same",   "she",     "should", "so",
    "some",    "such",    "than",   "that",    "the",    "their",   "theirs", "them",
    "then",    "there",   "these",  "they",    "this",   "those",   "through", "to",
    "too",     "under",   "until",  "up",      "very",   "was",     "we",    "were",
    "what",    "when",    "where",  "which",   "while",  "who",     "whom",  "why",
    "will",    "with",    "would",  "you",     "your",   "yours",
};

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char32_t cp = decode_utf8(text, pos);
    if (is_word_char(cp)) {
      encode_utf8(to_lower(cp), current);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::string casefold(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t start = pos;
    const char32_t cp = decode_utf8(text, pos);
    if (cp == kInvalid) {
      out.append(text.substr(start, pos - start));
    } else {
      encode_utf8(to_lower(cp), out);
    }
  }
  return out;
}

std::string_view trim(std::string_view text) {
  constexpr std::string_view kSpace = " \t\r\n\f\v";
  const auto first = text.find_first_not_of(kSpace);
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(kSpace);
  return text.substr(first, last - first + 1);
}

Stoplist::Stoplist(const std::vector<std::string>& words, std::string source)
    : source_(std::move(source)) {
  for (const auto& w : words) {
    auto key = casefold(trim(w));
    if (!key.empty()) words_.insert(std::move(key));
  }
}

Stoplist Stoplist::default_english() {
  return Stoplist(std::vector<std::string>(kEnglishStopwords.begin(), kEnglishStopwords.end()),
                  "builtin:en");
}

Stoplist Stoplist::from_stream(std::istream& in, std::string source) {
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    const auto w = trim(line);
    if (w.empty() || w.front() == '#') continue;
    words.emplace_back(w);
  }
  return Stoplist(words, std::move(source));
}

Stoplist Stoplist::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open stoplist file \"" + path + "\"");
  return from_stream(in, path);
}

bool Stoplist::contains(std::string_view token) const {
  return words_.contains(std::string(token));
}

std::vector<std::string> Stoplist::sorted_words() const {
  std::vector<std::string> out(words_.begin(), words_.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const Stoplist& stoplist) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (!stoplist.contains(t)) out.push_back(t);
  }
  return out;
}

}  // namespace polyrep
