#include "polyrep/synth.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>
#include <string_view>
#include <unordered_set>

#include <fmt/format.h>

namespace polyrep {

namespace {

constexpr std::string_view kConsonants = "bdfgklmnprstvz";
constexpr std::array<std::string_view, 5> kVowels = {"a", "e", "i", "o", "u"};
constexpr std::array<std::string_view, 8> kNameVowels = {"a", "e", "i", "o", "u", "ä", "ö", "ü"};
constexpr std::array<std::string_view, 4> kConnectors = {" and ", " of ", " in the ", " for "};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

class WordMaker {
 public:
  explicit WordMaker(Xorshift64Star& rng) : rng_(rng), stop_(Stoplist::default_english()) {}

  std::string word(bool name_vowels = false) {
    for (;;) {
      const auto syllables = 2 + rng_.below(2);
      std::string w;
      for (std::uint64_t s = 0; s < syllables; ++s) {
        w += kConsonants[rng_.below(kConsonants.size())];
        w += name_vowels ? kNameVowels[rng_.below(kNameVowels.size())]
                         : kVowels[rng_.below(kVowels.size())];
      }
      if (!stop_.contains(w) && used_.insert(w).second) return w;
    }
  }

  std::string name() {
    for (;;) {
      auto full = capitalize(word(true)) + ", " + capitalize(word());
      if (names_.insert(full).second) return full;
    }
  }

  std::string phrase() { return word() + " " + word(); }

 private:
  static std::string capitalize(std::string w) {
    if (!w.empty() && w[0] >= 'a' && w[0] <= 'z') w[0] = static_cast<char>(w[0] - 'a' + 'A');
    return w;
  }

  Xorshift64Star& rng_;
  Stoplist stop_;
  std::unordered_set<std::string> used_;
  std::unordered_set<std::string> names_;
};

std::vector<std::string> make_pool(std::size_t n, WordMaker& maker, bool phrases) {
  std::vector<std::string> pool;
  pool.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pool.push_back(phrases ? maker.phrase() : maker.word());
  return pool;
}

const std::string& pick(const std::vector<std::string>& pool, Xorshift64Star& rng) {
  return pool[rng.below(pool.size())];
}

// Draws `count` distinct values; each draw comes from `fallback` with
// probability p_fallback (when non-empty), else from `primary`.
std::vector<std::string> draw_distinct(std::size_t count, const std::vector<std::string>& primary,
                                       const std::vector<std::string>& fallback, double p_fallback,
                                       Xorshift64Star& rng) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  const std::size_t available = primary.size() + fallback.size();
  constexpr int kMaxAttempts = 64;
  for (std::size_t i = 0; i < count && out.size() < available; ++i) {
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
      const bool use_fallback = primary.empty() || (!fallback.empty() && rng.chance(p_fallback));
      const auto& v = pick(use_fallback ? fallback : primary, rng);
      if (seen.insert(v).second) {
        out.push_back(v);
        break;
      }
    }
  }
  return out;
}

std::string make_text(std::size_t length, const std::vector<std::string>& topical,
                      const std::vector<std::string>& background, double p_background,
                      Xorshift64Star& rng) {
  std::string text;
  for (std::size_t i = 0; i < length; ++i) {
    const bool bg = topical.empty() || rng.chance(p_background);
    const auto& w = pick(bg ? background : topical, rng);
    if (!text.empty()) text += ' ';
    text += w;
  }
  if (!text.empty() && text[0] >= 'a' && text[0] <= 'z') text[0] = static_cast<char>(text[0] - 32);
  return text;
}

// Fills `count` distinct author slots, each from `first` with probability
// p_first and otherwise from `second`; an empty pool defers to the other.
std::vector<std::string> draw_authors(std::size_t count, const std::vector<std::string>& first,
                                      double p_first, const std::vector<std::string>& second,
                                      Xorshift64Star& rng) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  constexpr int kMaxAttempts = 64;
  for (std::size_t i = 0; i < count; ++i) {
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
      const std::string* v = nullptr;
      if (!first.empty() && rng.chance(p_first)) {
        v = &pick(first, rng);
      } else if (!second.empty()) {
        v = &pick(second, rng);
      } else if (!first.empty()) {
        v = &pick(first, rng);
      } else {
        return out;
      }
      if (seen.insert(*v).second) {
        out.push_back(*v);
        break;
      }
    }
  }
  return out;
}

struct TopicPools {
  std::vector<std::string> terms;
  std::vector<std::string> cts;
  std::vector<std::string> authors;
};

}  // namespace

Xorshift64Star::Xorshift64Star(std::uint64_t seed) : state_(splitmix64(seed)) {
  if (state_ == 0) state_ = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t Xorshift64Star::next() {
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 0x2545F4914F6CDD1DULL;
}

std::uint64_t Xorshift64Star::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("below(0)");
  return next() % n;
}

double Xorshift64Star::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

void SynthParams::validate() const {
  for (const auto& [name, p] : {std::pair{"promiscuous_rate", promiscuous_rate},
                               std::pair{"topical_author_rate", topical_author_rate},
                               std::pair{"peripheral_rate", peripheral_rate},
                               std::pair{"term_noise", term_noise},
                               std::pair{"distractor_topicality", distractor_topicality}}) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument(fmt::format("{} must lie in [0, 1], got {}", name, p));
    }
  }
  if (topic_count == 0) return;
  if (term_pool_size == 0) throw std::invalid_argument("term_pool_size must be at least 1");
  if (query_terms == 0 || query_terms > term_pool_size) {
    throw std::invalid_argument("query_terms must lie in [1, term_pool_size]");
  }
  if (general_vocab_size == 0) throw std::invalid_argument("general_vocab_size must be at least 1");
  if (ct_pool_size == 0 && cts_per_doc > 0) {
    throw std::invalid_argument("ct_pool_size must be at least 1 when documents carry terms");
  }
  if (distractor_docs > 0 && general_ct_size == 0 && cts_per_doc > 0) {
    throw std::invalid_argument("general_ct_size must be at least 1 for distractors");
  }
  if (authors_per_doc > 0 && topical_authors_per_topic == 0 && promiscuous_authors == 0) {
    throw std::invalid_argument("relevant documents need topical or promiscuous authors");
  }
  if (distractor_docs > 0 && authors_per_doc > 0 && background_authors == 0 &&
      promiscuous_authors == 0) {
    throw std::invalid_argument("distractors need background or promiscuous authors");
  }
}

SynthCollection generate(const SynthParams& params) {
  params.validate();
  SynthCollection out;
  if (params.topic_count == 0) return out;

  Xorshift64Star rng(params.seed);
  WordMaker maker(rng);

  std::vector<TopicPools> pools(params.topic_count);
  for (auto& p : pools) {
    p.terms = make_pool(params.term_pool_size, maker, false);
    p.cts = make_pool(params.ct_pool_size, maker, true);
    for (std::size_t i = 0; i < params.topical_authors_per_topic; ++i) p.authors.push_back(maker.name());
  }
  const auto general_vocab = make_pool(params.general_vocab_size, maker, false);
  const auto general_cts = make_pool(params.general_ct_size, maker, true);
  std::vector<std::string> promiscuous;
  for (std::size_t i = 0; i < params.promiscuous_authors; ++i) promiscuous.push_back(maker.name());
  std::vector<std::string> background;
  for (std::size_t i = 0; i < params.background_authors; ++i) background.push_back(maker.name());
  // Distractors hosted by topic h are signed only by promiscuous author h % P.
  std::vector<std::vector<std::string>> host_promiscuous(params.topic_count);
  if (!promiscuous.empty()) {
    for (std::size_t h = 0; h < params.topic_count; ++h) {
      host_promiscuous[h].push_back(promiscuous[h % promiscuous.size()]);
    }
  }

  for (std::size_t t = 0; t < params.topic_count; ++t) {
    Topic topic;
    topic.topic_id = fmt::format("{:03}", t + 1);
    for (std::size_t i = 0; i < params.query_terms; ++i) {
      if (i > 0) topic.title += kConnectors[(i - 1) % kConnectors.size()];
      topic.title += pools[t].terms[i];
    }
    topic.title[0] = static_cast<char>(topic.title[0] - 32);
    topic.terms.assign(pools[t].terms.begin(),
                       pools[t].terms.begin() + static_cast<std::ptrdiff_t>(params.query_terms));
    out.topics.push_back(std::move(topic));
    out.topical_authors.push_back(pools[t].authors);
  }

  // Slot i < relevant_total is relevant for topic i / docs_per_topic; the
  // rest are distractors. Slots are shuffled before ids are handed out so
  // that doc_id order says nothing about relevance.
  const std::size_t relevant_total = params.topic_count * params.docs_per_topic;
  const std::size_t total = relevant_total + params.distractor_docs;
  std::vector<std::size_t> order(total);
  for (std::size_t i = 0; i < total; ++i) order[i] = i;
  for (std::size_t i = total; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  std::vector<std::size_t> id_of_slot(total);
  for (std::size_t pos = 0; pos < total; ++pos) id_of_slot[order[pos]] = pos;

  out.corpus.resize(total);
  for (std::size_t slot = 0; slot < total; ++slot) {
    Document& doc = out.corpus[id_of_slot[slot]];
    doc.doc_id = fmt::format("d{:06}", id_of_slot[slot] + 1);
    if (slot < relevant_total) {
      const std::size_t t = slot / params.docs_per_topic;
      const auto& p = pools[t];
      if (rng.chance(params.peripheral_rate)) {
        // Peripheral: distractor-like vocabulary and background indexing, but
        // always signed by one of the topic's own authors.
        const double p_bg = 1.0 - params.distractor_topicality;
        doc.title = make_text(params.title_length, p.terms, general_vocab, p_bg, rng);
        doc.abstract = make_text(params.abstract_length, p.terms, general_vocab, p_bg, rng);
        doc.controlled_terms = draw_distinct(params.cts_per_doc, general_cts, {}, 0.0, rng);
        doc.authors = draw_authors(params.authors_per_doc, promiscuous,
                                   1.0 - params.topical_author_rate, p.authors, rng);
        if (!p.authors.empty() && params.authors_per_doc > 0 &&
            std::none_of(doc.authors.begin(), doc.authors.end(), [&](const std::string& a) {
              return std::find(p.authors.begin(), p.authors.end(), a) != p.authors.end();
            })) {
          doc.authors.front() = pick(p.authors, rng);
        }
      } else {
        doc.title = make_text(params.title_length, p.terms, general_vocab, params.term_noise, rng);
        doc.abstract =
            make_text(params.abstract_length, p.terms, general_vocab, params.term_noise, rng);
        doc.controlled_terms =
            draw_distinct(params.cts_per_doc, p.cts, general_cts, params.term_noise, rng);
        doc.authors = draw_authors(params.authors_per_doc, promiscuous,
                                   1.0 - params.topical_author_rate, p.authors, rng);
      }
      out.qrels.add(out.topics[t].topic_id, doc.doc_id, 1);
    } else {
      const std::size_t host = rng.below(params.topic_count);
      const double p_bg = 1.0 - params.distractor_topicality;
      doc.title = make_text(params.title_length, pools[host].terms, general_vocab, p_bg, rng);
      doc.abstract = make_text(params.abstract_length, pools[host].terms, general_vocab, p_bg, rng);
      doc.controlled_terms = draw_distinct(params.cts_per_doc, general_cts, {}, 0.0, rng);
      doc.authors = draw_authors(params.authors_per_doc, host_promiscuous[host],
                                 params.promiscuous_rate, background, rng);
      out.qrels.add(out.topics[host].topic_id, doc.doc_id, 0);
    }
  }
  return out;
}

}  // namespace polyrep
