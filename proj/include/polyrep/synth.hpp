#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "polyrep/corpus.hpp"

namespace polyrep {

/// xorshift64* (Vigna 2014), seeded through one splitmix64 step:
///
///   state = splitmix64(seed)            (0 is replaced by 0x9E3779B97F4A7C15)
///   next():  x ^= x >> 12;  x ^= x << 25;  x ^= x >> 27;
///            return x * 0x2545F4914F6CDD1D
///
///   below(n)   = next() % n
///   uniform()  = (next() >> 11) * 2^-53
///   chance(p)  = uniform() < p
///
/// Fully specified so that other implementations reproduce the same corpora.
class Xorshift64Star {
 public:
  explicit Xorshift64Star(std::uint64_t seed);
  std::uint64_t next();
  std::uint64_t below(std::uint64_t n);
  double uniform();
  bool chance(double p) { return uniform() < p; }

 private:
  std::uint64_t state_;
};

struct SynthParams {
  std::size_t topic_count = 25;
  std::size_t docs_per_topic = 30;
  std::size_t distractor_docs = 700;

  std::size_t term_pool_size = 24;       // title/abstract words per topic
  std::size_t ct_pool_size = 6;          // controlled terms per topic
  std::size_t general_vocab_size = 600;  // background words
  std::size_t general_ct_size = 120;     // background controlled terms
  std::size_t query_terms = 3;

  std::size_t title_length = 6;
  std::size_t abstract_length = 18;
  std::size_t cts_per_doc = 4;
  std::size_t authors_per_doc = 3;

  std::size_t topical_authors_per_topic = 1;
  std::size_t promiscuous_authors = 25;
  std::size_t background_authors = 150;
  double topical_author_rate = 0.05;   // relevant author slot: topical, else promiscuous
  double promiscuous_rate = 0.9;       // distractor author slot: host's promiscuous, else background
  double peripheral_rate = 0.25;       // chance a relevant document is peripheral (see generate)
  double term_noise = 0.15;            // chance a topical draw falls back to background vocabulary
  double distractor_topicality = 0.4;  // chance a distractor word comes from its host topic

  std::uint64_t seed = 42;

  /// Throws std::invalid_argument on a probability outside [0, 1] or a pool too
  /// small for the draws asked of it.
  void validate() const;
};

struct SynthCollection {
  std::vector<Document> corpus;
  std::vector<Topic> topics;
  Qrels qrels;
  /// Topical authors per topic (display form), for separability checks.
  std::vector<std::vector<std::string>> topical_authors;
};

/// Relevant documents draw words and controlled terms from their topic, and
/// authors from the topic's own authors or the promiscuous pool. A peripheral
/// relevant document uses the topic vocabulary only as sparingly as a
/// distractor, carries background controlled terms, and always has one topical
/// author. Distractors borrow words from a host topic, carry background
/// controlled terms, and are judged non-relevant for that host.
///
/// Promiscuous authors sign relevant documents of every topic. On distractors,
/// promiscuous author i signs only those whose host h has h % P == i, so it
/// co-occurs with that host's vocabulary without being relevant to it. With
/// promiscuous_authors = 0 relevant documents are signed by topical authors
/// alone and background authors sign only distractors.
SynthCollection generate(const SynthParams& params);

}  // namespace polyrep
