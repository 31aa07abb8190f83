#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>

#include "polyrep/engine.hpp"
#include "polyrep/text.hpp"

namespace polyrep {

/// Everything a request handler reads. Built once at startup, never mutated.
struct ServiceState {
  Engine engine;
  Stoplist stoplist;
  SuggestConfig suggest;  // default n for requests that omit it
  std::size_t default_k = kDefaultDepth;
  std::string snapshot_source;
};

/// Query parameters, repeated keys allowed (te=..&te=..).
using QueryParams = std::multimap<std::string, std::string>;

struct HttpResponse {
  int status = 200;
  std::string body;  // UTF-8 JSON

  bool operator==(const HttpResponse&) const = default;
};

/// GET /suggest?q=&kind=&n=
///   200 {"suggestions":[{"entity","kind","score"}]}
HttpResponse handle_suggest(const ServiceState& state, const QueryParams& params);

/// GET /search?q=&config=&k=&n=&te=...&ae=...
///   200 {"rendered_query","results":[{"doc_id","score","title"}],"te":[...],"ae":[...]}
/// Repeated te/ae parameters are the user's accepted expansions and are used
/// verbatim; when absent and the config needs them, top-n suggestions are
/// computed. A present-but-empty list (te=) is an explicit empty selection.
HttpResponse handle_search(const ServiceState& state, const QueryParams& params);

/// GET /health  -> {"status":"ok","doc_count","fields","entity_fields","snapshot"}
HttpResponse handle_health(const ServiceState& state);

/// Thin cpp-httplib wrapper routing the three endpoints to the handlers.
class HttpService {
 public:
  explicit HttpService(const ServiceState& state);
  ~HttpService();
  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  /// Binds to an ephemeral port and returns it, or -1.
  int bind_to_any_port(const std::string& host);
  bool bind(const std::string& host, int port);
  /// Blocks until stop().
  bool listen_after_bind();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace polyrep
