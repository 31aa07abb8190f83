#include "polyrep/service.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <stdexcept>

#include <httplib.h>
#include <json.hpp>

#include "polyrep/expansion.hpp"

namespace polyrep {

namespace {

using json = nlohmann::ordered_json;

struct RequestError {
  int status;
  std::string code;
  std::string message;
};

HttpResponse error_response(const RequestError& e) {
  json body;
  body["error"] = e.code;
  body["message"] = e.message;
  return {e.status, body.dump()};
}

double round6(double x) { return std::round(x * 1e6) / 1e6; }

std::optional<std::string> single(const QueryParams& params, const std::string& key) {
  const auto it = params.find(key);
  if (it == params.end()) return std::nullopt;
  return it->second;
}

std::string required(const QueryParams& params, const std::string& key) {
  auto v = single(params, key);
  if (!v) throw RequestError{400, "missing_parameter", "parameter \"" + key + "\" is required"};
  return *v;
}

std::size_t positive_int(const QueryParams& params, const std::string& key, std::size_t fallback) {
  const auto v = single(params, key);
  if (!v) return fallback;
  std::size_t out = 0;
  const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc() || ptr != v->data() + v->size() || out == 0) {
    throw RequestError{400, "bad_parameter",
                       "parameter \"" + key + "\" must be a positive integer"};
  }
  return out;
}

/// nullopt when the key is absent; empty strings are dropped from a present list.
std::optional<std::vector<std::string>> list_param(const QueryParams& params,
                                                   const std::string& key) {
  const auto [first, last] = params.equal_range(key);
  if (first == last) return std::nullopt;
  std::vector<std::string> out;
  for (auto it = first; it != last; ++it) {
    const auto v = trim(it->second);
    if (!v.empty()) out.emplace_back(v);
  }
  return out;
}

std::vector<std::string> query_terms(const ServiceState& state, const QueryParams& params) {
  const auto q = required(params, "q");
  auto terms = remove_stopwords(tokenize(q), state.stoplist);
  if (terms.empty()) {
    throw RequestError{400, "empty_query", "query has no terms after stopword removal"};
  }
  return terms;
}

std::string entity_field(const ServiceState& state, const std::string& kind) {
  const auto field = field_for_kind(kind);
  if (!state.engine.has_entity_field(field)) {
    throw RequestError{400, "unknown_kind", "no suggestions available for kind \"" + kind + "\""};
  }
  return field;
}

const std::string& title_of(const FieldedIndex& index, const std::string& doc_id) {
  const auto& docs = index.docs();
  const auto it = std::lower_bound(docs.begin(), docs.end(), doc_id,
                                   [](const FieldedIndex::DocSummary& d, const std::string& id) {
                                     return d.doc_id < id;
                                   });
  static const std::string kNone;
  return (it != docs.end() && it->doc_id == doc_id) ? it->title : kNone;
}

template <typename Fn>
HttpResponse guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const RequestError& e) {
    return error_response(e);
  } catch (const MissingExpansionError& e) {
    return error_response({400, "missing_expansion", e.what()});
  } catch (const std::exception& e) {
    return error_response({500, "internal_error", e.what()});
  }
}

json suggestions_json(const std::vector<Suggestion>& list) {
  json arr = json::array();
  for (const auto& s : list) {
    json item;
    item["entity"] = s.entity;
    item["kind"] = kind_label(s.field);
    item["score"] = round6(s.score);
    arr.push_back(std::move(item));
  }
  return arr;
}

}  // namespace

HttpResponse handle_suggest(const ServiceState& state, const QueryParams& params) {
  return guarded([&] {
    const auto terms = query_terms(state, params);
    const auto field = entity_field(state, required(params, "kind"));
    SuggestConfig config = state.suggest;
    config.n = positive_int(params, "n", state.suggest.n);
    json body;
    body["suggestions"] = suggestions_json(state.engine.suggest(field, terms, config));
    return HttpResponse{200, body.dump()};
  });
}

HttpResponse handle_search(const ServiceState& state, const QueryParams& params) {
  return guarded([&] {
    Topic topic;
    topic.topic_id = "query";
    topic.title = required(params, "q");
    topic.terms = query_terms(state, params);
    const auto config_text = required(params, "config");
    const auto config = parse_run_config(config_text);
    if (!config) {
      throw RequestError{400, "unknown_config", "unknown configuration \"" + config_text +
                                                    "\" (expected b, b+te, b+ae or b+te+ae)"};
    }
    SuggestConfig suggest = state.suggest;
    suggest.n = positive_int(params, "n", state.suggest.n);
    const auto k = positive_int(params, "k", state.default_k);

    const auto te_given = list_param(params, "te");
    const auto ae_given = list_param(params, "ae");
    std::vector<std::string> te;
    std::vector<std::string> ae;
    bool use_te = uses_terms(*config);
    bool use_ae = uses_authors(*config);
    // Computed lists that come back empty drop their expansion, like the
    // experiment pipeline; user-supplied empty lists are a contract error.
    if (use_te) {
      if (te_given) {
        te = *te_given;
      } else {
        for (auto& s : state.engine.suggest(field::kControlledTerm, topic.terms, suggest)) {
          te.push_back(std::move(s.entity));
        }
        use_te = !te.empty();
      }
    }
    if (use_ae) {
      if (ae_given) {
        ae = *ae_given;
      } else {
        for (auto& s : state.engine.suggest(field::kAuthor, topic.terms, suggest)) {
          ae.push_back(std::move(s.entity));
        }
        use_ae = !ae.empty();
      }
    }
    RunConfig effective = RunConfig::kB;
    if (use_te && use_ae) {
      effective = RunConfig::kBTeAe;
    } else if (use_te) {
      effective = RunConfig::kBTe;
    } else if (use_ae) {
      effective = RunConfig::kBAe;
    }
    const auto query = build_query(topic, te, ae, effective);
    const auto ranking = search(state.engine.index(), query, k);

    json body;
    body["config"] = to_string(*config);
    body["effective_config"] = to_string(effective);
    body["rendered_query"] = render_query(query);
    body["te"] = query.te_terms;
    body["ae"] = query.ae_names;
    json results = json::array();
    for (const auto& e : ranking.entries) {
      json item;
      item["doc_id"] = e.doc_id;
      item["score"] = round6(e.score);
      item["title"] = title_of(state.engine.index(), e.doc_id);
      results.push_back(std::move(item));
    }
    body["results"] = std::move(results);
    return HttpResponse{200, body.dump()};
  });
}

HttpResponse handle_health(const ServiceState& state) {
  json body;
  body["status"] = "ok";
  body["doc_count"] = state.engine.index().doc_count();
  body["fields"] = state.engine.index().field_names();
  body["entity_fields"] = state.engine.entity_fields();
  body["snapshot"] = state.snapshot_source;
  body["stoplist"] = state.stoplist.source();
  return {200, body.dump()};
}

struct HttpService::Impl {
  explicit Impl(const ServiceState& s) : state(s) {}
  const ServiceState& state;
  httplib::Server server;
};

namespace {

void reply(httplib::Response& res, const HttpResponse& r) {
  res.status = r.status;
  res.set_header("Access-Control-Allow-Origin", "*");
  res.set_content(r.body, "application/json; charset=utf-8");
}

}  // namespace

HttpService::HttpService(const ServiceState& state) : impl_(std::make_unique<Impl>(state)) {
  auto& server = impl_->server;
  const ServiceState* s = &impl_->state;
  server.Get("/suggest", [s](const httplib::Request& req, httplib::Response& res) {
    reply(res, handle_suggest(*s, QueryParams(req.params.begin(), req.params.end())));
  });
  server.Get("/search", [s](const httplib::Request& req, httplib::Response& res) {
    reply(res, handle_search(*s, QueryParams(req.params.begin(), req.params.end())));
  });
  server.Get("/health", [s](const httplib::Request&, httplib::Response& res) {
    reply(res, handle_health(*s));
  });
  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.status == 404) {
      reply(res, error_response({404, "not_found", "unknown endpoint"}));
    }
  });
}

HttpService::~HttpService() { stop(); }

int HttpService::bind_to_any_port(const std::string& host) {
  return impl_->server.bind_to_any_port(host);
}

bool HttpService::bind(const std::string& host, int port) {
  return impl_->server.bind_to_port(host, port);
}

bool HttpService::listen_after_bind() { return impl_->server.listen_after_bind(); }

void HttpService::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

void HttpService::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace polyrep
