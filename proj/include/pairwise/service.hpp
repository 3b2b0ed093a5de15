#pragma once

#include <string>

#include <httplib.h>

#include "session.hpp"

namespace pairwise {

inline int http_status_for(Errc code) {
  switch (code) {
    case Errc::UnknownSession: return 404;
    default: return 400;
  }
}

namespace detail {

inline void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(dump_json(body), "application/json");
}

inline void send_error(httplib::Response& res, Errc code, const std::string& message) {
  send_json(res, http_status_for(code), {{"code", std::string(to_string(code))}, {"message", message}});
}

template <typename Handler>
void guarded(httplib::Response& res, Handler&& handler) {
  try {
    handler();
  } catch (const Error& e) {
    send_error(res, e.code(), e.detail());
  } catch (const json::exception& e) {
    send_error(res, Errc::ParseError, e.what());
  }
}

inline json parse_body(const httplib::Request& req) {
  json body = json::parse(req.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) throw Error(Errc::ParseError, "request body must be a JSON object");
  return body;
}

// Entities may be addressed by index or by label.
inline std::size_t entity_ref(const json& ref, const std::vector<std::string>& labels) {
  if (ref.is_number_unsigned()) return ref.get<std::size_t>();
  if (ref.is_string()) {
    for (std::size_t k = 0; k < labels.size(); ++k) {
      if (labels[k] == ref.get<std::string>()) return k;
    }
    throw Error(Errc::IndexOutOfRange, "no entity labelled '" + ref.get<std::string>() + "'");
  }
  throw Error(Errc::ParseError, "entity reference must be an index or a label");
}

}  // namespace detail

/// Registers the elicitation API:
///   POST   /sessions                 {labels}        -> 201 {id, status}
///   POST   /sessions/{id}/judgments  {i, j, value}   -> 200 {status, report}
///   GET    /sessions/{id}/report                     -> 200 report
///   DELETE /sessions/{id}                            -> 200 {ok}
/// Errors are {code, message} with a 4xx status.
inline void mount_routes(httplib::Server& server, SessionStore& store) {
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
  server.Options(R"(/sessions.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  server.Post("/sessions", [&store](const httplib::Request& req, httplib::Response& res) {
    detail::guarded(res, [&] {
      const json body = detail::parse_body(req);
      if (!body.contains("labels") || !body.at("labels").is_array()) {
        throw Error(Errc::ParseError, "expected {\"labels\": [...]}");
      }
      const auto created = store.create(body.at("labels").get<std::vector<std::string>>());
      detail::send_json(res, 201, {{"id", created.id}, {"status", status_to_json(created.status)}});
    });
  });

  server.Post(R"(/sessions/([A-Za-z0-9_-]+)/judgments)", [&store](const httplib::Request& req,
                                                                   httplib::Response& res) {
    detail::guarded(res, [&] {
      const std::string id = req.matches[1];
      const json body = detail::parse_body(req);
      for (const char* key : {"i", "j", "value"}) {
        if (!body.contains(key)) throw Error(Errc::ParseError, std::string("missing field \"") + key + "\"");
      }
      if (!body.at("value").is_number()) throw Error(Errc::ParseError, "\"value\" must be a number");
      const auto labels = store.labels(id);
      const SessionReport report = store.add_judgment(id, detail::entity_ref(body.at("i"), labels),
                                                      detail::entity_ref(body.at("j"), labels),
                                                      body.at("value").get<double>());
      detail::send_json(res, 200,
                        {{"status", status_to_json(report.status)}, {"report", session_report_to_json(report, labels)}});
    });
  });

  server.Get(R"(/sessions/([A-Za-z0-9_-]+)/report)", [&store](const httplib::Request& req, httplib::Response& res) {
    detail::guarded(res, [&] {
      const std::string id = req.matches[1];
      const auto labels = store.labels(id);
      detail::send_json(res, 200, session_report_to_json(store.report(id), labels));
    });
  });

  server.Delete(R"(/sessions/([A-Za-z0-9_-]+))", [&store](const httplib::Request& req, httplib::Response& res) {
    detail::guarded(res, [&] {
      store.remove(req.matches[1]);
      detail::send_json(res, 200, {{"ok", true}});
    });
  });
}

}  // namespace pairwise
