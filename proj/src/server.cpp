#include <atomic>
#include <stdexcept>

#include "httplib.h"

#include "gconj/service.hpp"

namespace gconj::service {

struct Server::Impl {
  SessionManager& sessions;
  ServerOptions options;
  httplib::Server http;
  std::atomic<bool> stopping{false};
  int port = -1;

  Impl(SessionManager& s, ServerOptions o) : sessions(s), options(std::move(o)) {}

  static void send(httplib::Response& res, int status, const Json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
  }

  /// Runs `fn`, mapping exceptions to JSON error payloads.
  template <typename F>
  static void guarded(httplib::Response& res, F&& fn) {
    try {
      send(res, 200, fn());
    } catch (const ServiceError& e) {
      send(res, e.status(), e.payload());
    } catch (const Json::exception& e) {
      send(res, 400, ServiceError(400, "invalid_json", e.what()).payload());
    } catch (const std::exception& e) {
      send(res, 500, ServiceError(500, "internal", e.what()).payload());
    }
  }

  static Json body(const httplib::Request& req) {
    return req.body.empty() ? Json::object() : Json::parse(req.body);
  }

  void routes() {
    const std::string id = "([0-9a-f]+)";
    http.Get("/api/catalog", [](const httplib::Request&, httplib::Response& res) {
      guarded(res, [] { return catalog(); });
    });
    http.Get("/api/conjectures", [](const httplib::Request&, httplib::Response& res) {
      guarded(res, [] { return catalog()["conjectures"]; });
    });
    http.Get("/api/games", [](const httplib::Request&, httplib::Response& res) {
      guarded(res, [] { return catalog()["games"]; });
    });
    http.Post("/api/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { return sessions.create(body(req)); });
    });
    http.Post("/api/sessions/replay", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { return sessions.replay(body(req)); });
    });
    http.Get("/api/sessions/" + id, [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { return sessions.view(req.matches[1]); });
    });
    http.Post("/api/sessions/" + id + "/actions",
              [this](const httplib::Request& req, httplib::Response& res) {
                guarded(res, [&] { return sessions.act(req.matches[1], body(req)); });
              });
    http.Post("/api/sessions/" + id + "/undo",
              [this](const httplib::Request& req, httplib::Response& res) {
                guarded(res, [&] { return sessions.undo(req.matches[1]); });
              });
    http.Get("/api/sessions/" + id + "/log",
             [this](const httplib::Request& req, httplib::Response& res) {
               guarded(res, [&] { return sessions.log(req.matches[1]); });
             });
    http.Get("/api/sessions/" + id + "/events",
             [this](const httplib::Request& req, httplib::Response& res) { events(req, res); });
  }

  /// Server-sent events: the current view first, then one per state change.
  void events(const httplib::Request& req, httplib::Response& res) {
    const std::string sid = req.matches[1];
    Json first;
    try {
      first = sessions.view(sid);
    } catch (const ServiceError& e) {
      send(res, e.status(), e.payload());
      return;
    }
    auto version = std::make_shared<std::uint64_t>(first["version"].get<std::uint64_t>());
    auto pending = std::make_shared<std::string>("data: " + first.dump() + "\n\n");
    res.set_chunked_content_provider(
        "text/event-stream", [this, sid, version, pending](std::size_t, httplib::DataSink& sink) {
          if (!pending->empty()) {
            const bool ok = sink.write(pending->data(), pending->size());
            pending->clear();
            return ok;
          }
          if (stopping) return false;
          try {
            auto update = sessions.wait_for_update(sid, *version, std::chrono::milliseconds(500));
            if (!update) {
              static const char ping[] = ": ping\n\n";
              return sink.write(ping, sizeof ping - 1);
            }
            *version = (*update)["version"].get<std::uint64_t>();
            const std::string msg = "data: " + (*update)["state"].dump() + "\n\n";
            return sink.write(msg.data(), msg.size());
          } catch (const ServiceError&) {
            sink.done();
            return true;
          }
        });
  }
};

Server::Server(SessionManager& sessions, ServerOptions options)
    : impl_(std::make_unique<Impl>(sessions, std::move(options))) {
  impl_->routes();
  if (!impl_->options.static_dir.empty() &&
      !impl_->http.set_mount_point("/", impl_->options.static_dir)) {
    throw std::runtime_error("static directory not found: " + impl_->options.static_dir);
  }
}

Server::~Server() { stop(); }

int Server::bind() {
  if (impl_->options.port == 0) {
    impl_->port = impl_->http.bind_to_any_port(impl_->options.bind);
  } else if (impl_->http.bind_to_port(impl_->options.bind, impl_->options.port)) {
    impl_->port = impl_->options.port;
  }
  if (impl_->port < 0) {
    throw std::runtime_error("cannot bind " + impl_->options.bind + ":" +
                             std::to_string(impl_->options.port));
  }
  return impl_->port;
}

void Server::listen() {
  if (impl_->port < 0) throw std::logic_error("Server::listen before bind");
  impl_->http.listen_after_bind();
}

void Server::stop() {
  impl_->stopping = true;
  impl_->http.stop();
}

}  // namespace gconj::service
