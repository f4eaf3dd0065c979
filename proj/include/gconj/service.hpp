#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "gconj/env.hpp"

namespace gconj::service {

using Json = nlohmann::json;

/// Error surfaced to clients as {"error": {"code", "message"}} with `status`.
class ServiceError : public std::runtime_error {
 public:
  ServiceError(int status, std::string code, const std::string& message)
      : std::runtime_error(message), status_(status), code_(std::move(code)) {}

  int status() const noexcept { return status_; }
  const std::string& code() const noexcept { return code_; }
  Json payload() const;

 private:
  int status_;
  std::string code_;
};

/// Parses a create-session request into an environment config. Fields:
/// conjecture, game, n (required); reward ("sparse"|"incremental"),
/// normalize, self_loops, check_every_step, horizon, start_node, edge_order,
/// initial ("empty"|"complete"|{"g6": "..."}).
EnvConfig config_from_request(const Json& request);

/// Game and conjecture names with their action-space and formula text.
Json catalog();

using Clock = std::chrono::steady_clock;

class SessionManager {
 public:
  using Now = std::function<Clock::time_point()>;

  explicit SessionManager(std::chrono::seconds idle_timeout = std::chrono::hours(1),
                          Now now = Clock::now);
  ~SessionManager();

  SessionManager(const SessionManager&) = delete;
  SessionManager& operator=(const SessionManager&) = delete;

  /// {"session_id", "state"}.
  Json create(const Json& request);
  /// {"state", "reward", "f", "done", "counterexample"}.
  Json act(const std::string& id, const Json& request);
  Json view(const std::string& id);
  Json undo(const std::string& id);

  /// {"request", "actions"}; also served for expired sessions.
  Json log(const std::string& id);
  /// New session built from a log by replaying every action.
  Json replay(const Json& log);

  /// Drops sessions idle longer than the timeout, keeping their logs.
  std::size_t expire_idle();
  std::size_t live_sessions() const;

  /// Blocks until the session's version exceeds `after` or `timeout` passes.
  /// Returns the latest {"version", "state"} on change, nullopt on timeout.
  /// Throws ServiceError if the session is unknown or the manager shuts down.
  std::optional<Json> wait_for_update(const std::string& id, std::uint64_t after,
                                      std::chrono::milliseconds timeout);

  /// Wakes every waiter; later waits fail.
  void shutdown();

 private:
  struct Session;

  Json start(const Json& request, const std::vector<int>& actions);
  std::shared_ptr<Session> find(const std::string& id);
  std::string new_id();

  std::chrono::seconds idle_timeout_;
  Now now_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::map<std::string, Json> archive_;
  std::vector<std::string> archive_order_;
  std::uint64_t id_state_;
  bool stopping_ = false;
};

struct ServerOptions {
  std::string bind = "127.0.0.1";
  int port = 8080;
  /// Directory served at "/" (optional).
  std::string static_dir;
};

/// HTTP front end. Routes:
///   GET  /api/catalog                  games and conjectures
///   POST /api/sessions                 create
///   GET  /api/sessions/{id}            state view
///   POST /api/sessions/{id}/actions    {"action": k}
///   POST /api/sessions/{id}/undo
///   GET  /api/sessions/{id}/log
///   POST /api/sessions/replay          body = log
///   GET  /api/sessions/{id}/events     text/event-stream of state views
class Server {
 public:
  Server(SessionManager& sessions, ServerOptions options);
  ~Server();

  /// Binds (port 0 picks a free one) and returns the bound port; throws
  /// std::runtime_error if binding fails.
  int bind();
  /// Serves until stop(). Call bind() first.
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace gconj::service
