#include "gconj/service.hpp"

#include <cstdio>
#include <random>

#include "gconj/random.hpp"

namespace gconj::service {

Json ServiceError::payload() const {
  return Json{{"error", {{"code", code_}, {"message", what()}}}};
}

namespace {

ServiceError bad_request(const std::string& message) {
  return ServiceError(400, "invalid_request", message);
}

template <typename T>
T field(const Json& request, const char* key, T fallback) {
  auto it = request.find(key);
  if (it == request.end() || it->is_null()) return fallback;
  try {
    return it->get<T>();
  } catch (const Json::exception&) {
    throw bad_request(std::string("field '") + key + "' has the wrong type");
  }
}

std::string action_space_text(const EnvConfig& cfg) {
  const int m = static_cast<int>(cfg.edge_slots());
  const int a = action_space_size(cfg);
  char buf[160];
  switch (cfg.game) {
    case Game::linear:
      std::snprintf(buf, sizeof buf, "0 keeps slot t, 1 flips slot t (%d slots)", m);
      break;
    case Game::local:
      std::snprintf(buf, sizeof buf, "k < %d moves to node k; k >= %d flips (agent, k-%d) and moves",
                    cfg.n, cfg.n, cfg.n);
      break;
    case Game::global:
      std::snprintf(buf, sizeof buf, "k < %d touches slot k without flipping; k >= %d flips slot k-%d",
                    m, m, m);
      break;
    case Game::flip:
      std::snprintf(buf, sizeof buf, "flips slot k in [0, %d)", a);
      break;
  }
  return buf;
}

Json check_json(const CounterexampleCheck& c) {
  Json j{{"verdict", std::string(to_string(c.verdict))}, {"score", c.score}};
  j["tight_score"] = c.tight_score ? Json(*c.tight_score) : Json(nullptr);
  j["g6"] = c.g6 ? Json(*c.g6) : Json(nullptr);
  return j;
}

}  // namespace

EnvConfig config_from_request(const Json& request) {
  if (!request.is_object()) throw bad_request("request must be a JSON object");
  for (const char* key : {"conjecture", "game", "n"}) {
    if (!request.contains(key)) throw bad_request(std::string("missing field '") + key + "'");
  }
  EnvConfig cfg;
  cfg.n = field<int>(request, "n", 0);
  if (cfg.n < 1 || cfg.n > kMaxNodes) {
    throw bad_request("n must be in [1, " + std::to_string(kMaxNodes) + "]");
  }
  try {
    cfg.game = parse_game(field<std::string>(request, "game", ""));
    const auto name = field<std::string>(request, "conjecture", "");
    cfg.conjecture =
        std::make_shared<const Conjecture>(ConjectureRegistry::builtin().make(name, cfg.n));
    cfg.reward_mode = parse_reward_mode(field<std::string>(request, "reward", "sparse"));
  } catch (const std::invalid_argument& e) {
    throw bad_request(e.what());
  }
  cfg.normalize = field<bool>(request, "normalize", false);
  cfg.allow_self_loops = field<bool>(request, "self_loops", false);
  cfg.check_every_step = field<bool>(request, "check_every_step", false);
  if (request.contains("horizon") && !request["horizon"].is_null()) {
    cfg.horizon = field<int>(request, "horizon", 0);
  }
  cfg.start_node = field<int>(request, "start_node", 0);
  const auto order = field<std::string>(request, "edge_order", "lexicographic");
  if (order == "lexicographic") {
    cfg.edge_order = EdgeOrder::lexicographic;
  } else if (order == "clique") {
    cfg.edge_order = EdgeOrder::clique;
  } else {
    throw bad_request("unknown edge order '" + order + "'");
  }

  const auto it = request.find("initial");
  if (it != request.end() && !it->is_null()) {
    if (it->is_string() && *it == "empty") {
      cfg.initial = InitialKind::empty;
    } else if (it->is_string() && *it == "complete") {
      cfg.initial = InitialKind::complete;
    } else if (it->is_object() && it->contains("g6") && (*it)["g6"].is_string()) {
      try {
        cfg.initial = new_graph_from_g6(cfg.n, (*it)["g6"].get<std::string>(), cfg.allow_self_loops);
      } catch (const std::exception& e) {
        throw bad_request(std::string("initial graph: ") + e.what());
      }
    } else {
      throw bad_request("initial must be \"empty\", \"complete\" or {\"g6\": ...}");
    }
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw bad_request(e.what());
  }
  return cfg;
}

Json catalog() {
  const auto& reg = ConjectureRegistry::builtin();
  Json conjectures = Json::array();
  for (const auto& name : reg.names()) {
    conjectures.push_back({{"name", name}, {"description", reg.description(name)}});
  }
  Json games = Json::array();
  for (Game g : {Game::linear, Game::local, Game::global, Game::flip}) {
    games.push_back(std::string(to_string(g)));
  }
  return Json{{"conjectures", conjectures},
              {"games", games},
              {"rewards", {"sparse", "incremental"}}};
}

struct SessionManager::Session {
  std::string id;
  Json request;
  EnvConfig cfg;
  std::unique_ptr<GraphEnv> env;
  std::vector<int> actions;
  std::vector<double> f_history;
  double cumulative_reward = 0.0;
  std::optional<CounterexampleCheck> counterexample;
  std::uint64_t version = 0;
  Clock::time_point last_active;
  bool closed = false;

  std::mutex mutex;
  std::condition_variable changed;

  /// Steps the live env; refusals propagate with nothing modified.
  double apply(int action) {
    const StepResult r = env->step(action);
    actions.push_back(action);
    cumulative_reward += r.reward;
    f_history.push_back(env->current_score());
    if (r.info.check && r.info.check->verdict == Verdict::verified) {
      counterexample = r.info.check;
    } else if (r.done && !counterexample) {
      const auto check = check_counterexample(*cfg.conjecture, env->state().graph);
      if (check.verdict == Verdict::verified) counterexample = check;
    }
    return r.reward;
  }

  /// Fresh env, then every action in `log`.
  void rebuild(const std::vector<int>& log) {
    env = std::make_unique<GraphEnv>(cfg);
    env->reset();
    actions.clear();
    f_history = {env->current_score()};
    cumulative_reward = 0.0;
    counterexample.reset();
    for (int a : log) apply(a);
  }

  Json view() const {
    const EnvState& s = env->state();
    const Graph& g = s.graph;
    Json edges = Json::array();
    for (const auto& [i, j] : g.edges()) edges.push_back({i, j});
    Json j{{"session_id", id},
           {"conjecture", cfg.conjecture->name},
           {"game", std::string(to_string(cfg.game))},
           {"n", cfg.n},
           {"reward", std::string(to_string(cfg.reward_mode))},
           {"normalize", cfg.normalize},
           {"self_loops", cfg.allow_self_loops},
           {"edges", edges},
           {"t", s.t},
           {"T", env->horizon()},
           {"done", s.done},
           {"f", f_history.back()},
           {"f_history", f_history},
           {"cumulative_reward", cumulative_reward},
           {"action_space",
            {{"size", env->action_space_size()}, {"description", action_space_text(cfg)}}},
           {"legal_actions", env->legal_actions()},
           {"actions", actions},
           {"version", version}};
    if (cfg.game == Game::local) j["agent_node"] = s.agent_node;
    if (cfg.game == Game::linear && !s.done) {
      const NodePair p = edge_index_to_pair(EdgeIndex{static_cast<std::size_t>(s.t)}, cfg.n,
                                            cfg.allow_self_loops, cfg.edge_order);
      j["current_edge"] = {p.i, p.j};
    }
    j["counterexample"] = counterexample ? check_json(*counterexample) : Json(nullptr);
    if ((s.done || counterexample) && !g.has_self_loops()) j["g6"] = encode_g6(g);
    return j;
  }

  Json log_json() const { return Json{{"request", request}, {"actions", actions}}; }
};

SessionManager::SessionManager(std::chrono::seconds idle_timeout, Now now)
    : idle_timeout_(idle_timeout), now_(std::move(now)), id_state_(std::random_device{}()) {
  id_state_ = (id_state_ << 32) ^ std::random_device{}();
}

SessionManager::~SessionManager() { shutdown(); }

std::string SessionManager::new_id() {
  char buf[40];
  const std::uint64_t a = mix_seed(id_state_++);
  const std::uint64_t b = mix_seed(id_state_++ ^ 0x5bd1e995u);
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(a),
                static_cast<unsigned long long>(b));
  return buf;
}

std::shared_ptr<SessionManager::Session> SessionManager::find(const std::string& id) {
  expire_idle();
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) {
    if (archive_.count(id)) throw ServiceError(410, "session_expired", "session expired");
    throw ServiceError(404, "unknown_session", "unknown session '" + id + "'");
  }
  return it->second;
}

Json SessionManager::create(const Json& request) { return start(request, {}); }

Json SessionManager::start(const Json& request, const std::vector<int>& actions) {
  auto session = std::make_shared<Session>();
  session->cfg = config_from_request(request);
  session->request = request;
  try {
    session->rebuild(actions);
  } catch (const std::exception& e) {
    throw ServiceError(409, "illegal_action", std::string("log does not replay: ") + e.what());
  }
  session->last_active = now_();
  expire_idle();
  {
    std::lock_guard lock(mutex_);
    if (stopping_) throw ServiceError(503, "shutting_down", "server shutting down");
    do {
      session->id = new_id();
    } while (sessions_.count(session->id) || archive_.count(session->id));
    sessions_[session->id] = session;
  }
  return Json{{"session_id", session->id}, {"state", session->view()}};
}

Json SessionManager::act(const std::string& id, const Json& request) {
  auto s = find(id);
  if (!request.is_object() || !request.contains("action") || !request["action"].is_number_integer()) {
    throw bad_request("body must be {\"action\": <integer>}");
  }
  const int action = request["action"].get<int>();
  std::lock_guard lock(s->mutex);
  if (s->closed) throw ServiceError(410, "session_expired", "session expired");
  s->last_active = now_();
  double reward = 0.0;
  try {
    reward = s->apply(action);
  } catch (const EpisodeFinished&) {
    throw ServiceError(409, "episode_finished", "episode finished");
  } catch (const ActionRefused& e) {
    throw ServiceError(409, "illegal_action", e.what());
  } catch (const std::out_of_range& e) {
    throw ServiceError(400, "illegal_action", e.what());
  }
  ++s->version;
  s->changed.notify_all();
  Json out{{"state", s->view()},
           {"reward", reward},
           {"f", s->f_history.back()},
           {"done", s->env->state().done}};
  out["counterexample"] = s->counterexample ? check_json(*s->counterexample) : Json(nullptr);
  return out;
}

Json SessionManager::view(const std::string& id) {
  auto s = find(id);
  std::lock_guard lock(s->mutex);
  s->last_active = now_();
  return s->view();
}

Json SessionManager::undo(const std::string& id) {
  auto s = find(id);
  std::lock_guard lock(s->mutex);
  s->last_active = now_();
  if (s->actions.empty()) throw ServiceError(409, "empty_history", "nothing to undo");
  std::vector<int> log = s->actions;
  log.pop_back();
  s->rebuild(log);
  ++s->version;
  s->changed.notify_all();
  return s->view();
}

Json SessionManager::log(const std::string& id) {
  {
    std::lock_guard lock(mutex_);
    auto it = archive_.find(id);
    if (it != archive_.end()) return it->second;
  }
  auto s = find(id);
  std::lock_guard lock(s->mutex);
  return s->log_json();
}

Json SessionManager::replay(const Json& log) {
  if (!log.is_object() || !log.contains("request") || !log.contains("actions") ||
      !log["actions"].is_array()) {
    throw bad_request("log must be {\"request\": ..., \"actions\": [...]}");
  }
  std::vector<int> actions;
  try {
    actions = log["actions"].get<std::vector<int>>();
  } catch (const Json::exception&) {
    throw bad_request("actions must be integers");
  }
  return start(log["request"], actions);
}

std::size_t SessionManager::expire_idle() {
  std::vector<std::shared_ptr<Session>> expired;
  const auto now = now_();
  {
    std::lock_guard lock(mutex_);
    for (auto it = sessions_.begin(); it != sessions_.end();) {
      std::unique_lock session_lock(it->second->mutex, std::try_to_lock);
      if (session_lock.owns_lock() && now - it->second->last_active > idle_timeout_) {
        it->second->closed = true;
        archive_[it->first] = it->second->log_json();
        archive_order_.push_back(it->first);
        expired.push_back(it->second);
        it = sessions_.erase(it);
      } else {
        ++it;
      }
    }
    constexpr std::size_t kArchiveLimit = 4096;
    while (archive_order_.size() > kArchiveLimit) {
      archive_.erase(archive_order_.front());
      archive_order_.erase(archive_order_.begin());
    }
  }
  for (auto& s : expired) s->changed.notify_all();
  return expired.size();
}

std::size_t SessionManager::live_sessions() const {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

std::optional<Json> SessionManager::wait_for_update(const std::string& id, std::uint64_t after,
                                                    std::chrono::milliseconds timeout) {
  auto s = find(id);
  std::unique_lock lock(s->mutex);
  auto stopped = [&] {
    std::lock_guard g(mutex_);
    return stopping_;
  };
  s->changed.wait_for(lock, timeout, [&] { return s->version > after || s->closed || stopped(); });
  if (stopped()) throw ServiceError(503, "shutting_down", "server shutting down");
  if (s->closed) throw ServiceError(410, "session_expired", "session expired");
  if (s->version <= after) return std::nullopt;
  return Json{{"version", s->version}, {"state", s->view()}};
}

void SessionManager::shutdown() {
  std::vector<std::shared_ptr<Session>> live;
  {
    std::lock_guard lock(mutex_);
    stopping_ = true;
    for (auto& [id, s] : sessions_) live.push_back(s);
  }
  for (auto& s : live) {
    std::lock_guard lock(s->mutex);
    s->changed.notify_all();
  }
}

}  // namespace gconj::service
