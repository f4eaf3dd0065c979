#include "gconj/env.hpp"

#include <string>

namespace gconj {

std::string_view to_string(Game game) {
  switch (game) {
    case Game::linear: return "linear";
    case Game::local: return "local";
    case Game::global: return "global";
    case Game::flip: return "flip";
  }
  return "linear";
}

Game parse_game(std::string_view text) {
  if (text == "linear") return Game::linear;
  if (text == "local") return Game::local;
  if (text == "global") return Game::global;
  if (text == "flip") return Game::flip;
  throw std::invalid_argument("unknown game '" + std::string(text) + "'");
}

int EnvConfig::resolved_horizon() const {
  const auto m = static_cast<int>(edge_slots());
  if (game == Game::linear) return m;
  return horizon.value_or(m);
}

Graph EnvConfig::initial_graph() const {
  if (const auto* kind = std::get_if<InitialKind>(&initial)) {
    return new_graph(n, *kind, allow_self_loops);
  }
  const Graph& given = std::get<Graph>(initial);
  if (given.node_count() != n) {
    throw std::invalid_argument("initial graph has " + std::to_string(given.node_count()) +
                                " nodes, expected " + std::to_string(n));
  }
  if (given.has_self_loops() && !allow_self_loops) {
    throw std::invalid_argument("initial graph has self-loops but self-loops are disabled");
  }
  Graph g(n, allow_self_loops);
  for (const auto& [i, j] : given.edges()) g.add_edge(i, j);
  return g;
}

void EnvConfig::validate() const {
  if (n < 1 || n > kMaxNodes) {
    throw std::invalid_argument("n must be in [1, " + std::to_string(kMaxNodes) + "], got " +
                                std::to_string(n));
  }
  if (!conjecture || !conjecture->score_fn) {
    throw std::invalid_argument("a conjecture (reward function) is required");
  }
  if (edge_slots() == 0) {
    throw std::invalid_argument("n=1 without self-loops has no edges to play on");
  }
  if (game != Game::linear && horizon && *horizon < 1) {
    throw std::invalid_argument("horizon must be >= 1, got " + std::to_string(*horizon));
  }
  if (start_node < 0 || start_node >= n) {
    throw std::invalid_argument("start node " + std::to_string(start_node) +
                                " out of range for n=" + std::to_string(n));
  }
  (void)initial_graph();
}

int action_space_size(const EnvConfig& cfg) {
  const auto m = static_cast<int>(cfg.edge_slots());
  switch (cfg.game) {
    case Game::linear: return 2;
    case Game::local: return 2 * cfg.n;
    case Game::global: return 2 * m;
    case Game::flip: return m;
  }
  return 0;
}

ObservationLayout observation_layout(const EnvConfig& cfg) {
  ObservationLayout layout;
  layout.edges = cfg.edge_slots();
  layout.clock = static_cast<std::size_t>(cfg.resolved_horizon());
  layout.agent = cfg.game == Game::local ? static_cast<std::size_t>(cfg.n) : 0;
  return layout;
}

namespace {

EnvConfig validated(EnvConfig cfg) {
  cfg.validate();
  return cfg;
}

}  // namespace

GraphEnv::GraphEnv(EnvConfig cfg)
    : cfg_(validated(std::move(cfg))),
      horizon_(cfg_.resolved_horizon()),
      action_space_(gconj::action_space_size(cfg_)),
      layout_(observation_layout(cfg_)),
      adapter_(cfg_.conjecture, cfg_.reward_mode, cfg_.normalize) {
  const std::size_t m = cfg_.edge_slots();
  slots_.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    slots_.push_back(edge_index_to_pair({k}, cfg_.n, cfg_.allow_self_loops, cfg_.edge_order));
  }
  reset();
}

Observation GraphEnv::reset() {
  state_ = EnvState{};
  state_.graph = cfg_.initial_graph();
  state_.agent_node = cfg_.start_node;
  adapter_.reset(state_.graph);
  return observe();
}

StepResult GraphEnv::step(int action) {
  if (state_.done) throw EpisodeFinished("episode finished");
  if (action < 0 || action >= action_space_) {
    throw std::out_of_range("action " + std::to_string(action) + " out of range [0, " +
                            std::to_string(action_space_) + ")");
  }

  const int n = cfg_.n;
  const int m = static_cast<int>(slots_.size());
  StepInfo info;
  int next_agent = state_.agent_node;
  switch (cfg_.game) {
    case Game::linear:
      info.edge = slot_pair(static_cast<std::size_t>(state_.t));
      info.flipped = action == 1;
      break;
    case Game::local:
      next_agent = action % n;
      info.edge = NodePair{state_.agent_node, next_agent};
      info.flipped = action >= n;
      break;
    case Game::global:
      info.edge = slot_pair(static_cast<std::size_t>(action % m));
      info.flipped = action >= m;
      break;
    case Game::flip:
      info.edge = slot_pair(static_cast<std::size_t>(action));
      info.flipped = true;
      break;
  }

  if (info.flipped && info.edge->i == info.edge->j && !cfg_.allow_self_loops) {
    throw ActionRefused("action " + std::to_string(action) + " would create self-loop (" +
                        std::to_string(info.edge->i) + "," + std::to_string(info.edge->i) +
                        ") but self-loops are disabled");
  }

  const Graph prev = state_.graph;
  if (info.flipped) state_.graph.flip_edge(info.edge->i, info.edge->j);
  state_.agent_node = next_agent;
  ++state_.t;
  state_.done = state_.t >= horizon_;

  if (cfg_.check_every_step) {
    info.check = check_counterexample(*cfg_.conjecture, state_.graph);
    if (info.check->verdict == Verdict::verified) {
      state_.counterexample = info.check;
      state_.done = true;
    }
  }

  StepResult result;
  result.reward = adapter_.emit(prev, state_.graph, state_.t, horizon_, state_.done);
  result.done = state_.done;
  result.info = std::move(info);
  result.observation = observe();
  return result;
}

Observation GraphEnv::observe() const {
  Observation obs;
  observe_into(obs.values);
  return obs;
}

void GraphEnv::observe_into(std::vector<float>& out) const {
  out.assign(layout_.size(), 0.0f);
  for (std::size_t k = 0; k < slots_.size(); ++k) {
    if (state_.graph.has_edge(slots_[k].i, slots_[k].j)) out[k] = 1.0f;
  }
  if (!state_.done && state_.t < horizon_) {
    out[layout_.edges + static_cast<std::size_t>(state_.t)] = 1.0f;
  }
  if (layout_.agent != 0) {
    out[layout_.edges + layout_.clock + static_cast<std::size_t>(state_.agent_node)] = 1.0f;
  }
}

std::vector<std::uint8_t> GraphEnv::legal_action_mask() const {
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(action_space_), state_.done ? 0 : 1);
  if (!state_.done && cfg_.game == Game::local && !cfg_.allow_self_loops) {
    mask[static_cast<std::size_t>(cfg_.n + state_.agent_node)] = 0;
  }
  return mask;
}

std::vector<int> GraphEnv::legal_actions() const {
  std::vector<int> out;
  const auto mask = legal_action_mask();
  for (std::size_t a = 0; a < mask.size(); ++a)
    if (mask[a]) out.push_back(static_cast<int>(a));
  return out;
}

double GraphEnv::current_score() const { return cfg_.conjecture->score(state_.graph); }

}  // namespace gconj
