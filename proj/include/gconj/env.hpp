#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gconj/graph.hpp"
#include "gconj/rewards.hpp"

namespace gconj {

// Environment contract
// --------------------
// Every game is a deterministic finite-horizon episode over a labeled graph
// with a fixed node count n. m = edge_slot_count(n, allow_self_loops) and
// edge slots are numbered by `EnvConfig::edge_order` (lexicographic default).
//
// Actions are single integers:
//   linear  [0, 2)    0 passes slot t, 1 flips slot t. Horizon is always m.
//   local   [0, 2n)   agent at i moves to j = k mod n; flips (i,j) iff k >= n.
//   global  [0, 2m)   slot e = k mod m; flips e iff k >= m.
//   flip    [0, m)    flips slot k, no pass.
//
// Observation layout (float32, every entry 0 or 1), concatenated:
//   [0, m)            edge_vector: 1 iff slot k is present in G_t
//   [m, m+T)          clock: entry t set while t < T, all zero once done
//   [m+T, m+T+n)      agent one-hot (local only; absent for other games)
//
// Refused actions (a self-loop flip when self-loops are disabled, an action
// out of range, any action after the episode ended) throw and leave the
// state untouched; the clock does not advance.

enum class Game { linear, local, global, flip };

std::string_view to_string(Game game);
Game parse_game(std::string_view text);

/// Starting graph: the empty/complete graph on n nodes, or an explicit graph.
using InitialGraph = std::variant<InitialKind, Graph>;

struct EnvConfig {
  int n = 0;
  Game game = Game::linear;
  std::shared_ptr<const Conjecture> conjecture;
  RewardMode reward_mode = RewardMode::sparse;
  bool normalize = false;
  InitialGraph initial = InitialKind::complete;
  bool allow_self_loops = false;
  bool check_every_step = false;
  /// Defaults to m. Ignored by linear.
  std::optional<int> horizon;
  int start_node = 0;
  EdgeOrder edge_order = EdgeOrder::lexicographic;

  std::size_t edge_slots() const { return edge_slot_count(n, allow_self_loops); }
  int resolved_horizon() const;
  Graph initial_graph() const;
  /// Throws std::invalid_argument describing the first problem found.
  void validate() const;
};

int action_space_size(const EnvConfig& cfg);

struct EnvState {
  Graph graph = Graph(1);
  int t = 0;
  int agent_node = 0;
  bool done = false;
  std::optional<CounterexampleCheck> counterexample;
};

struct Observation {
  std::vector<float> values;
};

struct ObservationLayout {
  std::size_t edges = 0;
  std::size_t clock = 0;
  std::size_t agent = 0;

  std::size_t size() const noexcept { return edges + clock + agent; }
};

ObservationLayout observation_layout(const EnvConfig& cfg);

struct StepInfo {
  /// Slot touched (linear, global, flip) or the (i,j) pair (local); unset for
  /// nothing.
  std::optional<NodePair> edge;
  bool flipped = false;
  std::optional<CounterexampleCheck> check;
};

struct StepResult {
  Observation observation;
  double reward = 0.0;
  bool done = false;
  StepInfo info;
};

class ActionRefused : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EpisodeFinished : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class GraphEnv {
 public:
  explicit GraphEnv(EnvConfig cfg);

  Observation reset();
  StepResult step(int action);

  const EnvConfig& config() const noexcept { return cfg_; }
  const EnvState& state() const noexcept { return state_; }
  int horizon() const noexcept { return horizon_; }
  int action_space_size() const noexcept { return action_space_; }
  const ObservationLayout& layout() const noexcept { return layout_; }

  Observation observe() const;
  /// Writes the observation into `out` (resized to layout().size()).
  void observe_into(std::vector<float>& out) const;

  std::vector<int> legal_actions() const;
  /// One byte per action, 1 = legal.
  std::vector<std::uint8_t> legal_action_mask() const;

  /// Raw (unnormalized) f of the current graph.
  double current_score() const;

 private:
  NodePair slot_pair(std::size_t slot) const { return slots_[slot]; }

  EnvConfig cfg_;
  int horizon_ = 0;
  int action_space_ = 0;
  ObservationLayout layout_;
  std::vector<NodePair> slots_;
  RewardAdapter adapter_;
  EnvState state_;
};

}  // namespace gconj
