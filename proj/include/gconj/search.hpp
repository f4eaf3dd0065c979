#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gconj/env.hpp"
#include "gconj/graph.hpp"
#include "gconj/rewards.hpp"

namespace gconj {

/// Gradient of the policy loss, shaped like the policy's parameters.
struct PolicyGradient {
  std::vector<std::vector<double>> weights;
  std::vector<std::vector<double>> biases;
};

/// Fully connected policy: ReLU hidden layers, softmax output.
///
/// Weights of layer l are stored input-major (`in * out_size + out`), so the
/// forward pass can skip zero inputs; observations are mostly zeros.
class Policy {
 public:
  /// layer_sizes = {input, hidden..., output}; He-uniform init from `seed`.
  Policy(std::vector<int> layer_sizes, std::uint64_t seed);

  int input_size() const noexcept { return sizes_.front(); }
  int output_size() const noexcept { return sizes_.back(); }
  const std::vector<int>& layer_sizes() const noexcept { return sizes_; }

  /// Action probabilities. With a mask, illegal actions get 0 and the rest
  /// are renormalized.
  std::vector<double> probabilities(std::span<const float> input,
                                    std::span<const std::uint8_t> mask = {}) const;

  /// Mean cross-entropy of `actions` under the policy for `inputs`
  /// (rows * input_size values). Fills `grad` when non-null.
  double loss(std::span<const float> inputs, std::span<const int> actions,
              PolicyGradient* grad = nullptr) const;

  /// params -= learning_rate * grad.
  void apply_gradient(const PolicyGradient& grad, double learning_rate);

  /// Flat parameter view, weights of every layer then biases of every layer.
  std::size_t parameter_count() const;
  double& parameter(std::size_t index);
  double gradient_entry(const PolicyGradient& grad, std::size_t index) const;

 private:
  void forward(std::span<const float> input, std::vector<std::vector<double>>& activations) const;

  std::vector<int> sizes_;
  std::vector<std::vector<double>> weights_;
  std::vector<std::vector<double>> biases_;
};

/// (S_t, A_t, R_{t+1}) for t = 0..steps-1 plus the terminal graph.
struct EpisodeTrace {
  std::size_t observation_size = 0;
  /// Row t is the observation the action at step t was sampled from.
  std::vector<float> observations;
  std::vector<int> actions;
  std::vector<double> rewards;
  Graph terminal_graph = Graph(1);
  double cumulative_reward = 0.0;
  std::uint64_t seed = 0;

  std::size_t steps() const noexcept { return actions.size(); }
  std::span<const float> observation(std::size_t t) const {
    return {observations.data() + t * observation_size, observation_size};
  }
};

/// Plays one episode sampling from `policy` over legal actions.
EpisodeTrace rollout(const Policy& policy, const EnvConfig& env, std::uint64_t seed);

/// Plays one episode with actions uniform over the legal set.
EpisodeTrace uniform_rollout(const EnvConfig& env, std::uint64_t seed);

struct CEConfig {
  int episodes_per_iteration = 200;
  double elite_fraction = 0.1;
  /// Top share of each pool carried into the next iteration.
  double super_fraction = 0.03;
  double learning_rate = 0.01;
  /// SGD minibatch size during the fit pass; 0 means one full-batch step.
  int batch_size = 32;
  int iterations = 500;
  std::vector<int> hidden = {128, 64};
  std::uint64_t seed = 0;
  int threads = 1;
  bool stop_on_counterexample = true;
  /// Append-only record of verified counterexamples.
  std::optional<std::filesystem::path> results_path;

  void validate() const;
};

struct IterationReport {
  int iteration = 0;
  double best_score = 0.0;
  double batch_best = 0.0;
  double elite_threshold = 0.0;
  double loss = 0.0;
};

struct CEResult {
  EpisodeTrace best;
  /// Best score seen up to and including each iteration.
  std::vector<double> history;
  std::optional<CounterexampleCheck> counterexample;
  int iterations_run = 0;
};

/// Episode plus the key used to break score ties (larger = more recent).
struct RankedEpisode {
  EpisodeTrace trace;
  std::uint64_t recency = 0;
};

/// Sorts best-first (ties: most recent first) and returns how many of the
/// front entries are elite for `fraction`.
std::size_t rank_elite(std::vector<RankedEpisode>& pool, double fraction);

CEResult ce_train(const CEConfig& cfg, const EnvConfig& env,
                  const std::function<void(const IterationReport&)>& progress = {});

/// Best of `episodes` uniform rollouts; episode i uses a seed derived from
/// (seed, i), so a longer search extends a shorter one.
EpisodeTrace random_search(const EnvConfig& env, int episodes, std::uint64_t seed,
                           int threads = 1);

/// One tab-separated results line: conjecture, n, g6, score (%.17g), seed.
std::string format_result_line(const std::string& conjecture, int n, const std::string& g6,
                               double score, std::uint64_t seed);

}  // namespace gconj
