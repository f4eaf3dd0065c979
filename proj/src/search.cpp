#include "gconj/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "gconj/random.hpp"
#include "parallel.hpp"

namespace gconj {

namespace {

constexpr std::uint64_t kInitTag = 0x1a17;
constexpr std::uint64_t kFitTag = 0xf17;
constexpr std::uint64_t kRandomSearchTag = 0x5ea5c4;

void softmax_in_place(std::vector<double>& z) {
  const double top = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double& v : z) {
    v = std::exp(v - top);
    sum += v;
  }
  for (double& v : z) v /= sum;
}

std::size_t elite_count(std::size_t pool, double fraction) {
  const auto k = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(pool) - 1e-9));
  return std::clamp<std::size_t>(k, 1, pool);
}

int sample_index(const std::vector<double>& probs, Rng& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  int last_positive = -1;
  for (std::size_t a = 0; a < probs.size(); ++a) {
    if (probs[a] <= 0.0) continue;
    last_positive = static_cast<int>(a);
    acc += probs[a];
    if (u < acc) return last_positive;
  }
  return last_positive;
}

template <typename ChooseAction>
EpisodeTrace play(const EnvConfig& cfg, std::uint64_t seed, ChooseAction&& choose) {
  GraphEnv env(cfg);
  Rng rng(seed);
  EpisodeTrace trace;
  trace.seed = seed;
  trace.observation_size = env.layout().size();
  trace.observations.reserve(trace.observation_size * static_cast<std::size_t>(env.horizon()));
  Observation obs = env.reset();
  while (!env.state().done) {
    const int action = choose(env, obs.values, rng);
    trace.observations.insert(trace.observations.end(), obs.values.begin(), obs.values.end());
    StepResult step = env.step(action);
    trace.actions.push_back(action);
    trace.rewards.push_back(step.reward);
    trace.cumulative_reward += step.reward;
    obs = std::move(step.observation);
  }
  trace.terminal_graph = env.state().graph;
  return trace;
}

}  // namespace

Policy::Policy(std::vector<int> layer_sizes, std::uint64_t seed) : sizes_(std::move(layer_sizes)) {
  if (sizes_.size() < 2) throw std::invalid_argument("policy needs at least input and output layers");
  for (const int s : sizes_) {
    if (s < 1) throw std::invalid_argument("policy layer sizes must be positive");
  }
  Rng rng(seed);
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    const auto in = static_cast<std::size_t>(sizes_[l]);
    const auto out = static_cast<std::size_t>(sizes_[l + 1]);
    const double limit = std::sqrt(6.0 / static_cast<double>(in));
    std::vector<double> w(in * out);
    for (double& v : w) v = (2.0 * rng.uniform() - 1.0) * limit;
    weights_.push_back(std::move(w));
    biases_.emplace_back(out, 0.0);
  }
}

void Policy::forward(std::span<const float> input,
                     std::vector<std::vector<double>>& activations) const {
  if (input.size() != static_cast<std::size_t>(input_size())) {
    throw std::invalid_argument("policy input has " + std::to_string(input.size()) +
                                " values, expected " + std::to_string(input_size()));
  }
  const std::size_t layers = weights_.size();
  activations.resize(layers + 1);
  activations[0].assign(input.begin(), input.end());
  for (std::size_t l = 0; l < layers; ++l) {
    const auto out = static_cast<std::size_t>(sizes_[l + 1]);
    const std::vector<double>& a = activations[l];
    std::vector<double>& z = activations[l + 1];
    z = biases_[l];
    const double* w = weights_[l].data();
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double x = a[i];
      if (x == 0.0) continue;
      const double* row = w + i * out;
      for (std::size_t o = 0; o < out; ++o) z[o] += x * row[o];
    }
    if (l + 1 < layers) {
      for (double& v : z) v = std::max(v, 0.0);
    } else {
      softmax_in_place(z);
    }
  }
}

std::vector<double> Policy::probabilities(std::span<const float> input,
                                          std::span<const std::uint8_t> mask) const {
  std::vector<std::vector<double>> activations;
  forward(input, activations);
  std::vector<double> probs = std::move(activations.back());
  if (mask.empty()) return probs;
  if (mask.size() != probs.size()) throw std::invalid_argument("action mask size mismatch");
  double kept = 0.0;
  for (std::size_t a = 0; a < probs.size(); ++a) {
    if (!mask[a]) probs[a] = 0.0;
    kept += probs[a];
  }
  if (kept > 0.0) {
    for (double& p : probs) p /= kept;
  } else {
    // Every legal action underflowed; fall back to uniform over the legal set.
    const auto legal = static_cast<double>(std::count_if(mask.begin(), mask.end(),
                                                         [](std::uint8_t m) { return m != 0; }));
    for (std::size_t a = 0; a < probs.size(); ++a) probs[a] = mask[a] ? 1.0 / legal : 0.0;
  }
  return probs;
}

double Policy::loss(std::span<const float> inputs, std::span<const int> actions,
                    PolicyGradient* grad) const {
  const auto in = static_cast<std::size_t>(input_size());
  const std::size_t rows = actions.size();
  if (rows == 0 || inputs.size() != rows * in) {
    throw std::invalid_argument("policy loss: inputs do not match the number of actions");
  }
  const std::size_t layers = weights_.size();
  if (grad) {
    grad->weights.resize(layers);
    grad->biases.resize(layers);
    for (std::size_t l = 0; l < layers; ++l) {
      grad->weights[l].assign(weights_[l].size(), 0.0);
      grad->biases[l].assign(biases_[l].size(), 0.0);
    }
  }
  const double scale = 1.0 / static_cast<double>(rows);
  std::vector<std::vector<double>> act;
  std::vector<double> delta, prev_delta;
  double total = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    const int target = actions[r];
    if (target < 0 || target >= output_size()) throw std::out_of_range("policy loss: bad action");
    forward(inputs.subspan(r * in, in), act);
    total -= std::log(std::max(act.back()[static_cast<std::size_t>(target)], 1e-300));
    if (!grad) continue;

    delta = act.back();
    delta[static_cast<std::size_t>(target)] -= 1.0;
    for (double& d : delta) d *= scale;
    for (std::size_t l = layers; l-- > 0;) {
      const auto out = static_cast<std::size_t>(sizes_[l + 1]);
      const std::vector<double>& a = act[l];
      double* gw = grad->weights[l].data();
      for (std::size_t o = 0; o < out; ++o) grad->biases[l][o] += delta[o];
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) continue;
        double* row = gw + i * out;
        for (std::size_t o = 0; o < out; ++o) row[o] += a[i] * delta[o];
      }
      if (l == 0) break;
      prev_delta.assign(a.size(), 0.0);
      const double* w = weights_[l].data();
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] <= 0.0) continue;  // ReLU gate
        const double* row = w + i * out;
        double s = 0.0;
        for (std::size_t o = 0; o < out; ++o) s += row[o] * delta[o];
        prev_delta[i] = s;
      }
      std::swap(delta, prev_delta);
    }
  }
  return total * scale;
}

void Policy::apply_gradient(const PolicyGradient& grad, double learning_rate) {
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    for (std::size_t k = 0; k < weights_[l].size(); ++k)
      weights_[l][k] -= learning_rate * grad.weights[l][k];
    for (std::size_t k = 0; k < biases_[l].size(); ++k)
      biases_[l][k] -= learning_rate * grad.biases[l][k];
  }
}

std::size_t Policy::parameter_count() const {
  std::size_t total = 0;
  for (std::size_t l = 0; l < weights_.size(); ++l)
    total += weights_[l].size() + biases_[l].size();
  return total;
}

double& Policy::parameter(std::size_t index) {
  for (auto& w : weights_) {
    if (index < w.size()) return w[index];
    index -= w.size();
  }
  for (auto& b : biases_) {
    if (index < b.size()) return b[index];
    index -= b.size();
  }
  throw std::out_of_range("policy parameter index out of range");
}

double Policy::gradient_entry(const PolicyGradient& grad, std::size_t index) const {
  for (const auto& w : grad.weights) {
    if (index < w.size()) return w[index];
    index -= w.size();
  }
  for (const auto& b : grad.biases) {
    if (index < b.size()) return b[index];
    index -= b.size();
  }
  throw std::out_of_range("gradient index out of range");
}

EpisodeTrace rollout(const Policy& policy, const EnvConfig& env, std::uint64_t seed) {
  if (policy.output_size() != action_space_size(env) ||
      static_cast<std::size_t>(policy.input_size()) != observation_layout(env).size()) {
    throw std::invalid_argument("policy dimensions do not match the environment");
  }
  return play(env, seed, [&](const GraphEnv& e, const std::vector<float>& obs, Rng& rng) {
    const auto mask = e.legal_action_mask();
    return sample_index(policy.probabilities(obs, mask), rng);
  });
}

EpisodeTrace uniform_rollout(const EnvConfig& env, std::uint64_t seed) {
  return play(env, seed, [](const GraphEnv& e, const std::vector<float>&, Rng& rng) {
    const auto legal = e.legal_actions();
    return legal[rng.below(legal.size())];
  });
}

void CEConfig::validate() const {
  if (episodes_per_iteration < 2) throw std::invalid_argument("episodes_per_iteration must be >= 2");
  if (!(elite_fraction > 0.0 && elite_fraction <= 1.0))
    throw std::invalid_argument("elite_fraction must be in (0, 1]");
  if (!(super_fraction >= 0.0 && super_fraction <= 1.0))
    throw std::invalid_argument("super_fraction must be in [0, 1]");
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be positive");
  if (batch_size < 0) throw std::invalid_argument("batch_size must be >= 0");
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  for (const int h : hidden)
    if (h < 1) throw std::invalid_argument("hidden layer sizes must be positive");
}

std::size_t rank_elite(std::vector<RankedEpisode>& pool, double fraction) {
  if (pool.empty()) return 0;
  std::stable_sort(pool.begin(), pool.end(), [](const RankedEpisode& a, const RankedEpisode& b) {
    if (a.trace.cumulative_reward != b.trace.cumulative_reward)
      return a.trace.cumulative_reward > b.trace.cumulative_reward;
    return a.recency > b.recency;
  });
  return elite_count(pool.size(), fraction);
}

std::string format_result_line(const std::string& conjecture, int n, const std::string& g6,
                               double score, std::uint64_t seed) {
  char number[64];
  std::snprintf(number, sizeof number, "%.17g", score);
  return conjecture + "\t" + std::to_string(n) + "\t" + g6 + "\t" + number + "\t" +
         std::to_string(seed);
}

CEResult ce_train(const CEConfig& cfg, const EnvConfig& env,
                  const std::function<void(const IterationReport&)>& progress) {
  cfg.validate();
  env.validate();
  std::vector<int> sizes;
  sizes.push_back(static_cast<int>(observation_layout(env).size()));
  sizes.insert(sizes.end(), cfg.hidden.begin(), cfg.hidden.end());
  sizes.push_back(action_space_size(env));
  Policy policy(sizes, derive_seed(cfg.seed, kInitTag));
  const Conjecture& conjecture = *env.conjecture;

  CEResult result;
  bool have_best = false;
  std::vector<RankedEpisode> supers;
  std::set<std::string> reported;
  const auto batch = static_cast<std::size_t>(cfg.episodes_per_iteration);

  for (int it = 0; it < cfg.iterations; ++it) {
    std::vector<EpisodeTrace> traces(batch);
    detail::parallel_for(batch, cfg.threads, [&](std::size_t i) {
      traces[i] = rollout(policy, env, derive_seed(cfg.seed, static_cast<std::uint64_t>(it) + 1, i));
    });

    // Counterexample screening on this batch's terminal graphs, best first.
    std::vector<std::size_t> order(batch);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return traces[a].cumulative_reward > traces[b].cumulative_reward;
    });
    bool stop = false;
    for (const std::size_t i : order) {
      if (!conjecture.crosses(traces[i].cumulative_reward, 0.0)) break;
      const CounterexampleCheck check = check_counterexample(conjecture, traces[i].terminal_graph);
      if (check.verdict != Verdict::verified || !reported.insert(*check.g6).second) continue;
      if (cfg.results_path) {
        std::ofstream out(*cfg.results_path, std::ios::app);
        if (!out) throw std::runtime_error("cannot open results file " + cfg.results_path->string());
        out << format_result_line(conjecture.name, env.n, *check.g6, *check.tight_score,
                                  traces[i].seed)
            << '\n';
      }
      if (!result.counterexample) result.counterexample = check;
      if (cfg.stop_on_counterexample) stop = true;
    }

    std::vector<RankedEpisode> pool;
    pool.reserve(batch + supers.size());
    for (std::size_t i = 0; i < batch; ++i) {
      pool.push_back({std::move(traces[i]), (static_cast<std::uint64_t>(it) + 1) << 32 | i});
    }
    for (auto& s : supers) pool.push_back(std::move(s));
    supers.clear();
    const std::size_t elites = rank_elite(pool, cfg.elite_fraction);

    if (!have_best || pool.front().trace.cumulative_reward > result.best.cumulative_reward) {
      result.best = pool.front().trace;
      have_best = true;
    }
    result.history.push_back(result.best.cumulative_reward);
    result.iterations_run = it + 1;

    IterationReport report;
    report.iteration = it;
    report.best_score = result.best.cumulative_reward;
    report.batch_best = pool.front().trace.cumulative_reward;
    report.elite_threshold = pool[elites - 1].trace.cumulative_reward;

    if (!stop) {
      std::vector<std::pair<std::size_t, std::size_t>> samples;  // (pool entry, step)
      for (std::size_t e = 0; e < elites; ++e)
        for (std::size_t t = 0; t < pool[e].trace.steps(); ++t) samples.emplace_back(e, t);
      Rng shuffle_rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(it) + 1, kFitTag));
      for (std::size_t i = samples.size(); i > 1; --i)
        std::swap(samples[i - 1], samples[shuffle_rng.below(i)]);

      const std::size_t step =
          cfg.batch_size == 0 ? samples.size() : static_cast<std::size_t>(cfg.batch_size);
      std::vector<float> inputs;
      std::vector<int> actions;
      PolicyGradient grad;
      double loss_sum = 0.0;
      std::size_t minibatches = 0;
      for (std::size_t start = 0; start < samples.size(); start += step) {
        const std::size_t end = std::min(samples.size(), start + step);
        inputs.clear();
        actions.clear();
        for (std::size_t s = start; s < end; ++s) {
          const auto& [e, t] = samples[s];
          const auto row = pool[e].trace.observation(t);
          inputs.insert(inputs.end(), row.begin(), row.end());
          actions.push_back(pool[e].trace.actions[t]);
        }
        loss_sum += policy.loss(inputs, actions, &grad);
        policy.apply_gradient(grad, cfg.learning_rate);
        ++minibatches;
      }
      report.loss = minibatches ? loss_sum / static_cast<double>(minibatches) : 0.0;

      const std::size_t keep = std::min(
          pool.size(), static_cast<std::size_t>(std::ceil(cfg.super_fraction * pool.size() - 1e-9)));
      for (std::size_t i = 0; i < keep; ++i) supers.push_back(std::move(pool[i]));
    }
    if (progress) progress(report);
    if (stop) break;
  }
  return result;
}

EpisodeTrace random_search(const EnvConfig& env, int episodes, std::uint64_t seed, int threads) {
  if (episodes < 1) throw std::invalid_argument("random search needs at least one episode");
  env.validate();
  const auto count = static_cast<std::size_t>(episodes);
  const std::size_t workers = std::max<std::size_t>(
      1, std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, threads))));
  struct Best {
    std::optional<EpisodeTrace> trace;
    std::size_t index = 0;
  };
  std::vector<Best> best(workers);
  detail::parallel_for(workers, static_cast<int>(workers), [&](std::size_t w) {
    for (std::size_t i = w; i < count; i += workers) {
      EpisodeTrace t = uniform_rollout(env, derive_seed(seed, kRandomSearchTag, i));
      if (!best[w].trace || t.cumulative_reward > best[w].trace->cumulative_reward) {
        best[w].trace = std::move(t);
        best[w].index = i;
      }
    }
  });
  // Earliest episode wins ties, independent of the worker split.
  std::size_t pick = 0;
  for (std::size_t w = 1; w < workers; ++w) {
    const double a = best[w].trace->cumulative_reward;
    const double b = best[pick].trace->cumulative_reward;
    if (a > b || (a == b && best[w].index < best[pick].index)) pick = w;
  }
  return std::move(*best[pick].trace);
}

}  // namespace gconj
