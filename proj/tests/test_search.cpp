#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>

#include "doctest.h"
#include "helpers.hpp"

#include "gconj/search.hpp"

using namespace gconj;

namespace {

EnvConfig make_config(int n, Game game, const std::string& conjecture = "wagner21") {
  EnvConfig cfg;
  cfg.n = n;
  cfg.game = game;
  cfg.conjecture =
      std::make_shared<const Conjecture>(ConjectureRegistry::builtin().make(conjecture, n));
  return cfg;
}

/// Largest relative error between analytic and central-difference gradients.
double gradient_error(Policy& policy, const std::vector<float>& inputs,
                      const std::vector<int>& actions) {
  PolicyGradient grad;
  policy.loss(inputs, actions, &grad);
  double worst = 0;
  const double h = 1e-6;
  for (std::size_t p = 0; p < policy.parameter_count(); ++p) {
    double& w = policy.parameter(p);
    const double saved = w;
    w = saved + h;
    const double up = policy.loss(inputs, actions);
    w = saved - h;
    const double down = policy.loss(inputs, actions);
    w = saved;
    const double numeric = (up - down) / (2 * h);
    const double analytic = policy.gradient_entry(grad, p);
    const double scale = std::max({std::fabs(numeric), std::fabs(analytic), 1e-6});
    worst = std::max(worst, std::fabs(numeric - analytic) / scale);
  }
  return worst;
}

}  // namespace

TEST_CASE("policy gradients match finite differences") {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> sizes{1 + static_cast<int>(rng.below(6))};
    const int hidden = static_cast<int>(rng.below(3));
    for (int l = 0; l < hidden; ++l) sizes.push_back(1 + static_cast<int>(rng.below(6)));
    sizes.push_back(2 + static_cast<int>(rng.below(4)));
    Policy policy(sizes, rng.next());
    // Zero-initialized biases can sit exactly on a ReLU kink; move off it.
    for (std::size_t q = 0; q < policy.parameter_count(); ++q)
      policy.parameter(q) += 0.2 * rng.uniform() - 0.1;
    const int rows = 1 + static_cast<int>(rng.below(5));
    std::vector<float> inputs;
    std::vector<int> actions;
    for (int r = 0; r < rows; ++r) {
      for (int i = 0; i < sizes.front(); ++i)
        inputs.push_back(static_cast<float>(rng.uniform() * 2 - 1));
      actions.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(sizes.back()))));
    }
    CHECK(gradient_error(policy, inputs, actions) < 1e-4);
  }
}

TEST_CASE("policy probabilities respect the mask") {
  Policy policy({4, 8, 3}, 9);
  const std::vector<float> x{1, 0, 1, 0};
  const auto p = policy.probabilities(x);
  CHECK(p[0] + p[1] + p[2] == doctest::Approx(1.0));
  const std::vector<std::uint8_t> mask{1, 0, 1};
  const auto q = policy.probabilities(x, mask);
  CHECK(q[1] == 0.0);
  CHECK(q[0] + q[2] == doctest::Approx(1.0));
  CHECK(q[0] / q[2] == doctest::Approx(p[0] / p[2]));
  CHECK_THROWS_AS(policy.probabilities(std::vector<float>{1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Policy({4}, 1), std::invalid_argument);
}

TEST_CASE("a gradient step lowers the loss") {
  Policy policy({5, 16, 4}, 2);
  const std::vector<float> x{1, 0, 0, 1, 1, 0, 1, 1, 0, 0};
  const std::vector<int> a{2, 3};
  PolicyGradient g;
  const double before = policy.loss(x, a, &g);
  policy.apply_gradient(g, 0.05);
  CHECK(policy.loss(x, a) < before);
}

TEST_CASE("elite ranking breaks ties toward recent episodes") {
  std::vector<RankedEpisode> pool;
  const double scores[] = {1.0, 3.0, 3.0, 2.0, 3.0};
  for (std::uint64_t i = 0; i < 5; ++i) {
    RankedEpisode e;
    e.trace.cumulative_reward = scores[i];
    e.recency = i;
    pool.push_back(e);
  }
  CHECK(rank_elite(pool, 0.5) == 3);
  CHECK(pool[0].recency == 4);
  CHECK(pool[1].recency == 2);
  CHECK(pool[2].recency == 1);
  CHECK(pool[3].recency == 3);
  CHECK(rank_elite(pool, 0.01) == 1);
  CHECK(rank_elite(pool, 1.0) == 5);
  std::vector<RankedEpisode> empty;
  CHECK(rank_elite(empty, 0.5) == 0);
}

TEST_CASE("rollouts") {
  const EnvConfig cfg = make_config(6, Game::local);
  Policy policy({static_cast<int>(observation_layout(cfg).size()), 8, action_space_size(cfg)}, 1);
  const EpisodeTrace t = rollout(policy, cfg, 77);
  CHECK(t.steps() == 15);
  CHECK(t.observations.size() == 15 * t.observation_size);
  CHECK(t.cumulative_reward == doctest::Approx(cfg.conjecture->score(t.terminal_graph)));
  CHECK_FALSE(t.terminal_graph.has_self_loops());
  const EpisodeTrace again = rollout(policy, cfg, 77);
  CHECK(again.actions == t.actions);
  Policy wrong({3, 4, 2}, 1);
  CHECK_THROWS_AS(rollout(wrong, cfg, 1), std::invalid_argument);
  const EpisodeTrace u = uniform_rollout(cfg, 5);
  CHECK(u.steps() == 15);
}

TEST_CASE("CE is deterministic and independent of the thread count") {
  const EnvConfig env = make_config(6, Game::linear);
  CEConfig cfg;
  cfg.episodes_per_iteration = 40;
  cfg.iterations = 6;
  cfg.hidden = {16, 8};
  cfg.seed = 12;
  cfg.threads = 1;
  const CEResult a = ce_train(cfg, env);
  cfg.threads = 3;
  std::vector<IterationReport> reports;
  const CEResult b = ce_train(cfg, env, [&](const IterationReport& r) { reports.push_back(r); });
  CHECK(a.history == b.history);
  CHECK(a.best.actions == b.best.actions);
  CHECK(reports.size() == 6);
  CHECK(a.iterations_run == 6);
  for (std::size_t i = 1; i < a.history.size(); ++i) CHECK(a.history[i] >= a.history[i - 1]);
  CHECK(a.best.cumulative_reward == doctest::Approx(env.conjecture->score(a.best.terminal_graph)));
  cfg.seed = 13;
  CHECK(ce_train(cfg, env).history != a.history);
}

TEST_CASE("CE records and stops on a verified counterexample") {
  EnvConfig env;
  env.n = 4;
  env.game = Game::flip;
  env.conjecture = std::make_shared<const Conjecture>(conjecture_from_plugin(
      "few edges", Comparison::weak, [](const std::vector<std::vector<int>>& a, bool) {
        double e = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
          for (std::size_t j = i + 1; j < a.size(); ++j) e += a[i][j];
        return 2.5 - e;
      }));
  const auto path = std::filesystem::temp_directory_path() / "gconj_ce_results.tsv";
  std::filesystem::remove(path);
  CEConfig cfg;
  cfg.episodes_per_iteration = 20;
  cfg.iterations = 50;
  cfg.hidden = {8};
  cfg.results_path = path;
  const CEResult r = ce_train(cfg, env);
  REQUIRE(r.counterexample);
  CHECK(r.counterexample->verdict == Verdict::verified);
  CHECK(r.iterations_run < 50);
  std::ifstream f(path);
  std::string line;
  REQUIRE(std::getline(f, line));
  CHECK(line.rfind("few edges\t4\t", 0) == 0);
  std::filesystem::remove(path);
}

TEST_CASE("CE config validation") {
  CEConfig cfg;
  cfg.elite_fraction = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = CEConfig{};
  cfg.learning_rate = -1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = CEConfig{};
  cfg.episodes_per_iteration = 1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  CHECK_NOTHROW(CEConfig{}.validate());
}

TEST_CASE("random search extends shorter searches") {
  const EnvConfig env = make_config(5, Game::flip, "brouwer");
  const EpisodeTrace small = random_search(env, 10, 3, 1);
  const EpisodeTrace large = random_search(env, 40, 3, 2);
  CHECK(large.cumulative_reward >= small.cumulative_reward);
  CHECK(random_search(env, 40, 3, 1).actions == large.actions);
  CHECK_THROWS(random_search(env, 0, 3, 1));
}

TEST_CASE("results lines") {
  CHECK(format_result_line("wagner21", 18, "Q?", 0.5, 7) == "wagner21\t18\tQ?\t0.5\t7");
}
