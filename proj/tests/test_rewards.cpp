#include <cmath>
#include <memory>

#include "doctest.h"
#include "helpers.hpp"

#include "gconj/rewards.hpp"

using namespace gconj;

namespace {

const char* const kWagnerGraph = "QsaCCA?_?????????????????^w";

}  // namespace

TEST_CASE("wagner21 on stars is exactly -2") {
  for (int n = 3; n <= 32; ++n) {
    const Conjecture c = wagner_conjecture_2_1(n);
    CHECK(std::fabs(c.score(testing::star(n)) + 2.0) < 1e-9);
    CHECK(std::fabs(c.score(testing::star(n), false, Precision::tight) + 2.0) < 1e-9);
    CHECK(std::fabs(c.score(testing::star(n), true) + 2.0 / n) < 1e-9);
    CHECK(std::fabs(wagner_conjecture_2_1_original(n).score(testing::star(n))) < 1e-9);
  }
}

TEST_CASE("wagner21 closed forms and penalties") {
  const int n = 8;
  const Conjecture c = wagner_conjecture_2_1(n);
  CHECK(c.score(Graph(n)) == -n);
  CHECK(c.score(Graph(n), true) == -1.0);
  // K_n: lambda_1 = n-1, mu = n/2.
  CHECK(std::fabs(c.score(Graph::complete(n)) - (std::sqrt(7.0) - 1 - 7 - 4)) < 1e-9);
  Graph looped(n, true);
  for (int j = 1; j < n; ++j) looped.add_edge(0, j);
  looped.add_edge(3, 3);
  CHECK(std::fabs(c.score(looped) + 2.0) < 1e-9);
  CHECK_THROWS_AS(c.score(testing::star(7)), std::invalid_argument);
  CHECK_THROWS_AS(wagner_conjecture_2_1(2), std::invalid_argument);
}

TEST_CASE("the published 18-node graph") {
  const Graph g = decode_g6(kWagnerGraph);
  REQUIRE(g.node_count() == 18);
  CHECK(is_connected(g));
  const double original = wagner_conjecture_2_1_original(18).score(g, false, Precision::tight);
  CHECK(std::fabs(original - 0.02181) < 5e-6);
  CHECK(std::fabs(wagner_conjecture_2_1(18).score(g) - (original - 2.0)) < 1e-12);
  const CounterexampleCheck check = check_counterexample(wagner_conjecture_2_1_original(18), g);
  CHECK(check.verdict == Verdict::verified);
  REQUIRE(check.g6);
  CHECK(*check.g6 == kWagnerGraph);
  CHECK(check_counterexample(wagner_conjecture_2_1(18), g).verdict == Verdict::none);
}

TEST_CASE("brouwer matches the definition on frozen numpy spectra") {
  for (const auto& row : testing::read_rows("invariants_reference.txt")) {
    const Graph g = decode_g6(row[0]);
    const auto lap = testing::parse_doubles(row[2]);
    double best = -1e300, prefix = 0;
    for (std::size_t t = 1; t <= lap.size(); ++t) {
      prefix += lap[t - 1];
      best = std::max(best, prefix - g.edge_count() - t * (t + 1) / 2.0);
    }
    CHECK(std::fabs(brouwer_conjecture(g.node_count()).score(g) - best) < 1e-9);
  }
}

TEST_CASE("brouwer on small families") {
  // K_4: t = 3 gives 12 - 6 - 6 = 0, the equality case.
  CHECK(std::fabs(brouwer_conjecture(4).score(Graph::complete(4))) < 1e-9);
  CHECK(check_counterexample(brouwer_conjecture(4), Graph::complete(4)).verdict == Verdict::none);
  // Empty graph: t = 1 gives -1.
  CHECK(brouwer_conjecture(5).score(Graph(5)) == doctest::Approx(-1.0));
  CHECK(brouwer_conjecture(5).score(Graph(5), true) == doctest::Approx(-0.2));
}

TEST_CASE("crossing rules") {
  Conjecture weak;
  weak.comparison = Comparison::weak;
  Conjecture strict;
  strict.comparison = Comparison::strict;
  CHECK_FALSE(weak.crosses(0.0));
  CHECK_FALSE(weak.crosses(1e-10));
  CHECK(weak.crosses(1e-8));
  CHECK(strict.crosses(0.0));
  CHECK_FALSE(strict.crosses(-1e-8));
}

TEST_CASE("registry") {
  const auto& reg = ConjectureRegistry::builtin();
  CHECK(reg.names() == std::vector<std::string>{"brouwer", "wagner21", "wagner21_original"});
  CHECK(reg.make("wagner21", 6).name == "wagner21");
  try {
    reg.make("nope", 6);
    FAIL("expected an error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("unknown conjecture") != std::string::npos);
  }
  ConjectureRegistry custom;
  custom.add("edges", "edge count minus 3", [](int) {
    return conjecture_from_plugin("edges", Comparison::strict,
                                  [](const std::vector<std::vector<int>>& a, bool normalize) {
                                    double e = 0;
                                    for (std::size_t i = 0; i < a.size(); ++i)
                                      for (std::size_t j = i + 1; j < a.size(); ++j) e += a[i][j];
                                    return normalize ? (e - 3) / a.size() : e - 3;
                                  });
  });
  const Conjecture c = custom.make("edges", 4);
  CHECK(c.score(Graph::complete(4)) == 3.0);
  CHECK(c.score(Graph::complete(4), true) == 0.75);
  CHECK(c.comparison == Comparison::strict);
}

TEST_CASE("reward modes") {
  CHECK(parse_reward_mode("sparse") == RewardMode::sparse);
  CHECK(parse_reward_mode("incremental") == RewardMode::incremental);
  CHECK_THROWS_AS(parse_reward_mode("dense"), std::invalid_argument);
  CHECK(to_string(RewardMode::incremental) == "incremental");
}

TEST_CASE("reward adapter telescopes in both modes") {
  const int n = 7;
  auto c = std::make_shared<const Conjecture>(brouwer_conjecture(n));
  Rng rng(21);
  for (RewardMode mode : {RewardMode::sparse, RewardMode::incremental}) {
    for (bool normalize : {false, true}) {
      for (int episode = 0; episode < 50; ++episode) {
        RewardAdapter adapter(c, mode, normalize);
        Graph g = testing::random_graph(rng, n, 0.5);
        adapter.reset(g);
        const int horizon = 1 + static_cast<int>(rng.below(12));
        double total = 0;
        for (int t = 1; t <= horizon; ++t) {
          const Graph prev = g;
          g = flip_edge(g, EdgeIndex{rng.below(edge_slot_count(n, false))});
          const double r = adapter.emit(prev, g, t, horizon, t == horizon);
          if (mode == RewardMode::sparse && t < horizon) CHECK(r == 0.0);
          total += r;
        }
        CHECK(std::fabs(total - c->score(g, normalize)) < 1e-9);
      }
    }
  }
  RewardAdapter adapter(c, RewardMode::sparse, false);
  adapter.reset(Graph(n));
  CHECK_THROWS_AS(adapter.emit(Graph(n), Graph(n), 0, 3, false), std::out_of_range);
  CHECK_THROWS_AS(adapter.emit(Graph(n), Graph(n), 4, 3, true), std::out_of_range);
}

TEST_CASE("counterexample verdicts") {
  auto constant = [](double v) {
    return conjecture_from_plugin("const", Comparison::weak,
                                  [v](const std::vector<std::vector<int>>&, bool) { return v; });
  };
  CHECK(check_counterexample(constant(0.5), Graph(3)).verdict == Verdict::verified);
  CHECK(check_counterexample(constant(1e-12), Graph(3)).verdict == Verdict::none);
  CHECK(check_counterexample(constant(-1.0), Graph(3)).verdict == Verdict::none);
  const auto ok = check_counterexample(constant(0.5), Graph::complete(4));
  REQUIRE(ok.g6);
  CHECK(*ok.g6 == "C~");
  CHECK(to_string(Verdict::candidate) == "candidate");
}
