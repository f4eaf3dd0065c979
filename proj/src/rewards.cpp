#include "gconj/rewards.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gconj {

double Conjecture::score(const Graph& g, bool normalize, Precision precision) const {
  return score_fn(g, normalize && normalizable, precision);
}

bool Conjecture::crosses(double value, double tolerance) const {
  return comparison == Comparison::weak ? value > tolerance : value > -tolerance;
}

namespace {

void require_nodes(const Graph& g, int n, std::string_view name) {
  if (g.node_count() != n) {
    throw std::invalid_argument(std::string(name) + " conjecture built for n=" +
                                std::to_string(n) + " got a graph with " +
                                std::to_string(g.node_count()) + " nodes");
  }
}

Conjecture make_wagner(int n, std::string name, double offset) {
  if (n < 3) throw std::invalid_argument(name + " needs n >= 3");
  Conjecture c;
  c.name = name;
  c.comparison = Comparison::weak;
  c.score_fn = [n, name, offset](const Graph& graph, bool normalize, Precision precision) {
    require_nodes(graph, n, name);
    const Graph g = graph.has_self_loops() ? graph.without_self_loops() : graph;
    double value = 0.0;
    if (!is_connected(g)) {
      value = -static_cast<double>(n);
    } else {
      value = std::sqrt(static_cast<double>(n - 1)) + offset -
              adjacency_spectral_radius(g, precision) - max_matching(g).size;
    }
    return normalize ? value / n : value;
  };
  return c;
}

}  // namespace

Conjecture wagner_conjecture_2_1(int n) { return make_wagner(n, "wagner21", -1.0); }

Conjecture wagner_conjecture_2_1_original(int n) {
  return make_wagner(n, "wagner21_original", 1.0);
}

Conjecture brouwer_conjecture(int n) {
  if (n < 1) throw std::invalid_argument("brouwer needs n >= 1");
  Conjecture c;
  c.name = "brouwer";
  c.comparison = Comparison::weak;
  c.score_fn = [n](const Graph& graph, bool normalize, Precision precision) {
    require_nodes(graph, n, "brouwer");
    const Graph g = graph.has_self_loops() ? graph.without_self_loops() : graph;
    const Spectrum mu = laplacian_spectrum(g, precision);
    const double edges = static_cast<double>(g.edge_count());
    double prefix = 0.0;
    double best = -std::numeric_limits<double>::infinity();
    for (int t = 1; t <= n; ++t) {
      prefix += mu[t - 1];
      best = std::max(best, prefix - edges - t * (t + 1) / 2.0);
    }
    return normalize ? best / n : best;
  };
  return c;
}

Conjecture conjecture_from_plugin(std::string name, Comparison comparison,
                                  AdjacencyScoreFunction fn) {
  Conjecture c;
  c.name = std::move(name);
  c.comparison = comparison;
  c.score_fn = [fn = std::move(fn)](const Graph& g, bool normalize, Precision) {
    return fn(g.adjacency_matrix(), normalize);
  };
  return c;
}

void ConjectureRegistry::add(std::string name, std::string description, Factory factory) {
  entries_.insert_or_assign(std::move(name), Entry{std::move(description), std::move(factory)});
}

bool ConjectureRegistry::contains(std::string_view name) const {
  return entries_.find(name) != entries_.end();
}

Conjecture ConjectureRegistry::make(std::string_view name, int n) const {
  const auto it = entries_.find(name);
  if (it == entries_.end()) {
    throw std::invalid_argument("unknown conjecture '" + std::string(name) + "'");
  }
  return it->second.factory(n);
}

std::vector<std::string> ConjectureRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, entry] : entries_) out.push_back(name);
  return out;
}

std::string ConjectureRegistry::description(std::string_view name) const {
  const auto it = entries_.find(name);
  return it == entries_.end() ? std::string() : it->second.description;
}

const ConjectureRegistry& ConjectureRegistry::builtin() {
  static const ConjectureRegistry registry = [] {
    ConjectureRegistry r;
    r.add("wagner21", "sqrt(n-1) - 1 - lambda_1(G) - mu(G) <= 0 on connected graphs",
          wagner_conjecture_2_1);
    r.add("wagner21_original", "sqrt(n-1) + 1 - lambda_1(G) - mu(G) <= 0 on connected graphs",
          wagner_conjecture_2_1_original);
    r.add("brouwer", "sum of the t largest Laplacian eigenvalues <= e(G) + t(t+1)/2",
          brouwer_conjecture);
    return r;
  }();
  return registry;
}

std::string_view to_string(RewardMode mode) {
  return mode == RewardMode::sparse ? "sparse" : "incremental";
}

RewardMode parse_reward_mode(std::string_view text) {
  if (text == "sparse") return RewardMode::sparse;
  if (text == "incremental") return RewardMode::incremental;
  throw std::invalid_argument("unknown reward type '" + std::string(text) + "'");
}

RewardAdapter::RewardAdapter(std::shared_ptr<const Conjecture> conjecture, RewardMode mode,
                             bool normalize)
    : conjecture_(std::move(conjecture)), mode_(mode), normalize_(normalize) {
  if (!conjecture_ || !conjecture_->score_fn) {
    throw std::invalid_argument("reward adapter needs a conjecture with a score function");
  }
}

void RewardAdapter::reset(const Graph& initial) {
  cached_graph_.reset();
  if (mode_ == RewardMode::incremental) {
    baseline_ = score(initial);
    cached_graph_ = initial;
    cached_score_ = baseline_;
  } else {
    baseline_ = 0.0;
  }
}

double RewardAdapter::emit(const Graph& prev, const Graph& curr, int t, int horizon,
                           bool terminal) {
  if (t < 1 || t > horizon) {
    throw std::out_of_range("reward step " + std::to_string(t) + " outside [1, " +
                            std::to_string(horizon) + "]");
  }
  if (mode_ == RewardMode::sparse) return terminal ? score(curr) : 0.0;

  const double before = (cached_graph_ && *cached_graph_ == prev) ? cached_score_ : score(prev);
  const double after = (prev == curr) ? before : score(curr);
  cached_graph_ = curr;
  cached_score_ = after;
  double reward = after - before;
  if (terminal) reward += baseline_;
  return reward;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::none: return "none";
    case Verdict::candidate: return "candidate";
    case Verdict::verified: return "verified";
  }
  return "none";
}

CounterexampleCheck check_counterexample(const Conjecture& c, const Graph& g) {
  CounterexampleCheck out;
  out.score = c.score(g, false, Precision::standard);
  if (!c.crosses(out.score)) return out;
  out.verdict = Verdict::candidate;
  out.tight_score = c.score(g, false, Precision::tight);
  if (c.crosses(*out.tight_score)) {
    out.verdict = Verdict::verified;
    out.g6 = encode_g6(g.has_self_loops() ? g.without_self_loops() : g);
  }
  return out;
}

}  // namespace gconj
