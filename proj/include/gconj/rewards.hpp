#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gconj/graph.hpp"
#include "gconj/invariants.hpp"

namespace gconj {

/// A conjecture states f(G) < 0 (strict) or f(G) <= 0 (weak) for all G.
enum class Comparison { strict, weak };

/// Built-in score callable: graph, normalize flag, eigen precision.
using ScoreFunction = std::function<double(const Graph&, bool normalize, Precision)>;

/// External plugin contract: n*n 0/1 adjacency matrix and the normalize flag
/// in, one number out.
using AdjacencyScoreFunction =
    std::function<double(const std::vector<std::vector<int>>& adjacency, bool normalize)>;

struct Conjecture {
  std::string name;
  Comparison comparison = Comparison::weak;
  bool normalizable = true;
  ScoreFunction score_fn;

  double score(const Graph& g, bool normalize = false,
               Precision precision = Precision::standard) const;

  /// True iff `value` violates the conjectured bound by more than `tolerance`
  /// (weak: value > tol, strict: value > -tol).
  bool crosses(double value, double tolerance = kEigenTolerance) const;
};

/// sqrt(n-1) - 1 - lambda_1(G) - mu(G) on connected graphs, -n on disconnected
/// ones. Self-loops are stripped before scoring. normalize divides by n.
Conjecture wagner_conjecture_2_1(int n);

/// Wagner's original bound, sqrt(n-1) + 1 - lambda_1(G) - mu(G), i.e.
/// wagner_conjecture_2_1 shifted by +2: the star attains 0 and positive values
/// refute lambda_1 + mu >= sqrt(n-1) + 1. Same disconnected penalty.
Conjecture wagner_conjecture_2_1_original(int n);

/// max over t in [1,n] of (sum of the t largest Laplacian eigenvalues)
/// - e(G) - t(t+1)/2. Self-loops are stripped before scoring.
Conjecture brouwer_conjecture(int n);

/// Wraps an adjacency-matrix callable as a Conjecture.
Conjecture conjecture_from_plugin(std::string name, Comparison comparison,
                                  AdjacencyScoreFunction fn);

/// Name -> factory(n). The built-in instance holds "wagner21",
/// "wagner21_original" and "brouwer".
class ConjectureRegistry {
 public:
  using Factory = std::function<Conjecture(int n)>;

  void add(std::string name, std::string description, Factory factory);
  bool contains(std::string_view name) const;
  /// Throws std::invalid_argument for unknown names.
  Conjecture make(std::string_view name, int n) const;
  std::vector<std::string> names() const;
  std::string description(std::string_view name) const;

  static const ConjectureRegistry& builtin();

 private:
  struct Entry {
    std::string description;
    Factory factory;
  };
  std::map<std::string, Entry, std::less<>> entries_;
};

enum class RewardMode { sparse, incremental };

std::string_view to_string(RewardMode mode);
RewardMode parse_reward_mode(std::string_view text);

/// Turns a conjecture score into per-step rewards whose episode sum is
/// f(G_T) in both modes. Incremental mode pays f(G_t) - f(G_{t-1}) and adds
/// the captured baseline f(G_0) to the final step. One adapter per episode.
class RewardAdapter {
 public:
  RewardAdapter(std::shared_ptr<const Conjecture> conjecture, RewardMode mode, bool normalize);

  /// Captures the baseline for a new episode.
  void reset(const Graph& initial);

  double emit(const Graph& prev, const Graph& curr, int t, int horizon, bool terminal);

  double score(const Graph& g) const { return conjecture_->score(g, normalize_); }
  double baseline() const noexcept { return baseline_; }
  RewardMode mode() const noexcept { return mode_; }
  bool normalize() const noexcept { return normalize_; }
  const Conjecture& conjecture() const noexcept { return *conjecture_; }

 private:
  std::shared_ptr<const Conjecture> conjecture_;
  RewardMode mode_;
  bool normalize_;
  double baseline_ = 0.0;
  std::optional<Graph> cached_graph_;
  double cached_score_ = 0.0;
};

enum class Verdict { none, candidate, verified };

std::string_view to_string(Verdict v);

struct CounterexampleCheck {
  Verdict verdict = Verdict::none;
  double score = 0.0;
  /// Only computed for candidates.
  std::optional<double> tight_score;
  /// graph6 of the (loop-free) graph, set when verified.
  std::optional<std::string> g6;
};

/// Scores at standard precision; a crossing makes a candidate, which is
/// promoted to verified if the tight-precision re-score crosses too.
CounterexampleCheck check_counterexample(const Conjecture& c, const Graph& g);

}  // namespace gconj
