#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gconj/graph.hpp"
#include "gconj/invariants.hpp"

namespace gconj {

struct LabeledGraph {
  Graph graph;
  Spectrum spectrum;
};

/// Each i<j pair present independently with probability p.
std::vector<Graph> gen_erdos_renyi(int n, double p, int count, std::uint64_t seed);

/// Ring lattice joining every node to its k/2 neighbors on each side, then
/// each lattice edge (u, u+j) is rewired with probability beta to (u, w) for
/// a uniform w that is neither u nor already adjacent to u. Plain variant:
/// the result may be disconnected. Edge count is always n*k/2.
std::vector<Graph> gen_watts_strogatz(int n, int k, double beta, int count, std::uint64_t seed);

/// Grows `seed_graph` to `target_n` nodes; every new node links to m distinct
/// existing nodes drawn with probability proportional to degree. When fewer
/// than m nodes have positive degree the draw is uniform over existing nodes.
std::vector<Graph> gen_barabasi_albert(int target_n, int m, const Graph& seed_graph, int count,
                                       std::uint64_t seed);

enum class WlVerdict { negative, positive };

/// 1-dimensional Weisfeiler-Leman color refinement run jointly on both
/// graphs from uniform colors. Negative means certainly non-isomorphic.
/// rounds < 0 refines until the joint partition is stable.
WlVerdict wl1_test(const Graph& a, const Graph& b, int rounds = -1);

/// All index pairs (i < j) that wl1_test would call positive, computed by
/// refining every graph against one shared color dictionary and grouping by
/// the stable color histogram.
std::vector<std::pair<std::size_t, std::size_t>> wl1_screen(const std::vector<Graph>& graphs);

struct DatasetRecipe {
  int n = 11;
  bool erdos_renyi = true;
  bool watts_strogatz = true;
  bool house_of_graphs = true;
  bool barabasi_albert = true;

  /// p = i / er_p_steps for i in [0, er_p_steps].
  int er_p_steps = 100;
  int er_per_p = 10;

  std::vector<int> ws_k = {4, 6, 8};
  std::vector<double> ws_beta = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  int ws_per_model = 20;

  int ba_m_min = 2;
  int ba_m_max = 9;
  /// Seeds with this many nodes (inclusive) start BA runs.
  int ba_seed_min_nodes = 3;
  int ba_seed_max_nodes = 10;
  int ba_per_seed_and_m = 1;
  int ba_per_synthetic_seed_and_m = 10;

  /// Optional House of Graphs download (graph6). Graphs with exactly n nodes
  /// enter the dataset directly; smaller ones seed BA runs.
  std::optional<std::vector<Graph>> hog_graphs;

  std::uint64_t seed = 0;
  int threads = 1;
};

struct DatasetCounts {
  std::size_t erdos_renyi = 0;
  std::size_t watts_strogatz = 0;
  std::size_t house_of_graphs = 0;
  std::size_t barabasi_albert = 0;
  bool synthetic_ba_seeds = false;

  std::size_t total() const noexcept {
    return erdos_renyi + watts_strogatz + house_of_graphs + barabasi_albert;
  }
};

struct Dataset {
  std::vector<LabeledGraph> records;
  DatasetCounts counts;
  std::vector<std::pair<std::size_t, std::size_t>> wl_positive_pairs;
};

/// Small seeds used when no House of Graphs file is given: complete graph,
/// cycle, star and path on every size in [min_nodes, max_nodes].
std::vector<Graph> synthetic_ba_seeds(int min_nodes, int max_nodes);

/// Generates (ER, WS, HoG, BA in that order), labels and screens.
Dataset build_dataset(const DatasetRecipe& recipe);

/// Eigenvalues joined by single spaces, 12 significant digits, no "-0".
std::string format_spectrum_line(const Spectrum& s);
Spectrum parse_spectrum_line(const std::string& line);

struct DatasetFiles {
  std::filesystem::path graphs;
  std::filesystem::path labels;
  std::filesystem::path wl_report;
};

/// Writes n<N>_graphs.g6, n<N>_laplacian_spectra.txt and
/// weisfeiler_leman_results.txt into `dir` (created if missing). Throws
/// std::runtime_error on I/O failure.
DatasetFiles write_dataset(const Dataset& dataset, int n, const std::filesystem::path& dir);

}  // namespace gconj
