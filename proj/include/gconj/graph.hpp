#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gconj {

/// Largest node count a Graph can hold (one 64-bit adjacency word per row).
inline constexpr int kMaxNodes = 64;

/// How edge slots are numbered.
///
/// `lexicographic` is (0,1),(0,2),...,(0,n-1),(1,2),... and is the default
/// everywhere. `clique` numbers edges by growing cliques, (0,1),(0,2),(1,2),
/// (0,3),... which is the order used by the original cross-entropy
/// experiments on conjecture refutation. With self-loops enabled the (i,i)
/// slot is interleaved where it falls in the i <= j enumeration: right before
/// (i,i+1) in lexicographic order, right after (i-1,i) in clique order.
enum class EdgeOrder { lexicographic, clique };

struct EdgeIndex {
  std::size_t value = 0;
  friend auto operator<=>(const EdgeIndex&, const EdgeIndex&) = default;
};

struct NodePair {
  int i = 0;
  int j = 0;
  friend auto operator<=>(const NodePair&, const NodePair&) = default;
};

class SelfLoopError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class G6Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Number of edge slots m: n(n-1)/2, or n(n+1)/2 when self-loops are allowed.
std::size_t edge_slot_count(int n, bool allow_self_loops);

NodePair edge_index_to_pair(EdgeIndex k, int n, bool allow_self_loops,
                            EdgeOrder order = EdgeOrder::lexicographic);

/// Accepts the pair in either orientation.
EdgeIndex pair_to_edge_index(int i, int j, int n, bool allow_self_loops,
                             EdgeOrder order = EdgeOrder::lexicographic);

/// Undirected simple graph on a fixed node set 0..n-1, optionally with
/// self-loops. Rows are stored as 64-bit neighbor masks, so equality is
/// labeled equality (no isomorphism).
class Graph {
 public:
  explicit Graph(int n, bool allow_self_loops = false);

  static Graph empty(int n, bool allow_self_loops = false);
  /// All i<j pairs. Never contains self-loops.
  static Graph complete(int n, bool allow_self_loops = false);

  int node_count() const noexcept { return n_; }
  bool allows_self_loops() const noexcept { return allow_self_loops_; }

  bool has_edge(int i, int j) const;
  void set_edge(int i, int j, bool present);
  void add_edge(int i, int j) { set_edge(i, j, true); }
  void remove_edge(int i, int j) { set_edge(i, j, false); }
  void flip_edge(int i, int j) { set_edge(i, j, !has_edge(i, j)); }

  /// Neighbor mask of node i; bit i is set iff the self-loop (i,i) exists.
  std::uint64_t row(int i) const { return rows_[check_node(i)]; }
  /// Number of simple edges at i (self-loop not counted).
  int degree(int i) const;

  /// Stored pairs, self-loops included.
  std::size_t edge_count() const noexcept;
  std::size_t self_loop_count() const noexcept;
  bool has_self_loops() const noexcept { return self_loop_count() != 0; }

  /// Pairs (i,j) with i <= j in lexicographic order.
  std::vector<NodePair> edges() const;

  /// Copy with every (i,i) pair removed.
  Graph without_self_loops() const;

  /// Row-major n*n 0/1 matrix.
  std::vector<std::vector<int>> adjacency_matrix() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int check_node(int i) const;

  int n_;
  bool allow_self_loops_;
  std::vector<std::uint64_t> rows_;
};

enum class InitialKind { empty, complete };

Graph new_graph(int n, InitialKind initial, bool allow_self_loops = false);
/// Decodes `g6` and checks that it describes exactly n nodes.
Graph new_graph_from_g6(int n, std::string_view g6, bool allow_self_loops = false);

/// Returns g with slot e toggled. Throws SelfLoopError if e names (i,i) on a
/// graph that forbids self-loops.
Graph flip_edge(const Graph& g, EdgeIndex e, EdgeOrder order = EdgeOrder::lexicographic);

/// BFS from node 0 over simple edges; the one-node graph is connected.
bool is_connected(const Graph& g);
int component_count(const Graph& g);

/// graph6 line without header or newline. Requires no self-loops.
std::string encode_g6(const Graph& g);
/// Parses one graph6 line. A leading ">>graph6<<" header and trailing
/// whitespace are tolerated.
Graph decode_g6(std::string_view text, bool allow_self_loops = false);

/// Reads every non-blank line of a graph6 stream. Errors name the 1-based line.
std::vector<Graph> read_g6_stream(std::istream& in);

}  // namespace gconj
