#include "gconj/graph.hpp"

#include <bit>
#include <string>

namespace gconj {

namespace {

void check_node_count(int n) {
  if (n < 1 || n > kMaxNodes) {
    throw std::invalid_argument("node count must be in [1, " + std::to_string(kMaxNodes) +
                                "], got " + std::to_string(n));
  }
}

}  // namespace

std::size_t edge_slot_count(int n, bool allow_self_loops) {
  check_node_count(n);
  const auto un = static_cast<std::size_t>(n);
  return allow_self_loops ? un * (un + 1) / 2 : un * (un - 1) / 2;
}

NodePair edge_index_to_pair(EdgeIndex k, int n, bool allow_self_loops, EdgeOrder order) {
  const std::size_t m = edge_slot_count(n, allow_self_loops);
  if (k.value >= m) {
    throw std::out_of_range("edge index " + std::to_string(k.value) + " out of range [0, " +
                            std::to_string(m) + ")");
  }
  const std::size_t shift = allow_self_loops ? 0 : 1;
  if (order == EdgeOrder::lexicographic) {
    std::size_t rest = k.value;
    for (int i = 0; i < n; ++i) {
      const std::size_t row_len = static_cast<std::size_t>(n - i) - shift;
      if (rest < row_len) return {i, i + static_cast<int>(rest + shift)};
      rest -= row_len;
    }
  } else {
    // Column j holds j+1-shift slots.
    std::size_t rest = k.value;
    for (int j = 0; j < n; ++j) {
      const std::size_t col_len = static_cast<std::size_t>(j) + 1 - shift;
      if (rest < col_len) return {static_cast<int>(rest), j};
      rest -= col_len;
    }
  }
  throw std::logic_error("edge_index_to_pair: unreachable");
}

EdgeIndex pair_to_edge_index(int i, int j, int n, bool allow_self_loops, EdgeOrder order) {
  check_node_count(n);
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= n) throw std::out_of_range("node out of range");
  if (i == j && !allow_self_loops) {
    throw SelfLoopError("self-loop (" + std::to_string(i) + "," + std::to_string(i) +
                        ") has no slot when self-loops are disabled");
  }
  const auto ui = static_cast<std::size_t>(i);
  const auto uj = static_cast<std::size_t>(j);
  const auto un = static_cast<std::size_t>(n);
  if (order == EdgeOrder::lexicographic) {
    // Rows before i hold sum_{r<i} (n - r - shift) slots.
    const std::size_t shift = allow_self_loops ? 0 : 1;
    const std::size_t before = ui * (un - shift) - (ui * (ui - 1)) / 2;
    return {before + (uj - ui - shift)};
  }
  return {allow_self_loops ? uj * (uj + 1) / 2 + ui : uj * (uj - 1) / 2 + ui};
}

Graph::Graph(int n, bool allow_self_loops)
    : n_(n), allow_self_loops_(allow_self_loops) {
  check_node_count(n);
  rows_.assign(static_cast<std::size_t>(n), 0);
}

Graph Graph::empty(int n, bool allow_self_loops) { return Graph(n, allow_self_loops); }

Graph Graph::complete(int n, bool allow_self_loops) {
  Graph g(n, allow_self_loops);
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  for (int i = 0; i < n; ++i) g.rows_[i] = all & ~(std::uint64_t{1} << i);
  return g;
}

int Graph::check_node(int i) const {
  if (i < 0 || i >= n_) {
    throw std::out_of_range("node " + std::to_string(i) + " out of range for n=" +
                            std::to_string(n_));
  }
  return i;
}

bool Graph::has_edge(int i, int j) const {
  check_node(j);
  return (rows_[check_node(i)] >> j) & 1U;
}

void Graph::set_edge(int i, int j, bool present) {
  check_node(i);
  check_node(j);
  if (i == j && present && !allow_self_loops_) {
    throw SelfLoopError("cannot create self-loop (" + std::to_string(i) + "," +
                        std::to_string(i) + "): self-loops are disabled");
  }
  const std::uint64_t bi = std::uint64_t{1} << i;
  const std::uint64_t bj = std::uint64_t{1} << j;
  if (present) {
    rows_[i] |= bj;
    rows_[j] |= bi;
  } else {
    rows_[i] &= ~bj;
    rows_[j] &= ~bi;
  }
}

int Graph::degree(int i) const {
  return std::popcount(rows_[check_node(i)] & ~(std::uint64_t{1} << i));
}

std::size_t Graph::self_loop_count() const noexcept {
  std::size_t loops = 0;
  for (int i = 0; i < n_; ++i) loops += (rows_[i] >> i) & 1U;
  return loops;
}

std::size_t Graph::edge_count() const noexcept {
  std::size_t ends = 0;
  for (const auto r : rows_) ends += static_cast<std::size_t>(std::popcount(r));
  const std::size_t loops = self_loop_count();
  return (ends - loops) / 2 + loops;
}

std::vector<NodePair> Graph::edges() const {
  std::vector<NodePair> out;
  for (int i = 0; i < n_; ++i) {
    std::uint64_t upper = rows_[i] >> i;
    while (upper != 0) {
      const int off = std::countr_zero(upper);
      out.push_back({i, i + off});
      upper &= upper - 1;
    }
  }
  return out;
}

Graph Graph::without_self_loops() const {
  Graph g = *this;
  for (int i = 0; i < n_; ++i) g.rows_[i] &= ~(std::uint64_t{1} << i);
  return g;
}

std::vector<std::vector<int>> Graph::adjacency_matrix() const {
  std::vector<std::vector<int>> a(n_, std::vector<int>(n_, 0));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) a[i][j] = static_cast<int>((rows_[i] >> j) & 1U);
  return a;
}

Graph new_graph(int n, InitialKind initial, bool allow_self_loops) {
  return initial == InitialKind::complete ? Graph::complete(n, allow_self_loops)
                                          : Graph::empty(n, allow_self_loops);
}

Graph new_graph_from_g6(int n, std::string_view g6, bool allow_self_loops) {
  Graph g = decode_g6(g6, allow_self_loops);
  if (g.node_count() != n) {
    throw std::invalid_argument("graph6 text has " + std::to_string(g.node_count()) +
                                " nodes, expected " + std::to_string(n));
  }
  return g;
}

Graph flip_edge(const Graph& g, EdgeIndex e, EdgeOrder order) {
  const auto [i, j] = edge_index_to_pair(e, g.node_count(), g.allows_self_loops(), order);
  Graph out = g;
  out.flip_edge(i, j);
  return out;
}

namespace {

std::uint64_t reach_from(const Graph& g, int start) {
  std::uint64_t seen = std::uint64_t{1} << start;
  std::uint64_t frontier = seen;
  while (frontier != 0) {
    std::uint64_t next = 0;
    while (frontier != 0) {
      const int v = std::countr_zero(frontier);
      frontier &= frontier - 1;
      next |= g.row(v);
    }
    frontier = next & ~seen;
    seen |= next;
  }
  return seen;
}

}  // namespace

bool is_connected(const Graph& g) {
  const int n = g.node_count();
  return std::popcount(reach_from(g, 0)) == n;
}

int component_count(const Graph& g) {
  const int n = g.node_count();
  std::uint64_t unseen = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  int components = 0;
  while (unseen != 0) {
    unseen &= ~reach_from(g, std::countr_zero(unseen));
    ++components;
  }
  return components;
}

std::string encode_g6(const Graph& g) {
  if (g.has_self_loops()) throw G6Error("graph6 cannot encode self-loops");
  const int n = g.node_count();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else {
    out.push_back(static_cast<char>(126));
    out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
    out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
    out.push_back(static_cast<char>((n & 63) + 63));
  }
  int chunk = 0;
  int filled = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      chunk = (chunk << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(chunk + 63));
        chunk = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((chunk << (6 - filled)) + 63));
  return out;
}

Graph decode_g6(std::string_view text, bool allow_self_loops) {
  constexpr std::string_view header = ">>graph6<<";
  if (text.starts_with(header)) text.remove_prefix(header.size());
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ' ||
                           text.back() == '\t')) {
    text.remove_suffix(1);
  }
  if (text.empty()) throw G6Error("empty graph6 line");
  if (text.front() == ':' || text.front() == ';') throw G6Error("sparse6 input is not supported");
  if (text.front() == '&') throw G6Error("digraph6 input is not supported");
  for (const char c : text) {
    if (c < 63 || c > 126) {
      throw G6Error(std::string("invalid graph6 character '") + c + "'");
    }
  }
  std::size_t pos = 0;
  int n = 0;
  if (text[0] != 126) {
    n = text[0] - 63;
    pos = 1;
  } else {
    if (text.size() >= 2 && text[1] == 126) {
      throw G6Error("graph6 node count exceeds supported maximum of " +
                    std::to_string(kMaxNodes));
    }
    if (text.size() < 4) throw G6Error("truncated graph6 size header");
    n = ((text[1] - 63) << 12) | ((text[2] - 63) << 6) | (text[3] - 63);
    pos = 4;
  }
  if (n == 0) throw G6Error("graph6 graph with zero nodes is not supported");
  if (n > kMaxNodes) {
    throw G6Error("graph6 node count " + std::to_string(n) + " exceeds supported maximum of " +
                  std::to_string(kMaxNodes));
  }
  const std::size_t bits = static_cast<std::size_t>(n) * (n - 1) / 2;
  const std::size_t bytes = (bits + 5) / 6;
  if (text.size() - pos != bytes) {
    throw G6Error("graph6 body has " + std::to_string(text.size() - pos) +
                  " bytes, expected " + std::to_string(bytes) + " for n=" + std::to_string(n));
  }
  Graph g(n, allow_self_loops);
  std::size_t bit = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++bit) {
      const int byte = text[pos + bit / 6] - 63;
      if ((byte >> (5 - bit % 6)) & 1) g.add_edge(i, j);
    }
  }
  if (bits % 6 != 0) {
    const int last = text.back() - 63;
    if ((last & ((1 << (6 - bits % 6)) - 1)) != 0) throw G6Error("nonzero graph6 padding bits");
  }
  return g;
}

std::vector<Graph> read_g6_stream(std::istream& in) {
  std::vector<Graph> graphs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      graphs.push_back(decode_g6(line));
    } catch (const G6Error& e) {
      throw G6Error("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return graphs;
}

}  // namespace gconj
