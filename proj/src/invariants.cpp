#include "gconj/invariants.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace gconj {

namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const std::vector<double>& a, int n) {
  double sum = 0.0;
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) sum += a[p * n + q] * a[p * n + q];
  return std::sqrt(2.0 * sum);
}

// Annihilates a[p][q] with one Jacobi rotation (upper triangle kept in sync
// with the lower one).
void rotate(std::vector<double>& a, int n, int p, int q) {
  const double apq = a[p * n + q];
  const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const double tau = s / (1.0 + c);
  a[p * n + p] -= t * apq;
  a[q * n + q] += t * apq;
  a[p * n + q] = a[q * n + p] = 0.0;
  for (int r = 0; r < n; ++r) {
    if (r == p || r == q) continue;
    const double arp = a[r * n + p];
    const double arq = a[r * n + q];
    a[r * n + p] = a[p * n + r] = arp - s * (arq + tau * arp);
    a[r * n + q] = a[q * n + r] = arq + s * (arp - tau * arq);
  }
}

}  // namespace

Spectrum symmetric_eigenvalues(std::vector<double> a, int n, Precision precision) {
  if (n < 0 || a.size() != static_cast<std::size_t>(n) * n) {
    throw std::invalid_argument("symmetric_eigenvalues: matrix is not n*n");
  }
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) a[q * n + p] = a[p * n + q];

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const double off = off_diagonal_norm(a, n);
    if (off == 0.0) break;
    if (precision == Precision::standard && off < kOffDiagonalTolerance) break;
    int rotations = 0;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        // Entries below the last bit of both diagonals cannot move them.
        const double scaled = 100.0 * std::abs(apq);
        if (sweep > 3 && std::abs(a[p * n + p]) + scaled == std::abs(a[p * n + p]) &&
            std::abs(a[q * n + q]) + scaled == std::abs(a[q * n + q])) {
          a[p * n + q] = a[q * n + p] = 0.0;
          continue;
        }
        rotate(a, n, p, q);
        ++rotations;
      }
    }
    if (rotations == 0) break;
  }

  Spectrum s;
  s.values.resize(n);
  for (int i = 0; i < n; ++i) s.values[i] = a[i * n + i];
  std::sort(s.values.begin(), s.values.end(), std::greater<>());
  return s;
}

Spectrum laplacian_spectrum(const Graph& g, Precision precision) {
  if (g.has_self_loops()) {
    throw std::invalid_argument("laplacian_spectrum: graph has self-loops; strip them first");
  }
  const int n = g.node_count();
  std::vector<double> l(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    l[i * n + i] = g.degree(i);
    for (int j = 0; j < n; ++j)
      if (i != j && g.has_edge(i, j)) l[i * n + j] = -1.0;
  }
  return symmetric_eigenvalues(std::move(l), n, precision);
}

Spectrum adjacency_spectrum(const Graph& g, Precision precision) {
  const int n = g.node_count();
  std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i * n + j] = g.has_edge(i, j) ? 1.0 : 0.0;
  return symmetric_eigenvalues(std::move(a), n, precision);
}

double adjacency_spectral_radius(const Graph& g, Precision precision) {
  return adjacency_spectrum(g, precision).values.front();
}

MatchingResult max_matching(const Graph& g) {
  const int n = g.node_count();
  std::vector<int> match(n, -1), parent(n), base(n);
  std::vector<char> used(n), blossom(n);
  std::vector<int> queue(n);

  auto neighbors = [&](int v) { return g.row(v) & ~(std::uint64_t{1} << v); };

  auto lca = [&](int a, int b) {
    std::vector<char> on_path(n, 0);
    for (;;) {
      a = base[a];
      on_path[a] = 1;
      if (match[a] == -1) break;
      a = parent[match[a]];
    }
    for (;;) {
      b = base[b];
      if (on_path[b]) return b;
      b = parent[match[b]];
    }
  };

  auto mark_path = [&](int v, int b, int child) {
    while (base[v] != b) {
      blossom[base[v]] = blossom[base[match[v]]] = 1;
      parent[v] = child;
      child = match[v];
      v = parent[match[v]];
    }
  };

  // BFS for an augmenting path from root; returns its free endpoint or -1.
  auto find_path = [&](int root) {
    std::fill(used.begin(), used.end(), 0);
    std::fill(parent.begin(), parent.end(), -1);
    for (int i = 0; i < n; ++i) base[i] = i;
    used[root] = 1;
    int head = 0, tail = 0;
    queue[tail++] = root;
    while (head < tail) {
      const int v = queue[head++];
      std::uint64_t nb = neighbors(v);
      while (nb != 0) {
        const int to = std::countr_zero(nb);
        nb &= nb - 1;
        if (base[v] == base[to] || match[v] == to) continue;
        if (to == root || (match[to] != -1 && parent[match[to]] != -1)) {
          const int cur_base = lca(v, to);
          std::fill(blossom.begin(), blossom.end(), 0);
          mark_path(v, cur_base, to);
          mark_path(to, cur_base, v);
          for (int i = 0; i < n; ++i) {
            if (blossom[base[i]]) {
              base[i] = cur_base;
              if (!used[i]) {
                used[i] = 1;
                queue[tail++] = i;
              }
            }
          }
        } else if (parent[to] == -1) {
          parent[to] = v;
          if (match[to] == -1) return to;
          used[match[to]] = 1;
          queue[tail++] = match[to];
        }
      }
    }
    return -1;
  };

  // Greedy start; blossom search only repairs what greedy missed.
  for (int v = 0; v < n; ++v) {
    if (match[v] != -1) continue;
    std::uint64_t nb = neighbors(v);
    while (nb != 0) {
      const int u = std::countr_zero(nb);
      nb &= nb - 1;
      if (match[u] == -1) {
        match[u] = v;
        match[v] = u;
        break;
      }
    }
  }

  for (int v = 0; v < n; ++v) {
    if (match[v] != -1) continue;
    int u = find_path(v);
    while (u != -1) {
      const int pv = parent[u];
      const int ppv = match[pv];
      match[u] = pv;
      match[pv] = u;
      u = ppv;
    }
  }

  MatchingResult result;
  for (int v = 0; v < n; ++v) {
    if (match[v] > v) result.edges.push_back({v, match[v]});
  }
  result.size = static_cast<int>(result.edges.size());
  return result;
}

MatchingResult brute_force_matching(const Graph& g) {
  const int n = g.node_count();
  if (n > 12) {
    throw std::invalid_argument("brute_force_matching: n=" + std::to_string(n) +
                                " exceeds the oracle limit of 12");
  }
  std::vector<NodePair> current, best;

  // free_mask: nodes not yet decided.
  std::function<void(std::uint64_t)> search = [&](std::uint64_t free_mask) {
    if (current.size() > best.size()) best = current;
    if (free_mask == 0) return;
    if (current.size() + static_cast<std::size_t>(std::popcount(free_mask)) / 2 <= best.size())
      return;
    const int v = std::countr_zero(free_mask);
    const std::uint64_t rest = free_mask & ~(std::uint64_t{1} << v);
    std::uint64_t nb = g.row(v) & rest;
    while (nb != 0) {
      const int u = std::countr_zero(nb);
      nb &= nb - 1;
      current.push_back({v, u});
      search(rest & ~(std::uint64_t{1} << u));
      current.pop_back();
    }
    search(rest);
  };
  const std::uint64_t all = (std::uint64_t{1} << n) - 1;
  search(all);

  return {static_cast<int>(best.size()), best};
}

}  // namespace gconj
