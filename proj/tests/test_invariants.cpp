#include <cmath>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"

#include "gconj/invariants.hpp"

using namespace gconj;

namespace {

/// Sylvester inertia: number of eigenvalues of symmetric `a` below x, from the
/// signs of the LDL^T pivots of Q (a - xI) Q^T. The random orthogonal Q keeps
/// the inertia and makes near-zero leading pivots unlikely.
int count_below(const std::vector<std::vector<double>>& a, double x) {
  using Mat = std::vector<std::vector<long double>>;
  const int n = static_cast<int>(a.size());
  Rng rng(0x1D1 + static_cast<std::uint64_t>(n));
  Mat q(n, std::vector<long double>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) q[i][j] = rng.uniform() - 0.5;
    for (int pass = 0; pass < 2; ++pass) {
      for (int k = 0; k < i; ++k) {
        long double dot = 0;
        for (int j = 0; j < n; ++j) dot += q[i][j] * q[k][j];
        for (int j = 0; j < n; ++j) q[i][j] -= dot * q[k][j];
      }
    }
    long double norm = 0;
    for (int j = 0; j < n; ++j) norm += q[i][j] * q[i][j];
    norm = std::sqrt(norm);
    for (int j = 0; j < n; ++j) q[i][j] /= norm;
  }
  Mat shifted(n, std::vector<long double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) shifted[i][j] = a[i][j] - (i == j ? x : 0.0L);
  Mat tmp(n, std::vector<long double>(n, 0.0L)), m(n, std::vector<long double>(n, 0.0L));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) tmp[i][j] += q[i][k] * shifted[k][j];
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) m[i][j] += tmp[i][k] * q[j][k];
  int negative = 0;
  for (int k = 0; k < n; ++k) {
    const long double pivot = m[k][k];
    if (pivot < 0) ++negative;
    if (pivot == 0) continue;
    for (int i = k + 1; i < n; ++i) {
      const long double f = m[i][k] / pivot;
      for (int j = k + 1; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return negative;
}

std::vector<std::vector<double>> adjacency(const Graph& g) {
  const int n = g.node_count();
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = g.has_edge(i, j) ? 1.0 : 0.0;
  return a;
}

std::vector<std::vector<double>> laplacian(const Graph& g) {
  auto a = adjacency(g);
  const int n = g.node_count();
  for (int i = 0; i < n; ++i) {
    double d = 0;
    for (int j = 0; j < n; ++j) d += a[i][j];
    for (int j = 0; j < n; ++j) a[i][j] = (i == j ? d : 0.0) - a[i][j];
  }
  return a;
}

/// Every computed eigenvalue cluster must hold exactly as many true
/// eigenvalues as it claims within +-tol.
void check_against_inertia(const std::vector<std::vector<double>>& a, const Spectrum& s,
                           double tol) {
  const int n = static_cast<int>(a.size());
  REQUIRE(static_cast<int>(s.size()) == n);
  for (int k = 0; k + 1 < n; ++k) REQUIRE(s[k] >= s[k + 1]);
  for (int k = 0; k < n; ++k) {
    int claimed = 0;
    for (int q = 0; q < n; ++q) claimed += std::fabs(s[q] - s[k]) <= tol ? 1 : 0;
    const int actual = count_below(a, s[k] + tol) - count_below(a, s[k] - tol);
    CHECK(actual >= 1);
    CHECK(actual <= claimed);
  }
  CHECK(count_below(a, s[0] + tol) == n);
  CHECK(count_below(a, s[n - 1] - tol) == 0);
}

}  // namespace

TEST_CASE("complete graph closed forms") {
  for (int n = 2; n <= 32; ++n) {
    const Graph k = Graph::complete(n);
    const Spectrum a = adjacency_spectrum(k);
    CHECK(std::fabs(a[0] - (n - 1)) < 1e-9);
    for (int i = 1; i < n; ++i) CHECK(std::fabs(a[i] + 1.0) < 1e-9);
    const Spectrum l = laplacian_spectrum(k);
    for (int i = 0; i < n - 1; ++i) CHECK(std::fabs(l[i] - n) < 1e-9);
    CHECK(std::fabs(l[n - 1]) < 1e-9);
  }
}

TEST_CASE("path, cycle and star closed forms") {
  for (int n = 3; n <= 24; ++n) {
    std::vector<double> cyc, pth;
    for (int k = 0; k < n; ++k) cyc.push_back(2 * std::cos(2 * std::numbers::pi * k / n));
    for (int k = 1; k <= n; ++k) pth.push_back(2 * std::cos(std::numbers::pi * k / (n + 1)));
    std::sort(cyc.rbegin(), cyc.rend());
    std::sort(pth.rbegin(), pth.rend());
    const Spectrum c = adjacency_spectrum(testing::cycle(n));
    const Spectrum p = adjacency_spectrum(testing::path(n));
    for (int k = 0; k < n; ++k) {
      CHECK(std::fabs(c[k] - cyc[k]) < 1e-9);
      CHECK(std::fabs(p[k] - pth[k]) < 1e-9);
    }
    CHECK(std::fabs(adjacency_spectral_radius(testing::star(n)) - std::sqrt(n - 1.0)) < 1e-9);
    const Spectrum ls = laplacian_spectrum(testing::star(n));
    CHECK(std::fabs(ls[0] - n) < 1e-9);
    CHECK(std::fabs(ls[n - 1]) < 1e-9);
    for (int k = 1; k < n - 1; ++k) CHECK(std::fabs(ls[k] - 1.0) < 1e-9);
  }
}

TEST_CASE("eigenvalues agree with the inertia oracle") {
  Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(16));
    const bool loops = trial % 3 == 0;
    const Graph g = testing::random_graph(rng, n, rng.uniform(), loops);
    for (Precision p : {Precision::standard, Precision::tight}) {
      check_against_inertia(adjacency(g), adjacency_spectrum(g, p), 1e-9);
      if (!loops) check_against_inertia(laplacian(g), laplacian_spectrum(g, p), 1e-9);
    }
  }
}

TEST_CASE("eigenvalues match the frozen numpy reference") {
  const auto rows = testing::read_rows("invariants_reference.txt");
  REQUIRE(rows.size() == 300);
  for (const auto& row : rows) {
    const Graph g = decode_g6(row[0]);
    const auto a = testing::parse_doubles(row[1]);
    const auto l = testing::parse_doubles(row[2]);
    const Spectrum sa = adjacency_spectrum(g);
    const Spectrum sl = laplacian_spectrum(g);
    REQUIRE(sa.size() == a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(std::fabs(sa[k] - a[k]) < 1e-9);
      CHECK(std::fabs(sl[k] - l[k]) < 1e-9);
    }
    CHECK(max_matching(g).size == std::stoi(row[3]));
  }
}

TEST_CASE("Laplacian properties") {
  Rng rng(8);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(20));
    const Graph g = testing::random_graph(rng, n, rng.uniform());
    const Spectrum l = laplacian_spectrum(g);
    double sum = 0;
    int zeros = 0;
    for (double v : l.values) {
      CHECK(v > -1e-9);
      sum += v;
      zeros += std::fabs(v) < 1e-6 ? 1 : 0;
    }
    CHECK(std::fabs(sum - 2.0 * g.edge_count()) < 1e-8);
    CHECK(zeros == component_count(g));
  }
  Graph looped(3, true);
  looped.add_edge(1, 1);
  CHECK_THROWS_AS(laplacian_spectrum(looped), std::invalid_argument);
}

TEST_CASE("Jacobi on a general symmetric matrix") {
  // [[2,1,0],[1,2,1],[0,1,2]] has eigenvalues 2+sqrt2, 2, 2-sqrt2.
  const Spectrum s = symmetric_eigenvalues({2, 1, 0, 1, 2, 1, 0, 1, 2}, 3);
  CHECK(std::fabs(s[0] - (2 + std::sqrt(2.0))) < 1e-12);
  CHECK(std::fabs(s[1] - 2) < 1e-12);
  CHECK(std::fabs(s[2] - (2 - std::sqrt(2.0))) < 1e-12);
  CHECK(symmetric_eigenvalues({}, 0).size() == 0);
  CHECK(symmetric_eigenvalues({-3.5}, 1)[0] == -3.5);
}

TEST_CASE("matching equals brute force on every graph up to five nodes") {
  for (int n = 1; n <= 5; ++n) {
    const int slots = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots); ++mask) {
      const Graph g = testing::graph_from_mask(n, mask);
      CHECK(max_matching(g).size == brute_force_matching(g).size);
    }
  }
}

TEST_CASE("matching equals brute force on random graphs") {
  Rng rng(13);
  for (int trial = 0; trial < 1500; ++trial) {
    const int n = 6 + static_cast<int>(rng.below(7));
    const Graph g = testing::random_graph(rng, n, rng.uniform());
    const MatchingResult m = max_matching(g);
    CHECK(m.size == brute_force_matching(g).size);
    REQUIRE(static_cast<int>(m.edges.size()) == m.size);
    std::uint64_t used = 0;
    for (const auto& [i, j] : m.edges) {
      CHECK(g.has_edge(i, j));
      CHECK((used >> i & 1) == 0);
      CHECK((used >> j & 1) == 0);
      used |= std::uint64_t{1} << i | std::uint64_t{1} << j;
    }
  }
}

TEST_CASE("matching closed forms") {
  for (int n = 2; n <= 40; ++n) {
    CHECK(max_matching(Graph::complete(n)).size == n / 2);
    CHECK(max_matching(testing::path(n)).size == n / 2);
    CHECK(max_matching(testing::star(n)).size == 1);
  }
  // Petersen graph has a perfect matching; blossoms are needed to find it.
  Graph petersen(10);
  for (int i = 0; i < 5; ++i) {
    petersen.add_edge(i, (i + 1) % 5);
    petersen.add_edge(i, i + 5);
    petersen.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  CHECK(max_matching(petersen).size == 5);
  Graph looped(4, true);
  looped.add_edge(0, 0);
  looped.add_edge(1, 1);
  looped.add_edge(0, 1);
  CHECK(max_matching(looped).size == 1);
  CHECK_THROWS(brute_force_matching(Graph(13)));
}
