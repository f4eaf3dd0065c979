#pragma once

#include <cstddef>
#include <vector>

#include "gconj/graph.hpp"

namespace gconj {

/// Accuracy promised for every reported eigenvalue.
inline constexpr double kEigenTolerance = 1e-9;
/// Off-diagonal Frobenius norm at which the standard Jacobi run stops.
inline constexpr double kOffDiagonalTolerance = 1e-12;

/// Standard stops at kOffDiagonalTolerance. Tight keeps sweeping until a
/// whole sweep finds nothing left to rotate at machine precision; it is the
/// setting used to confirm counterexamples.
enum class Precision { standard, tight };

/// Eigenvalues in non-increasing order.
struct Spectrum {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
};

struct MatchingResult {
  int size = 0;
  std::vector<NodePair> edges;
};

/// Eigenvalues of a dense symmetric n*n row-major matrix by cyclic Jacobi
/// rotations. Only the upper triangle is read.
Spectrum symmetric_eigenvalues(std::vector<double> matrix, int n,
                               Precision precision = Precision::standard);

/// Spectrum of L = D - A. Throws std::invalid_argument on self-loops.
Spectrum laplacian_spectrum(const Graph& g, Precision precision = Precision::standard);

/// Spectrum of the 0/1 adjacency matrix (a self-loop puts 1 on the diagonal).
Spectrum adjacency_spectrum(const Graph& g, Precision precision = Precision::standard);

/// Largest adjacency eigenvalue.
double adjacency_spectral_radius(const Graph& g, Precision precision = Precision::standard);

/// Maximum-cardinality matching by Edmonds' blossom algorithm. Self-loops are
/// ignored.
MatchingResult max_matching(const Graph& g);

/// Exhaustive matching search for n <= 12. Test oracle only.
MatchingResult brute_force_matching(const Graph& g);

inline std::size_t edge_count(const Graph& g) { return g.edge_count(); }

}  // namespace gconj
