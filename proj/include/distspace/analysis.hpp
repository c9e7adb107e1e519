#pragma once

#include "distspace/types.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace distspace {

using SideTriple = std::array<double, 3>;

/// Side lengths of all C(n,3) triangles, each sorted ascending, the list
/// sorted lexicographically.
struct TriangleMultiset {
  std::vector<SideTriple> triples;
};

TriangleMultiset triangle_multiset(const PointConfiguration& config);

struct Circuit {
  std::vector<int> order;  ///< starts at vertex 0, closes back to it
  double length = 0.0;
};

struct CircuitReport {
  /// Listed in lexicographic vertex order; empty when the count exceeds the
  /// listing limit.
  std::vector<Circuit> circuits;
  long long circuit_count = 0;
  /// Representative length of each group of circuits whose lengths agree
  /// within the length tolerance, ascending.
  std::vector<double> distinct_lengths;
  Circuit shortest;
  double length_tol = 0.0;

  int distinct_length_count() const { return static_cast<int>(distinct_lengths.size()); }
};

inline constexpr int kMaxCircuitPoints = 12;

struct CircuitOptions {
  /// Absolute grouping tolerance; defaults to 1e-9 times the mean distance.
  std::optional<double> length_tol;
  long long listing_limit = 100000;
  Execution execution = Execution::parallel;
};

/// Brute force over all (n-1)!/2 undirected Hamiltonian cycles. Throws
/// ShapeError for n < 3 and ScopeError for n > 12.
CircuitReport hamiltonian_circuits(const PointConfiguration& config,
                                   const CircuitOptions& options = {});

struct MultisetComparison {
  bool equal = false;
  std::string diagnostic;  ///< empty when equal

  explicit operator bool() const { return equal; }
};

/// Sorted values compared pairwise with absolute tolerance `tol`.
MultisetComparison multiset_equal(const DistanceMultiset& a, const DistanceMultiset& b,
                                  double tol);

/// Sorted triples compared componentwise with absolute tolerance `tol`.
MultisetComparison multiset_equal(const TriangleMultiset& a, const TriangleMultiset& b,
                                  double tol);

}  // namespace distspace
