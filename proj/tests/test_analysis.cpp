#include "distspace/analysis.hpp"
#include "distspace/constructions.hpp"
#include "distspace/errors.hpp"
#include "distspace/geometry.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

using namespace distspace;

namespace {

long long factorial(int k) { return k <= 1 ? 1 : k * factorial(k - 1); }

}  // namespace

TEST(TriangleMultiset, UnitSquare) {
  PointConfiguration sq(2, std::vector<std::vector<double>>{{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const auto t = triangle_multiset(sq);
  ASSERT_EQ(t.triples.size(), 4U);
  for (const auto& tr : t.triples) {
    EXPECT_NEAR(tr[0], 1, 1e-15);
    EXPECT_NEAR(tr[1], 1, 1e-15);
    EXPECT_NEAR(tr[2], std::sqrt(2.0), 1e-15);
  }
}

TEST(TriangleMultiset, CongruentConfigurationsMatch) {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 50; ++t) {
    const auto c = oracle::random_configuration(rng, 6, 3);
    const auto moved = oracle::transform(c, oracle::random_orthogonal(rng, 3), Eigen::Vector3d(1, 2, 3));
    EXPECT_TRUE(multiset_equal(triangle_multiset(c), triangle_multiset(moved), 1e-12).equal);
  }
}

TEST(TriangleMultiset, KiteAndTrapezoidDiffer) {
  const auto p = kite_trapezoid(0.75);
  const auto cmp = multiset_equal(triangle_multiset(p.kite), triangle_multiset(p.trapezoid), 1e-9);
  EXPECT_FALSE(cmp.equal);
  EXPECT_FALSE(cmp.diagnostic.empty());
}

TEST(MultisetEqual, Distances) {
  DistanceMultiset a({1, 2, 3});
  EXPECT_TRUE(multiset_equal(a, a, 0.0).equal);
  const auto p = kite_trapezoid(0.75);
  EXPECT_TRUE(multiset_equal(pairwise_distances(p.kite).multiset(),
                             pairwise_distances(p.trapezoid).multiset(), 1e-12)
                  .equal);
  const auto cmp = multiset_equal(a, DistanceMultiset({1, 1, 1, 1, 1, 1}), 1.0);
  EXPECT_FALSE(cmp.equal);
  EXPECT_NE(cmp.diagnostic.find("cardinality"), std::string::npos);
  EXPECT_FALSE(multiset_equal(a, DistanceMultiset({1, 2, 3.1}), 0.01).equal);
}

TEST(Circuits, CountsMatchFactorialFormula) {
  std::mt19937_64 rng(52);
  for (int n = 3; n <= 9; ++n) {
    const auto c = oracle::random_configuration(rng, n, 2);
    const auto r = hamiltonian_circuits(c);
    EXPECT_EQ(r.circuit_count, factorial(n - 1) / 2);
    EXPECT_EQ(static_cast<long long>(r.circuits.size()), r.circuit_count);
    for (const auto& circ : r.circuits) EXPECT_GE(circ.length, r.shortest.length);
  }
}

TEST(Circuits, LengthsMatchDirectSums) {
  std::mt19937_64 rng(53);
  const auto c = oracle::random_configuration(rng, 6, 3);
  const auto dm = oracle::distance_matrix(c);
  const auto r = hamiltonian_circuits(c);
  for (const auto& circ : r.circuits) {
    ASSERT_EQ(circ.order.size(), 6U);
    EXPECT_EQ(circ.order.front(), 0);
    double len = 0.0;
    for (std::size_t i = 0; i < 6; ++i) len += dm(circ.order[i], circ.order[(i + 1) % 6]);
    EXPECT_NEAR(circ.length, len, 1e-12);
  }
}

TEST(Circuits, KiteAndTrapezoid) {
  for (double x : {0.6, 0.7, 0.75, 0.8, 0.9}) {
    const auto p = kite_trapezoid(x);
    const auto rk = hamiltonian_circuits(p.kite);
    const auto rt = hamiltonian_circuits(p.trapezoid);
    EXPECT_EQ(rt.distinct_length_count(), 3) << "x = " << x;
    EXPECT_EQ(rk.distinct_length_count(), 2) << "x = " << x;
    EXPECT_LT(rt.shortest.length, rk.shortest.length) << "x = " << x;
  }
}

TEST(Circuits, IsometryInvariance) {
  std::mt19937_64 rng(54);
  for (int t = 0; t < 20; ++t) {
    const auto c = oracle::random_configuration(rng, 7, 3);
    const auto moved = oracle::transform(c, oracle::random_orthogonal(rng, 3), Eigen::Vector3d(-1, 0.5, 2));
    const auto a = hamiltonian_circuits(c);
    const auto b = hamiltonian_circuits(moved);
    ASSERT_EQ(a.circuits.size(), b.circuits.size());
    for (std::size_t i = 0; i < a.circuits.size(); ++i) {
      EXPECT_EQ(a.circuits[i].order, b.circuits[i].order);
      EXPECT_NEAR(a.circuits[i].length, b.circuits[i].length, 1e-9);
    }
  }
}

TEST(Circuits, SerialAndParallelAgree) {
  std::mt19937_64 rng(55);
  const auto c = oracle::random_configuration(rng, 9, 2);
  CircuitOptions serial;
  serial.execution = Execution::serial;
  const auto a = hamiltonian_circuits(c, serial);
  const auto b = hamiltonian_circuits(c);
  EXPECT_EQ(a.distinct_lengths, b.distinct_lengths);
  EXPECT_EQ(a.shortest.order, b.shortest.order);
  ASSERT_EQ(a.circuits.size(), b.circuits.size());
  for (std::size_t i = 0; i < a.circuits.size(); ++i) EXPECT_EQ(a.circuits[i].order, b.circuits[i].order);
}

TEST(Circuits, ListingLimitKeepsStatistics) {
  std::mt19937_64 rng(56);
  const auto c = oracle::random_configuration(rng, 8, 2);
  CircuitOptions opts;
  opts.listing_limit = 10;
  const auto r = hamiltonian_circuits(c, opts);
  EXPECT_TRUE(r.circuits.empty());
  EXPECT_EQ(r.circuit_count, 2520);
  EXPECT_EQ(r.shortest.order, hamiltonian_circuits(c).shortest.order);
}

TEST(Circuits, ScopeAndShape) {
  std::mt19937_64 rng(57);
  EXPECT_THROW(hamiltonian_circuits(oracle::random_configuration(rng, 13, 2)), ScopeError);
  EXPECT_THROW(hamiltonian_circuits(oracle::random_configuration(rng, 2, 2)), ShapeError);
}
