#include "distspace/congruence.hpp"
#include "distspace/degeneracy.hpp"
#include "distspace/errors.hpp"
#include "distspace/figures.hpp"
#include "distspace/geometry.hpp"

#include "oracles.hpp"

#include <Eigen/LU>
#include <gtest/gtest.h>

#include <cmath>

using namespace distspace;

namespace {

Sextuple permuted(const Sextuple& x, const SlotPermutation& omega) {
  Sextuple out{};
  for (std::size_t p = 0; p < 6; ++p) out[p] = x[static_cast<std::size_t>(omega[p])];
  return out;
}

// det(-2G) with G the Gram matrix of the three edge vectors from P1, from
// explicit coordinates.
double determinant_from_points(const Eigen::Matrix<double, 4, 3>& p) {
  Eigen::Matrix3d e;
  for (int i = 0; i < 3; ++i) e.row(i) = p.row(i + 1) - p.row(0);
  return (-2.0 * e * e.transpose()).determinant();
}

}  // namespace

TEST(ConstraintPolynomial, PrintedTwoFoldValues) {
  const Sextuple x = {1, 1.58114, 0.70710, 0.87228, 1.32698, 1.54551};
  EXPECT_NEAR(constraint_polynomial(x), 0.0, 1e-3);
  EXPECT_NEAR(constraint_polynomial(permuted(x, {0, 1, 2, 5, 3, 4})), 0.0, 1e-3);
}

TEST(ConstraintPolynomial, UnitSquare) {
  const double r = std::sqrt(2.0);
  EXPECT_NEAR(constraint_polynomial({1, r, 1, 1, r, 1}), 0.0, 1e-13);
}

TEST(ConstraintPolynomial, MatchesCoordinateOracle) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    const auto c = oracle::random_configuration(rng, 4, 3);
    Eigen::Matrix<double, 4, 3> p = c.points();
    const auto dm = oracle::distance_matrix(c);
    const Sextuple x = {dm(0, 1), dm(0, 2), dm(1, 2), dm(0, 3), dm(1, 3), dm(2, 3)};
    const double expect = determinant_from_points(p);
    EXPECT_NEAR(constraint_polynomial(x), expect, 1e-10 * (1.0 + std::abs(expect)));
  }
}

TEST(ConstraintPolynomial, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(0.5, 1.5);
  for (int t = 0; t < 50; ++t) {
    Sextuple x;
    for (auto& v : x) v = u(rng);
    const auto g = constraint_polynomial_gradient(x);
    for (std::size_t i = 0; i < 6; ++i) {
      const double h = 1e-6;
      Sextuple xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      const double fd = (constraint_polynomial(xp) - constraint_polynomial(xm)) / (2 * h);
      EXPECT_NEAR(g[i], fd, 1e-6 * (1.0 + std::abs(fd)));
    }
  }
}

TEST(ConstraintSystem, Validation) {
  PermutationConstraintSystem s;
  s.free_values = {{0, 1.0}, {1, 1.0}};
  s.unknowns = {2};
  s.equations = {{0, 1, 2, 3, 4, 5}};
  EXPECT_THROW(s.validate(), ShapeError);
  s.free_values = {{0, 1}, {1, 1}, {3, 1}, {4, 1}, {5, 1}};
  EXPECT_NO_THROW(s.validate());
  s.equations = {{0, 1, 2, 3, 4, 4}};
  EXPECT_THROW(s.validate(), ShapeError);
  s.equations = {{0, 1, 2, 3, 4, 5}, {0, 1, 2, 3, 5, 4}};
  EXPECT_THROW(s.validate(), ShapeError);
}

TEST(SolveConstrained, TwoFoldFromNearbyGuess) {
  const auto f = figures::two_fold_planar();
  const auto sol = solve_constrained(f.system, {1.3, 1.5});
  EXPECT_NEAR(sol.unknowns[0], 1.32698, 1e-4);
  EXPECT_NEAR(sol.unknowns[1], 1.54551, 1e-4);
  for (double r : f.system.residuals(sol.slots)) EXPECT_LE(std::abs(r), 1e-10);
}

TEST(SolveConstrained, TwoFoldRootAmongGridRoots) {
  const auto f = figures::two_fold_planar();
  const auto roots = solve_constrained_all(f.system);
  const auto* root = figures::closest_root(roots, f.printed_unknowns);
  ASSERT_NE(root, nullptr);
  EXPECT_NEAR(root->solution.unknowns[0], 1.32698, 1e-4);
  EXPECT_NEAR(root->solution.unknowns[1], 1.54551, 1e-4);
  EXPECT_TRUE(root->realizable_for_all);
  EXPECT_EQ(root->configuration_count, 2);
}

TEST(SolveConstrained, ThreeFoldRoot) {
  const auto f = figures::three_fold_planar();
  const auto roots = solve_constrained_all(f.system);
  const auto* root = figures::closest_root(roots, f.printed_unknowns);
  ASSERT_NE(root, nullptr);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(root->solution.unknowns[i], f.printed_unknowns[i], 1e-4);
  EXPECT_EQ(root->configuration_count, 3);
  EXPECT_FALSE(root->multiple_root);
}

TEST(SolveConstrained, SquareDiagonal) {
  PermutationConstraintSystem s;
  s.free_values = {{0, 1}, {2, 1}, {3, 1}, {4, std::sqrt(2.0)}, {5, 1}};
  s.unknowns = {1};
  s.equations = {{0, 1, 2, 3, 4, 5}};
  const auto sol = solve_constrained(s, {1.2});
  EXPECT_NEAR(sol.unknowns[0], std::sqrt(2.0), 1e-9);
}

TEST(SolveConstrained, ReportsFailures) {
  const auto f = figures::two_fold_planar();
  NewtonOptions capped;
  capped.max_iterations = 1;
  EXPECT_THROW(solve_constrained(f.system, {2.9, 0.2}, capped), SolverError);
  EXPECT_THROW(solve_constrained(f.system, {1.0}, {}), ShapeError);
}

TEST(SolveConstrained, ComplexBranchIsNoSolution) {
  // Fixed sides 1, 1, 1 and a far point: D has no positive root in the
  // remaining unknown when the other distances forbid closure.
  PermutationConstraintSystem s;
  s.free_values = {{0, 1}, {1, 1}, {2, 1}, {3, 10}, {4, 0.1}};
  s.unknowns = {5};
  s.equations = {{0, 1, 2, 3, 4, 5}};
  EXPECT_THROW(solve_constrained(s, {1.0}), NoSolutionError);
}

TEST(SolveConstrained, SolverOracleConsistency) {
  for (const auto& f : {figures::two_fold_planar(), figures::three_fold_planar()}) {
    for (const auto& root : solve_constrained_all(f.system)) {
      if (!root.realizable_for_all) continue;
      for (const auto& omega : f.system.equations) {
        const auto x = permuted(root.solution.slots, omega);
        EXPECT_TRUE(realizability_check(DistanceAssignment::from_incremental(4, x), 2).realizable);
      }
      const auto configs = realize_permutations(f.system, root.solution.slots);
      EXPECT_EQ(static_cast<int>(configs.size()), root.configuration_count);
      for (std::size_t i = 0; i < configs.size(); ++i) {
        for (std::size_t j = i + 1; j < configs.size(); ++j) {
          EXPECT_FALSE(congruent(configs[i], configs[j]));
        }
      }
    }
  }
}

TEST(SolveConstrained, SerialAndParallelGridAgree) {
  const auto f = figures::three_fold_planar();
  RootSearchOptions serial;
  serial.execution = Execution::serial;
  const auto a = solve_constrained_all(f.system, serial);
  const auto b = solve_constrained_all(f.system);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].solution.unknowns, b[i].solution.unknowns);
    EXPECT_EQ(a[i].configuration_count, b[i].configuration_count);
  }
}

TEST(Kmax, Values) {
  EXPECT_EQ(kmax_simplex(2), 1);
  EXPECT_EQ(kmax_simplex(3), 30);
  EXPECT_EQ(kmax_simplex(4), 45360);
  EXPECT_EQ(kmax_simplex(6).str(), "76028187755520000");
  EXPECT_THROW(kmax_simplex(1), ParameterError);
}
