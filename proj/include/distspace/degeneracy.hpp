#pragma once

#include "distspace/types.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <vector>

namespace distspace {

// ---------------------------------------------------------------------------
// Four-point planar constraint systems
// ---------------------------------------------------------------------------

/// Six distances of a four-point configuration, listed in construction order:
/// x[0]=|P1P2|, x[1]=|P1P3|, x[2]=|P2P3|, x[3]=|P1P4|, x[4]=|P2P4|, x[5]=|P3P4|.
using Sextuple = std::array<double, 6>;

/// A permutation Ω of six distance slots: argument p of the constraint
/// polynomial takes the value of slot omega[p].
using SlotPermutation = std::array<int, 6>;

/// det(-2G) for the 3x3 Gram matrix of P2, P3, P4 about P1:
///
///   | -2x1²           x3²-x1²-x2²   x5²-x1²-x4² |
///   | x3²-x1²-x2²     -2x2²         x6²-x2²-x4² |
///   | x5²-x1²-x4²     x6²-x2²-x4²   -2x4²       |
///
/// Vanishes iff the Gram matrix is singular, i.e. iff the sextuple closes into
/// a planar configuration (given the simplex inequalities).
double constraint_polynomial(const Sextuple& x);

/// Partial derivatives of constraint_polynomial with respect to x1..x6.
Sextuple constraint_polynomial_gradient(const Sextuple& x);

/// Simultaneous equations D(Ω_e) = 0 over six distance slots, some fixed and
/// some unknown.
struct PermutationConstraintSystem {
  std::map<int, double> free_values;      ///< slot -> fixed value
  std::vector<int> unknowns;              ///< slots solved for
  std::vector<SlotPermutation> equations; ///< one permutation per equation

  /// Throws ShapeError unless the slots partition {0..5}, every equation is a
  /// permutation, and equations <= unknowns.
  void validate() const;

  /// Mean of the fixed values; the length scale for residuals and guesses.
  double free_mean() const;

  /// Residual vector D(Ω_e) for a full slot assignment.
  std::vector<double> residuals(const Sextuple& slots) const;

  /// Slot values with `unknown_values` written into the unknown slots.
  Sextuple assemble(const std::vector<double>& unknown_values) const;
};

struct NewtonOptions {
  int max_iterations = 200;
  double tol = 1e-12;          ///< residual relative to (free mean)^6
  int max_halvings = 40;
};

struct ConstrainedSolution {
  Sextuple slots{};                 ///< all six values
  std::vector<double> unknowns;     ///< solved values, in system.unknowns order
  double residual = 0.0;            ///< max |D(Ω_e)| / s^6
  int iterations = 0;
};

/// Damped Newton from one initial guess. Throws SolverError when the
/// iteration cap is reached and NoSolutionError when the iterate stalls away
/// from a root (complex branch) or converges onto a zero distance.
ConstrainedSolution solve_constrained(const PermutationConstraintSystem& system,
                                      const std::vector<double>& initial_guess,
                                      const NewtonOptions& options = {});

struct RootInfo {
  ConstrainedSolution solution;
  bool realizable_for_all = false; ///< every Ω_e assignment passes realizability in R²
  int configuration_count = 0;     ///< non-congruent planar configurations realized
  bool multiple_root = false;      ///< an unknown repeats another distance value
};

struct RootSearchOptions {
  int grid_per_unknown = 16;  ///< guesses per unknown over [0.1 s, 3 s]
  NewtonOptions newton;
  double structural_tol = kStructuralTol;
  Execution execution = Execution::parallel;
};

/// Runs Newton from a tensor grid of initial guesses and returns the distinct
/// positive real roots found, sorted lexicographically. Heuristic: roots
/// outside the basins reached from the grid are not reported.
std::vector<RootInfo> solve_constrained_all(const PermutationConstraintSystem& system,
                                            const RootSearchOptions& options = {});

/// The planar four-point configurations realized by each equation's
/// assignment, deduplicated by congruence.
std::vector<PointConfiguration> realize_permutations(const PermutationConstraintSystem& system,
                                                     const Sextuple& slots,
                                                     double tol = kStructuralTol);

// ---------------------------------------------------------------------------
// Enumeration of congruence classes
// ---------------------------------------------------------------------------

struct DegeneracyClassSet {
  DistanceMultiset multiset;
  int dimension = 0;
  /// Canonical-gauge representatives, sorted lexicographically by coordinates.
  std::vector<PointConfiguration> classes;
  bool complete = true;           ///< false when the budget ran out
  double explored_fraction = 1.0; ///< share of the assignment tree covered
  std::uint64_t evaluations = 0;  ///< partial + full realizability evaluations

  int order() const { return static_cast<int>(classes.size()); }
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

struct EnumerationOptions {
  double tol = kStructuralTol;
  std::uint64_t budget = kDefaultEnumerationBudget;
  Execution execution = Execution::parallel;
};

/// Places the multiset values onto the pairs of n points in every distinct
/// way (largest value fixed on pair (0,1)), keeps the realizable placements,
/// embeds them and merges congruent results. Returns a partial result with
/// complete = false when the evaluation budget is exhausted.
DegeneracyClassSet enumerate_assemblies(const DistanceMultiset& multiset, int d,
                                        const EnumerationOptions& options = {});

/// Upper bound on the number of non-congruent d-simplices sharing one set of
/// d(d+1)/2 edge lengths: [d(d+1)/2 - 1]! / 2^(d-1).
boost::multiprecision::cpp_int kmax_simplex(int d);

/// enumerate_assemblies restricted to n = d + 1 points.
DegeneracyClassSet enumerate_simplex_classes(const DistanceMultiset& multiset, int d,
                                             const EnumerationOptions& options = {});

}  // namespace distspace
