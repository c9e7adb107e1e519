#pragma once

#include "distspace/errors.hpp"
#include "distspace/types.hpp"

#include <Eigen/Core>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace distspace {

/// Euclidean distance matrix of a configuration. With Boundary::strict,
/// points closer than tol * (mean pair distance) raise DuplicatePointError.
DistanceAssignment pairwise_distances(const PointConfiguration& config,
                                      double tol = kStructuralTol,
                                      Boundary coincident = Boundary::strict);

/// Squared volume of the k-simplex spanned by all k+1 points of `dists`,
/// from the bordered Cayley–Menger determinant:
///
///   Δ²_k = (-1)^{k+1} / (2^k (k!)²) · det [[0, 1ᵀ], [1, D∘D]]
///
/// Negative for distance sets that cannot close into a simplex.
double cayley_menger_squared_volume(const DistanceAssignment& dists, int k);

/// Same, for the simplex on the listed vertices of a larger assignment.
double cayley_menger_squared_volume(const DistanceAssignment& dists,
                                    std::span<const int> vertices);

/// Generalized triangle inequality for the k-simplex on all points of
/// `dists`. Inclusive mode accepts Δ² >= -tol·s^{2k}; strict mode requires
/// Δ² > tol·s^{2k}, where s is the mean edge length.
///
/// Note: the classical planar form d1⁴+d2⁴+d3⁴-2d1²d2²-2d1²d3²-2d2²d3² equals
/// -16Δ², so a positive area corresponds to that expression being negative.
bool simplex_inequality_holds(const DistanceAssignment& dists, int k,
                              double tol = kStructuralTol,
                              Boundary mode = Boundary::inclusive);

/// Gram matrix of the difference vectors v_i - v_o for i != o, built from
/// distances only: G_ij = ½(d²_io + d²_jo - d²_ij). Rows follow the point
/// order with the origin removed.
Eigen::MatrixXd gram_from_distances(const DistanceAssignment& dists, int origin = 0);

/// Largest |det| over all square minors of the given order. Exponential in
/// the matrix size; meant for cross-checks on small instances.
double max_abs_minor(const Eigen::MatrixXd& m, int order);

struct SimplexResidual {
  int point = 0;       ///< point whose simplex inequality this is
  int simplex_dim = 0; ///< k
  double squared_volume = 0.0;
};

struct FailedCondition {
  enum class Kind { simplex_inequality, negative_eigenvalue, excess_rank, minor_rank };
  Kind kind = Kind::simplex_inequality;
  int index = -1;      ///< point index or eigenvalue index; -1 if not applicable
  double value = 0.0;  ///< offending residual
};

std::string to_string(FailedCondition::Kind kind);

struct FeasibilityReport {
  bool realizable = false;
  int dimension = 0;
  std::optional<FailedCondition> failed_condition;
  /// Point i against the reference simplex of points 0..min(i,d)-1.
  std::vector<SimplexResidual> simplex_residuals;
  /// Eigenvalues of the Gram matrix (origin at point 0), ascending.
  std::vector<double> gram_eigenvalues;
  /// Largest |(d+1)-minor| of the Gram matrix when the cross-check ran.
  std::optional<double> max_minor;
  double tolerance_used = 0.0;
  double scale = 0.0;  ///< mean pair distance used to scale tolerances

  /// Flat list: squared volumes, then eigenvalues, then the minor residual.
  std::vector<double> residuals() const;
};

/// Largest point count for which the (d+1)-minor cross-check runs.
inline constexpr int kMinorCrossCheckMaxPoints = 8;

/// Decides whether `dists` is the distance matrix of n points in R^d.
/// The verdict requires every sequential simplex inequality, a Gram matrix
/// that is PSD with at most d eigenvalues above tol·s², and (for small n)
/// every (d+1)-minor of the Gram matrix vanishing to tol·s^{2(d+1)}.
FeasibilityReport realizability_check(const DistanceAssignment& dists, int d,
                                      double tol = kStructuralTol);

class RealizabilityError : public Error {
 public:
  RealizabilityError(const std::string& what, FeasibilityReport report)
      : Error(what), report_(std::move(report)) {}
  const FeasibilityReport& report() const { return report_; }

 private:
  FeasibilityReport report_;
};

/// Coordinates in canonical gauge: point 0 at the origin, point 1 on the
/// positive first axis, point 2 in the upper half of the first two axes, and
/// so on. A point in the span of its predecessors gets no new axis. Strict
/// mode rejects a degenerate leading reference simplex.
PointConfiguration embed(const DistanceAssignment& dists, int d, double tol = kStructuralTol,
                         Boundary mode = Boundary::inclusive);

/// Number of distances constrained only by inequalities.
int free_dimension(int n, int d);

}  // namespace distspace
