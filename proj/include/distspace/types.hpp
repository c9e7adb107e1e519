#pragma once

#include <Eigen/Core>

#include <span>
#include <utility>
#include <vector>

namespace distspace {

/// Structural tolerance for determinant-zero, PSD and rank tests. Always
/// applied relative to the configuration's own length scale.
inline constexpr double kStructuralTol = 1e-9;

/// Tolerance for matching values printed to five decimals.
inline constexpr double kPrintedTol = 1e-4;

/// Whether zero-measure boundary cases (coincident points, zero-volume
/// simplices) are accepted.
enum class Boundary { strict, inclusive };

/// Selects the OpenMP kernel or the serial reference implementation.
enum class Execution { serial, parallel };

/// n labeled points in R^d, stored one point per row.
class PointConfiguration {
 public:
  PointConfiguration() = default;
  /// Throws ShapeError unless every row is finite, d >= 1 and n >= 1.
  PointConfiguration(int dimension, Eigen::MatrixXd points);
  PointConfiguration(int dimension, const std::vector<std::vector<double>>& points);

  int dimension() const { return dimension_; }
  int size() const { return static_cast<int>(points_.rows()); }
  const Eigen::MatrixXd& points() const { return points_; }
  Eigen::VectorXd point(int i) const { return points_.row(i).transpose(); }

  /// Coordinates flattened row-major; used for deterministic ordering.
  std::vector<double> flattened() const;

 private:
  int dimension_ = 0;
  Eigen::MatrixXd points_;
};

/// Number of unordered pairs among n points.
constexpr int pair_count(int n) { return n * (n - 1) / 2; }

/// Pair ordering used when listing the distances of a point-by-point
/// construction: (0,1), (0,2), (1,2), (0,3), (1,3), (2,3), ...
/// Point j contributes its j distances to the already-placed points.
std::vector<std::pair<int, int>> incremental_pairs(int n);

/// Row-major upper-triangle ordering: (0,1), (0,2), ..., (1,2), ...
std::vector<std::pair<int, int>> row_major_pairs(int n);

class DistanceMultiset;

/// Symmetric matrix of pair distances with zero diagonal, i.e. one specific
/// placement of distance values onto labeled point pairs.
class DistanceAssignment {
 public:
  DistanceAssignment() = default;

  /// Validates symmetry, zero diagonal and finiteness. Off-diagonal entries
  /// must be positive, or nonnegative with Boundary::inclusive.
  explicit DistanceAssignment(Eigen::MatrixXd entries,
                              Boundary coincident = Boundary::strict);

  /// Builds from values listed in incremental_pairs(n) order.
  static DistanceAssignment from_incremental(int n, std::span<const double> values,
                                             Boundary coincident = Boundary::strict);

  int size() const { return static_cast<int>(entries_.rows()); }
  double operator()(int i, int j) const { return entries_(i, j); }
  const Eigen::MatrixXd& matrix() const { return entries_; }

  /// Mean of the off-diagonal distances; 0 for fewer than two points.
  double mean_distance() const;

  /// Distances in row-major upper-triangle order.
  std::vector<double> upper_triangle() const;

  /// Restriction to the listed points, in the listed order.
  DistanceAssignment restrict_to(std::span<const int> indices) const;

  DistanceMultiset multiset() const;

 private:
  Eigen::MatrixXd entries_;
};

/// Unordered collection of the n(n-1)/2 pair distances. Stored sorted
/// ascending.
class DistanceMultiset {
 public:
  DistanceMultiset() = default;
  /// Throws ShapeError unless the count is n(n-1)/2 for some n >= 2 and all
  /// values are finite and nonnegative.
  explicit DistanceMultiset(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  int point_count() const { return points_; }
  std::size_t size() const { return values_.size(); }
  double mean() const;

 private:
  std::vector<double> values_;
  int points_ = 0;
};

/// Infers n from m = n(n-1)/2; returns -1 when m is not triangular.
int points_for_pair_count(std::size_t m);

}  // namespace distspace
