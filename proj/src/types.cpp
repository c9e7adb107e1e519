#include "distspace/types.hpp"

#include "distspace/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace distspace {

PointConfiguration::PointConfiguration(int dimension, Eigen::MatrixXd points)
    : dimension_(dimension), points_(std::move(points)) {
  if (dimension_ < 1) throw ShapeError("configuration dimension must be positive");
  if (points_.rows() < 1) throw ShapeError("configuration needs at least one point");
  if (points_.cols() != dimension_) {
    throw ShapeError("every point must have exactly " + std::to_string(dimension_) +
                     " coordinates");
  }
  if (!points_.allFinite()) throw ShapeError("configuration has non-finite coordinates");
}

PointConfiguration::PointConfiguration(int dimension,
                                       const std::vector<std::vector<double>>& points)
    : dimension_(dimension) {
  if (dimension_ < 1) throw ShapeError("configuration dimension must be positive");
  if (points.empty()) throw ShapeError("configuration needs at least one point");
  points_.resize(static_cast<Eigen::Index>(points.size()), dimension_);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != static_cast<std::size_t>(dimension_)) {
      throw ShapeError("point " + std::to_string(i) + " has " +
                       std::to_string(points[i].size()) + " coordinates, expected " +
                       std::to_string(dimension_));
    }
    for (int k = 0; k < dimension_; ++k) {
      points_(static_cast<Eigen::Index>(i), k) = points[i][static_cast<std::size_t>(k)];
    }
  }
  if (!points_.allFinite()) throw ShapeError("configuration has non-finite coordinates");
}

std::vector<double> PointConfiguration::flattened() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(points_.size()));
  for (Eigen::Index i = 0; i < points_.rows(); ++i) {
    for (Eigen::Index k = 0; k < points_.cols(); ++k) out.push_back(points_(i, k));
  }
  return out;
}

std::vector<std::pair<int, int>> incremental_pairs(int n) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(pair_count(n)));
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) pairs.emplace_back(i, j);
  }
  return pairs;
}

std::vector<std::pair<int, int>> row_major_pairs(int n) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(pair_count(n)));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  return pairs;
}

DistanceAssignment::DistanceAssignment(Eigen::MatrixXd entries, Boundary coincident)
    : entries_(std::move(entries)) {
  const auto n = entries_.rows();
  if (n < 1 || entries_.cols() != n) throw ShapeError("distance matrix must be square");
  if (!entries_.allFinite()) throw ShapeError("distance matrix has non-finite entries");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (entries_(i, i) != 0.0) throw ShapeError("distance matrix diagonal must be zero");
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double a = entries_(i, j);
      const double b = entries_(j, i);
      if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a))) {
        throw ShapeError("distance matrix is not symmetric at (" + std::to_string(i) +
                         "," + std::to_string(j) + ")");
      }
      entries_(j, i) = a;
      if (a < 0.0 || (coincident == Boundary::strict && a == 0.0)) {
        throw ShapeError("distance (" + std::to_string(i) + "," + std::to_string(j) +
                         ") must be positive");
      }
    }
  }
}

DistanceAssignment DistanceAssignment::from_incremental(int n,
                                                        std::span<const double> values,
                                                        Boundary coincident) {
  if (n < 1 || values.size() != static_cast<std::size_t>(pair_count(n))) {
    throw ShapeError("expected " + std::to_string(pair_count(n)) + " distances for " +
                     std::to_string(n) + " points");
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  const auto pairs = incremental_pairs(n);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    m(pairs[p].first, pairs[p].second) = values[p];
    m(pairs[p].second, pairs[p].first) = values[p];
  }
  return DistanceAssignment(std::move(m), coincident);
}

double DistanceAssignment::mean_distance() const {
  const int n = size();
  if (n < 2) return 0.0;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) sum += entries_(i, j);
  }
  return sum / pair_count(n);
}

std::vector<double> DistanceAssignment::upper_triangle() const {
  std::vector<double> out;
  for (const auto& [i, j] : row_major_pairs(size())) out.push_back(entries_(i, j));
  return out;
}

DistanceAssignment DistanceAssignment::restrict_to(std::span<const int> indices) const {
  const auto k = static_cast<Eigen::Index>(indices.size());
  Eigen::MatrixXd m(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) {
      m(a, b) = entries_(indices[static_cast<std::size_t>(a)],
                         indices[static_cast<std::size_t>(b)]);
    }
  }
  DistanceAssignment out;
  out.entries_ = std::move(m);
  return out;
}

DistanceMultiset DistanceAssignment::multiset() const {
  return DistanceMultiset(upper_triangle());
}

int points_for_pair_count(std::size_t m) {
  for (int n = 2;; ++n) {
    const auto c = static_cast<std::size_t>(pair_count(n));
    if (c == m) return n;
    if (c > m) return -1;
  }
}

DistanceMultiset::DistanceMultiset(std::vector<double> values) : values_(std::move(values)) {
  points_ = points_for_pair_count(values_.size());
  if (points_ < 2) {
    throw ShapeError("multiset size " + std::to_string(values_.size()) +
                     " is not n(n-1)/2 for any n >= 2");
  }
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) throw ShapeError("multiset values must be finite and >= 0");
  }
  std::sort(values_.begin(), values_.end());
}

double DistanceMultiset::mean() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0) /
         static_cast<double>(values_.size());
}

}  // namespace distspace
