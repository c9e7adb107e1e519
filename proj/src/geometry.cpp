#include "distspace/geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace distspace {

namespace {

double positive_scale(double s) { return s > 0.0 ? s : 1.0; }

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Visits every ascending k-subset of {0..n-1}.
template <typename Visit>
void for_each_subset(int n, int k, Visit&& visit) {
  if (k > n || k < 0) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    visit(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

}  // namespace

DistanceAssignment pairwise_distances(const PointConfiguration& config, double tol,
                                      Boundary coincident) {
  const int n = config.size();
  if (n < 2) throw ShapeError("pairwise distances need at least two points");
  const auto& p = config.points();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      m(i, j) = m(j, i) = (p.row(i) - p.row(j)).norm();
    }
  }
  if (coincident == Boundary::strict) {
    double mean = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) mean += m(i, j);
    }
    mean /= pair_count(n);
    const double cut = tol * positive_scale(mean);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (m(i, j) <= cut) {
          throw DuplicatePointError("points " + std::to_string(i) + " and " +
                                    std::to_string(j) + " coincide");
        }
      }
    }
  }
  return DistanceAssignment(std::move(m), Boundary::inclusive);
}

double cayley_menger_squared_volume(const DistanceAssignment& dists, int k) {
  if (k < 0 || dists.size() != k + 1) {
    throw ShapeError("a " + std::to_string(k) + "-simplex needs exactly " +
                     std::to_string(k + 1) + " points, got " + std::to_string(dists.size()));
  }
  // Extended precision: thin simplices lose most digits to cancellation.
  using MatrixXld = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  MatrixXld bordered(k + 2, k + 2);
  bordered(0, 0) = 0.0L;
  for (int i = 1; i < k + 2; ++i) {
    bordered(0, i) = 1.0L;
    bordered(i, 0) = 1.0L;
    for (int j = 1; j < k + 2; ++j) {
      const long double d = dists(i - 1, j - 1);
      bordered(i, j) = d * d;
    }
  }
  const double det = static_cast<double>(bordered.fullPivLu().determinant());
  const double sign = (k + 1) % 2 == 0 ? 1.0 : -1.0;
  const double kf = factorial(k);
  return sign * det / (std::ldexp(1.0, k) * kf * kf);
}

double cayley_menger_squared_volume(const DistanceAssignment& dists,
                                    std::span<const int> vertices) {
  const auto sub = dists.restrict_to(vertices);
  return cayley_menger_squared_volume(sub, static_cast<int>(vertices.size()) - 1);
}

bool simplex_inequality_holds(const DistanceAssignment& dists, int k, double tol,
                              Boundary mode) {
  const double vol2 = cayley_menger_squared_volume(dists, k);
  const double s = positive_scale(dists.mean_distance());
  const double cut = tol * std::pow(s, 2 * k);
  return mode == Boundary::strict ? vol2 > cut : vol2 >= -cut;
}

Eigen::MatrixXd gram_from_distances(const DistanceAssignment& dists, int origin) {
  const int n = dists.size();
  if (origin < 0 || origin >= n) throw ShapeError("origin index out of range");
  std::vector<int> others;
  for (int i = 0; i < n; ++i) {
    if (i != origin) others.push_back(i);
  }
  const auto m = static_cast<Eigen::Index>(others.size());
  Eigen::MatrixXd g(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    const int i = others[static_cast<std::size_t>(a)];
    const double dio = dists(i, origin);
    for (Eigen::Index b = a; b < m; ++b) {
      const int j = others[static_cast<std::size_t>(b)];
      const double djo = dists(j, origin);
      const double dij = dists(i, j);
      g(a, b) = g(b, a) = 0.5 * (dio * dio + djo * djo - dij * dij);
    }
  }
  return g;
}

double max_abs_minor(const Eigen::MatrixXd& m, int order) {
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  double best = 0.0;
  Eigen::MatrixXd sub(order, order);
  for_each_subset(rows, order, [&](const std::vector<int>& r) {
    for_each_subset(cols, order, [&](const std::vector<int>& c) {
      for (int a = 0; a < order; ++a) {
        for (int b = 0; b < order; ++b) {
          sub(a, b) = m(r[static_cast<std::size_t>(a)], c[static_cast<std::size_t>(b)]);
        }
      }
      best = std::max(best, std::abs(sub.partialPivLu().determinant()));
    });
  });
  return best;
}

std::string to_string(FailedCondition::Kind kind) {
  switch (kind) {
    case FailedCondition::Kind::simplex_inequality: return "simplex-inequality";
    case FailedCondition::Kind::negative_eigenvalue: return "negative-eigenvalue";
    case FailedCondition::Kind::excess_rank: return "excess-rank";
    case FailedCondition::Kind::minor_rank: return "minor-rank";
  }
  return "unknown";
}

std::vector<double> FeasibilityReport::residuals() const {
  std::vector<double> out;
  for (const auto& r : simplex_residuals) out.push_back(r.squared_volume);
  out.insert(out.end(), gram_eigenvalues.begin(), gram_eigenvalues.end());
  if (max_minor) out.push_back(*max_minor);
  return out;
}

FeasibilityReport realizability_check(const DistanceAssignment& dists, int d, double tol) {
  if (d < 1) throw ShapeError("target dimension must be positive");
  const int n = dists.size();
  FeasibilityReport report;
  report.dimension = d;
  report.tolerance_used = tol;
  report.scale = dists.mean_distance();
  const double s = positive_scale(report.scale);
  auto fail = [&](FailedCondition::Kind kind, int index, double value) {
    if (!report.failed_condition) report.failed_condition = FailedCondition{kind, index, value};
  };

  // Each point against the reference simplex formed by the first d points.
  for (int i = 1; i < n; ++i) {
    std::vector<int> verts;
    for (int r = 0; r < std::min(i, d); ++r) verts.push_back(r);
    verts.push_back(i);
    const int k = static_cast<int>(verts.size()) - 1;
    const double vol2 = cayley_menger_squared_volume(dists, verts);
    report.simplex_residuals.push_back({i, k, vol2});
    if (vol2 < -tol * std::pow(s, 2 * k)) {
      fail(FailedCondition::Kind::simplex_inequality, i, vol2);
    }
  }

  if (n >= 2) {
    const Eigen::MatrixXd g = gram_from_distances(dists, 0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& ev = eig.eigenvalues();
    report.gram_eigenvalues.assign(ev.data(), ev.data() + ev.size());
    const double cut = tol * s * s;
    if (ev(0) < -cut) fail(FailedCondition::Kind::negative_eigenvalue, 0, ev(0));
    int rank = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      if (ev(i) > cut) ++rank;
    }
    if (rank > d) {
      const auto idx = ev.size() - 1 - d;
      fail(FailedCondition::Kind::excess_rank, static_cast<int>(idx), ev(idx));
    }
    if (n <= kMinorCrossCheckMaxPoints && n - 1 >= d + 1) {
      const double minor = max_abs_minor(g, d + 1);
      report.max_minor = minor;
      if (minor > tol * std::pow(s, 2 * (d + 1))) {
        fail(FailedCondition::Kind::minor_rank, -1, minor);
      }
    }
  }
  report.realizable = !report.failed_condition.has_value();
  return report;
}

PointConfiguration embed(const DistanceAssignment& dists, int d, double tol, Boundary mode) {
  FeasibilityReport report = realizability_check(dists, d, tol);
  if (!report.realizable) {
    throw RealizabilityError("distances are not realizable in dimension " + std::to_string(d),
                             std::move(report));
  }
  const int n = dists.size();
  const double s = positive_scale(report.scale);

  if (mode == Boundary::strict && n >= 2) {
    const int lead = std::min(n, d + 1);
    std::vector<int> verts(static_cast<std::size_t>(lead));
    std::iota(verts.begin(), verts.end(), 0);
    const int k = lead - 1;
    const double vol2 = cayley_menger_squared_volume(dists, verts);
    if (!(vol2 > tol * std::pow(s, 2 * k))) {
      report.realizable = false;
      report.failed_condition =
          FailedCondition{FailedCondition::Kind::simplex_inequality, lead - 1, vol2};
      throw RealizabilityError("reference simplex has zero volume (strict mode)",
                               std::move(report));
    }
  }

  Eigen::MatrixXd coords = Eigen::MatrixXd::Zero(n, d);
  if (n < 2) return PointConfiguration(d, std::move(coords));

  // Cholesky on the Gram matrix, skipping pivots that vanish to tolerance.
  const Eigen::MatrixXd g = gram_from_distances(dists, 0);
  const double cut = tol * s * s;
  std::vector<int> axis_row;  // Gram row that opened each axis
  for (int r = 0; r < n - 1; ++r) {
    double norm2 = 0.0;
    for (std::size_t k = 0; k < axis_row.size(); ++k) {
      const int p = axis_row[k];
      double dot = g(r, p);
      for (std::size_t j = 0; j < k; ++j) {
        dot -= coords(r + 1, static_cast<Eigen::Index>(j)) *
               coords(p + 1, static_cast<Eigen::Index>(j));
      }
      const double c = dot / coords(p + 1, static_cast<Eigen::Index>(k));
      coords(r + 1, static_cast<Eigen::Index>(k)) = c;
      norm2 += c * c;
    }
    const double residual = g(r, r) - norm2;
    if (static_cast<int>(axis_row.size()) < d && residual > cut) {
      coords(r + 1, static_cast<Eigen::Index>(axis_row.size())) = std::sqrt(residual);
      axis_row.push_back(r);
    }
  }
  return PointConfiguration(d, std::move(coords));
}

int free_dimension(int n, int d) {
  if (n < 2 || d < 1) throw ParameterError("free dimension needs n >= 2 and d >= 1");
  if (n <= d) return pair_count(n);
  return d * (d - 1) / 2 + (n - d) * d;
}

}  // namespace distspace
