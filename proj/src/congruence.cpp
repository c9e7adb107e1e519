#include "distspace/congruence.hpp"

#include "distspace/errors.hpp"
#include "distspace/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace distspace {

namespace {

struct Matcher {
  Eigen::MatrixXd a;
  Eigen::MatrixXd b;
  double eps = 0.0;
  std::vector<std::vector<int>> candidates;  // candidates[i]: b-points i may map to
  std::vector<int> order;                    // a-points in search order

  Matcher(const DistanceAssignment& da, const DistanceAssignment& db, double tol,
          bool rescale) {
    if (da.size() != db.size()) throw ShapeError("congruence needs equal point counts");
    a = da.matrix();
    b = db.matrix();
    const double sa = da.mean_distance();
    const double sb = db.mean_distance();
    if (rescale) {
      if (sa > 0.0) a /= sa;
      if (sb > 0.0) b /= sb;
      eps = tol;
    } else {
      eps = tol * (sa > 0.0 ? sa : 1.0);
    }
    const int n = da.size();
    std::vector<std::vector<double>> rows_a(static_cast<std::size_t>(n));
    std::vector<std::vector<double>> rows_b(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        rows_a[static_cast<std::size_t>(i)].push_back(a(i, j));
        rows_b[static_cast<std::size_t>(i)].push_back(b(i, j));
      }
      std::sort(rows_a[static_cast<std::size_t>(i)].begin(), rows_a[static_cast<std::size_t>(i)].end());
      std::sort(rows_b[static_cast<std::size_t>(i)].begin(), rows_b[static_cast<std::size_t>(i)].end());
    }
    candidates.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const auto& ra = rows_a[static_cast<std::size_t>(i)];
        const auto& rb = rows_b[static_cast<std::size_t>(j)];
        bool match = true;
        for (std::size_t k = 0; k < ra.size() && match; ++k) {
          match = std::abs(ra[k] - rb[k]) <= eps;
        }
        if (match) candidates[static_cast<std::size_t>(i)].push_back(j);
      }
    }
    order.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
      return candidates[static_cast<std::size_t>(x)].size() <
             candidates[static_cast<std::size_t>(y)].size();
    });
  }

  // Calls `found` for each complete relabeling; stops when it returns false.
  void search(const std::function<bool(const std::vector<int>&)>& found) const {
    const int n = static_cast<int>(order.size());
    std::vector<int> image(static_cast<std::size_t>(n), -1);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    std::function<bool(int)> step = [&](int depth) -> bool {
      if (depth == n) return found(image);
      const int i = order[static_cast<std::size_t>(depth)];
      for (int j : candidates[static_cast<std::size_t>(i)]) {
        if (used[static_cast<std::size_t>(j)]) continue;
        bool ok = true;
        for (int t = 0; t < depth && ok; ++t) {
          const int k = order[static_cast<std::size_t>(t)];
          ok = std::abs(a(i, k) - b(j, image[static_cast<std::size_t>(k)])) <= eps;
        }
        if (!ok) continue;
        image[static_cast<std::size_t>(i)] = j;
        used[static_cast<std::size_t>(j)] = true;
        const bool keep_going = step(depth + 1);
        used[static_cast<std::size_t>(j)] = false;
        image[static_cast<std::size_t>(i)] = -1;
        if (!keep_going) return false;
      }
      return true;
    };
    step(0);
  }
};

}  // namespace

std::optional<std::vector<int>> find_relabeling(const DistanceAssignment& a,
                                                const DistanceAssignment& b, double tol,
                                                bool allow_isotropic_rescale) {
  const Matcher m(a, b, tol, allow_isotropic_rescale);
  std::optional<std::vector<int>> result;
  m.search([&](const std::vector<int>& image) {
    result = image;
    return false;
  });
  return result;
}

bool congruent(const DistanceAssignment& a, const DistanceAssignment& b, double tol,
               bool allow_isotropic_rescale) {
  return find_relabeling(a, b, tol, allow_isotropic_rescale).has_value();
}

bool congruent(const PointConfiguration& a, const PointConfiguration& b, double tol,
               bool allow_isotropic_rescale) {
  if (a.size() != b.size() || a.dimension() != b.dimension()) {
    throw ShapeError("congruence needs configurations with equal n and d");
  }
  if (a.size() == 1) return true;
  return congruent(pairwise_distances(a, tol, Boundary::inclusive),
                   pairwise_distances(b, tol, Boundary::inclusive), tol,
                   allow_isotropic_rescale);
}

std::vector<std::vector<int>> automorphisms(const DistanceAssignment& a, double tol) {
  const Matcher m(a, a, tol, false);
  std::vector<std::vector<int>> out;
  m.search([&](const std::vector<int>& image) {
    out.push_back(image);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace distspace
