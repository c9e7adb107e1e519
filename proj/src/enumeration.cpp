#include "distspace/congruence.hpp"
#include "distspace/degeneracy.hpp"
#include "distspace/errors.hpp"
#include "distspace/geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>

namespace distspace {

namespace {

struct ClassEntry {
  DistanceAssignment dists;
  PointConfiguration config;
  std::vector<double> key;  // flattened coordinates
};

// Adds a realized configuration, merging it into a congruent class if one
// exists. The lexicographically smallest representative wins, which makes
// the result independent of discovery order.
void merge_class(std::vector<ClassEntry>& classes, ClassEntry entry, double tol) {
  for (auto& existing : classes) {
    if (congruent(existing.dists, entry.dists, tol)) {
      if (entry.key < existing.key) existing = std::move(entry);
      return;
    }
  }
  classes.push_back(std::move(entry));
}

// Walk state for one branch of the assignment tree.
struct Walker {
  std::vector<double> pair_values;
  std::vector<char> used;
  double covered = 0.0;
  std::vector<ClassEntry> classes;
};

// A partially assigned prefix handed to a shard.
struct Prefix {
  Walker state;
  int depth = 0;
  double weight = 0.0;
};

class AssignmentTree {
 public:
  AssignmentTree(const DistanceMultiset& multiset, int d, const EnumerationOptions& options)
      : n_(multiset.point_count()),
        d_(d),
        options_(options),
        pairs_(incremental_pairs(n_)),
        values_(multiset.values().rbegin(), multiset.values().rend()) {
    const double mean = multiset.mean();
    scale2_ = mean > 0.0 ? mean * mean : 1.0;
  }

  Walker root() const {
    Walker w;
    w.pair_values.assign(pairs_.size(), 0.0);
    w.used.assign(values_.size(), 0);
    // Largest value fixed on pair (0,1) quotients out rotations and translations.
    w.pair_values[0] = values_[0];
    w.used[0] = 1;
    return w;
  }

  int pair_total() const { return static_cast<int>(pairs_.size()); }
  bool aborted() const { return aborted_.load(std::memory_order_relaxed); }
  std::uint64_t evaluations() const { return evaluations_.load(); }

  // Depth-first walk from `depth` (next pair to assign). Prefixes at
  // `emit_depth` are handed to `emit` instead of being expanded.
  void walk(Walker& w, int depth, double weight, int emit_depth,
            const std::function<void(const Walker&, int, double)>* emit) {
    if (aborted()) return;
    if (depth == pair_total()) {
      realize(w);
      w.covered += weight;
      return;
    }
    if (emit != nullptr && depth == emit_depth) {
      (*emit)(w, depth, weight);
      return;
    }
    int remaining = 0;
    for (char u : w.used) remaining += u == 0 ? 1 : 0;
    const double child_weight = weight / remaining;
    double skipped = 0.0;
    for (std::size_t k = 0; k < values_.size(); ++k) {
      if (w.used[k]) continue;
      // Equal values produce identical subtrees; expand only the first.
      if (k > 0 && values_[k] == values_[k - 1] && !w.used[k - 1]) {
        skipped += child_weight;
        continue;
      }
      w.used[k] = 1;
      w.pair_values[static_cast<std::size_t>(depth)] = values_[k];
      const auto [i, j] = pairs_[static_cast<std::size_t>(depth)];
      const bool point_complete = (i == j - 1);
      if (!point_complete || j < 2 || partial_feasible(w, j)) {
        walk(w, depth + 1, child_weight, emit_depth, emit);
      } else if (!aborted()) {
        w.covered += child_weight;
      }
      w.used[k] = 0;
      if (aborted()) return;
    }
    w.covered += skipped;
  }

 private:
  // Gram test on points 0..j once all their distances are placed.
  bool partial_feasible(const Walker& w, int j) {
    const auto count = evaluations_.fetch_add(1, std::memory_order_relaxed) + 1;
    if (count > options_.budget) {
      aborted_.store(true, std::memory_order_relaxed);
      return false;
    }
    auto dist = [&](int a, int b) {
      if (a == b) return 0.0;
      if (a > b) std::swap(a, b);
      return w.pair_values[static_cast<std::size_t>(pair_count(b) + a)];
    };
    Eigen::MatrixXd g(j, j);
    for (int a = 1; a <= j; ++a) {
      for (int b = a; b <= j; ++b) {
        const double da = dist(a, 0), db = dist(b, 0), dab = dist(a, b);
        g(a - 1, b - 1) = g(b - 1, a - 1) = 0.5 * (da * da + db * db - dab * dab);
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g, Eigen::EigenvaluesOnly);
    const auto& ev = eig.eigenvalues();
    const double cut = options_.tol * scale2_;
    if (ev(0) < -cut) return false;
    int rank = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) rank += ev(i) > cut ? 1 : 0;
    return rank <= d_;
  }

  void realize(Walker& w) {
    const auto dists =
        DistanceAssignment::from_incremental(n_, w.pair_values, Boundary::inclusive);
    try {
      PointConfiguration config = embed(dists, d_, options_.tol, Boundary::inclusive);
      auto key = config.flattened();
      merge_class(w.classes, ClassEntry{dists, std::move(config), std::move(key)},
                  options_.tol);
    } catch (const RealizabilityError&) {
      // Passed the incremental Gram test but not the full report.
    }
  }

  int n_;
  int d_;
  EnumerationOptions options_;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<double> values_;  // descending
  double scale2_ = 1.0;
  std::atomic<std::uint64_t> evaluations_{0};
  std::atomic<bool> aborted_{false};
};

DegeneracyClassSet finish(const DistanceMultiset& multiset, int d,
                          std::vector<ClassEntry> classes, double covered, bool aborted,
                          std::uint64_t evaluations) {
  std::sort(classes.begin(), classes.end(),
            [](const ClassEntry& a, const ClassEntry& b) { return a.key < b.key; });
  DegeneracyClassSet out;
  out.multiset = multiset;
  out.dimension = d;
  for (auto& c : classes) out.classes.push_back(std::move(c.config));
  out.complete = !aborted;
  out.explored_fraction = aborted ? std::min(covered, 1.0) : 1.0;
  out.evaluations = evaluations;
  return out;
}

}  // namespace

DegeneracyClassSet enumerate_assemblies(const DistanceMultiset& multiset, int d,
                                        const EnumerationOptions& options) {
  if (d < 1) throw ShapeError("target dimension must be positive");
  if (multiset.point_count() < 2) throw ShapeError("multiset must describe at least two points");
  AssignmentTree tree(multiset, d, options);

  if (options.execution == Execution::serial || tree.pair_total() <= 3) {
    Walker w = tree.root();
    tree.walk(w, 1, 1.0, -1, nullptr);
    return finish(multiset, d, std::move(w.classes), w.covered, tree.aborted(),
                  tree.evaluations());
  }

  // Shards: every feasible placement of the first three pairs.
  std::vector<Prefix> prefixes;
  double covered = 0.0;
  std::function<void(const Walker&, int, double)> emit = [&](const Walker& w, int depth,
                                                             double weight) {
    Prefix p;
    p.state = w;
    p.state.covered = 0.0;
    p.depth = depth;
    p.weight = weight;
    prefixes.push_back(std::move(p));
  };
  {
    Walker w = tree.root();
    tree.walk(w, 1, 1.0, 3, &emit);
    covered += w.covered;
  }

  const auto count = static_cast<std::int64_t>(prefixes.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    auto& p = prefixes[static_cast<std::size_t>(i)];
    tree.walk(p.state, p.depth, p.weight, -1, nullptr);
  }

  std::vector<ClassEntry> classes;
  for (auto& p : prefixes) {
    covered += p.state.covered;
    for (auto& c : p.state.classes) merge_class(classes, std::move(c), options.tol);
  }
  return finish(multiset, d, std::move(classes), covered, tree.aborted(), tree.evaluations());
}

boost::multiprecision::cpp_int kmax_simplex(int d) {
  if (d < 2) throw ParameterError("kmax_simplex needs d >= 2");
  const int m = d * (d + 1) / 2;
  boost::multiprecision::cpp_int f = 1;
  for (int i = 2; i <= m - 1; ++i) f *= i;
  boost::multiprecision::cpp_int denom = 1;
  denom <<= (d - 1);
  return f / denom;
}

DegeneracyClassSet enumerate_simplex_classes(const DistanceMultiset& multiset, int d,
                                             const EnumerationOptions& options) {
  if (d < 1 || multiset.point_count() != d + 1) {
    throw ShapeError("a " + std::to_string(d) + "-simplex needs " +
                     std::to_string(pair_count(d + 1)) + " distances");
  }
  return enumerate_assemblies(multiset, d, options);
}

}  // namespace distspace
