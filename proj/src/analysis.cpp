#include "distspace/analysis.hpp"

#include "distspace/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace distspace {

namespace {

Eigen::MatrixXd coordinate_distances(const PointConfiguration& config) {
  const int n = config.size();
  Eigen::MatrixXd dist = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      dist(i, j) = dist(j, i) = (config.points().row(i) - config.points().row(j)).norm();
    }
  }
  return dist;
}

struct LengthInterval {
  double lo;
  double hi;
};

// Single-linkage grouping of a sorted list: neighbours within tol share a group.
void append_intervals(const std::vector<double>& sorted, double tol,
                      std::vector<LengthInterval>& out) {
  for (double v : sorted) {
    if (!out.empty() && v - out.back().hi <= tol) {
      out.back().hi = std::max(out.back().hi, v);
    } else {
      out.push_back({v, v});
    }
  }
}

std::vector<LengthInterval> merge_intervals(std::vector<LengthInterval> all, double tol) {
  std::sort(all.begin(), all.end(),
            [](const LengthInterval& a, const LengthInterval& b) { return a.lo < b.lo; });
  std::vector<LengthInterval> merged;
  for (const auto& iv : all) {
    if (!merged.empty() && iv.lo - merged.back().hi <= tol) {
      merged.back().hi = std::max(merged.back().hi, iv.hi);
    } else {
      merged.push_back(iv);
    }
  }
  return merged;
}

struct Shard {
  std::vector<LengthInterval> intervals;
  std::vector<Circuit> circuits;
  Circuit shortest;
  bool has_shortest = false;
};

// All undirected cycles 0 -> first -> ... -> last -> 0 with first < last.
void run_shard(const Eigen::MatrixXd& dist, int first, bool list, double tol, Shard& shard) {
  const int n = static_cast<int>(dist.rows());
  std::vector<int> rest;
  for (int v = 1; v < n; ++v) {
    if (v != first) rest.push_back(v);
  }
  std::vector<double> lengths;
  do {
    if (first > rest.back()) continue;
    double len = dist(0, first);
    int prev = first;
    for (int v : rest) {
      len += dist(prev, v);
      prev = v;
    }
    len += dist(prev, 0);
    lengths.push_back(len);
    const bool better = !shard.has_shortest || len < shard.shortest.length;
    if (list || better) {
      Circuit c;
      c.order.reserve(static_cast<std::size_t>(n));
      c.order.push_back(0);
      c.order.push_back(first);
      c.order.insert(c.order.end(), rest.begin(), rest.end());
      c.length = len;
      if (better) {
        shard.shortest = c;
        shard.has_shortest = true;
      }
      if (list) shard.circuits.push_back(std::move(c));
    }
  } while (std::next_permutation(rest.begin(), rest.end()));
  std::sort(lengths.begin(), lengths.end());
  append_intervals(lengths, tol, shard.intervals);
}

long long factorial(int k) {
  long long f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

TriangleMultiset triangle_multiset(const PointConfiguration& config) {
  const int n = config.size();
  if (n < 3) throw ShapeError("triangle multiset needs at least three points");
  const Eigen::MatrixXd dist = coordinate_distances(config);
  TriangleMultiset out;
  out.triples.reserve(static_cast<std::size_t>(n * (n - 1) * (n - 2) / 6));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        SideTriple t{dist(i, j), dist(i, k), dist(j, k)};
        std::sort(t.begin(), t.end());
        out.triples.push_back(t);
      }
    }
  }
  std::sort(out.triples.begin(), out.triples.end());
  return out;
}

CircuitReport hamiltonian_circuits(const PointConfiguration& config,
                                   const CircuitOptions& options) {
  const int n = config.size();
  if (n < 3) throw ShapeError("circuits need at least three points");
  if (n > kMaxCircuitPoints) {
    throw ScopeError("brute-force circuit enumeration is limited to " +
                     std::to_string(kMaxCircuitPoints) + " points, got " + std::to_string(n));
  }
  const Eigen::MatrixXd dist = coordinate_distances(config);
  const double mean = dist.sum() / (static_cast<double>(n) * (n - 1));
  const double tol = options.length_tol.value_or(kStructuralTol * mean);
  if (!(tol >= 0.0)) throw ParameterError("length tolerance must be nonnegative");

  CircuitReport report;
  report.circuit_count = factorial(n - 1) / 2;
  report.length_tol = tol;
  const bool list = report.circuit_count <= options.listing_limit;

  std::vector<Shard> shards(static_cast<std::size_t>(n - 1));
  if (options.execution == Execution::serial) {
    for (int f = 1; f < n; ++f) run_shard(dist, f, list, tol, shards[static_cast<std::size_t>(f - 1)]);
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (int f = 1; f < n; ++f) run_shard(dist, f, list, tol, shards[static_cast<std::size_t>(f - 1)]);
  }

  std::vector<LengthInterval> intervals;
  for (auto& shard : shards) {
    intervals.insert(intervals.end(), shard.intervals.begin(), shard.intervals.end());
    if (shard.has_shortest &&
        (report.shortest.order.empty() || shard.shortest.length < report.shortest.length)) {
      report.shortest = shard.shortest;
    }
    if (list) {
      for (auto& c : shard.circuits) report.circuits.push_back(std::move(c));
    }
  }
  for (const auto& iv : merge_intervals(std::move(intervals), tol)) {
    report.distinct_lengths.push_back(iv.lo);
  }
  return report;
}

MultisetComparison multiset_equal(const DistanceMultiset& a, const DistanceMultiset& b,
                                  double tol) {
  if (a.size() != b.size()) {
    return {false, "cardinality mismatch: " + std::to_string(a.size()) + " vs " +
                       std::to_string(b.size())};
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = std::abs(a.values()[i] - b.values()[i]);
    if (!(diff <= tol)) {
      return {false, "sorted value " + std::to_string(i) + " differs: " +
                         format_value(a.values()[i]) + " vs " + format_value(b.values()[i])};
    }
  }
  return {true, {}};
}

MultisetComparison multiset_equal(const TriangleMultiset& a, const TriangleMultiset& b,
                                  double tol) {
  if (a.triples.size() != b.triples.size()) {
    return {false, "cardinality mismatch: " + std::to_string(a.triples.size()) + " vs " +
                       std::to_string(b.triples.size())};
  }
  for (std::size_t i = 0; i < a.triples.size(); ++i) {
    for (std::size_t c = 0; c < 3; ++c) {
      if (!(std::abs(a.triples[i][c] - b.triples[i][c]) <= tol)) {
        return {false, "triangle " + std::to_string(i) + " side " + std::to_string(c) +
                           " differs: " + format_value(a.triples[i][c]) + " vs " +
                           format_value(b.triples[i][c])};
      }
    }
  }
  return {true, {}};
}

}  // namespace distspace
