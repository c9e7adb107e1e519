#include "distspace/lattice.hpp"

#include "distspace/degeneracy.hpp"
#include "distspace/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>

namespace distspace {

namespace {

constexpr double kShellRelTol = 1e-9;

struct BoxBounds {
  std::vector<long> half_width;
};

BoxBounds integer_box(const LatticeBasis& basis, double cutoff) {
  const int d = basis.dimension();
  // n = B^{-T} v, so |n_i| <= |row_i(B^{-T})| · |v|.
  const Eigen::MatrixXd inv_t = basis.vectors().transpose().inverse();
  BoxBounds box;
  double tuples = 1.0;
  for (int i = 0; i < d; ++i) {
    const double reach = cutoff * inv_t.row(i).norm() * (1.0 + 1e-9);
    const long w = static_cast<long>(std::floor(reach));
    box.half_width.push_back(w);
    tuples *= 2.0 * static_cast<double>(w) + 1.0;
  }
  if (tuples > static_cast<double>(kMaxLatticeVectors)) {
    throw BudgetError("cutoff " + std::to_string(cutoff) + " needs " + std::to_string(tuples) +
                      " integer tuples (limit " + std::to_string(kMaxLatticeVectors) + ")");
  }
  return box;
}

// Squared lengths of all nonzero tuples with first coordinate n1.
void collect_shard(const Eigen::MatrixXd& gram, const BoxBounds& box, long n1, double limit2,
                   std::vector<double>& out) {
  const int d = static_cast<int>(gram.rows());
  std::vector<long> n(static_cast<std::size_t>(d), 0);
  n[0] = n1;
  std::function<void(int)> rec = [&](int axis) {
    if (axis == d) {
      bool zero = true;
      for (long v : n) zero = zero && v == 0;
      if (zero) return;
      double len2 = 0.0;
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          len2 += static_cast<double>(n[static_cast<std::size_t>(i)]) *
                  static_cast<double>(n[static_cast<std::size_t>(j)]) * gram(i, j);
        }
      }
      if (len2 <= limit2) out.push_back(std::sqrt(len2));
      return;
    }
    const long w = box.half_width[static_cast<std::size_t>(axis)];
    for (long v = -w; v <= w; ++v) {
      n[static_cast<std::size_t>(axis)] = v;
      rec(axis + 1);
    }
  };
  rec(1);
}

}  // namespace

LatticeBasis::LatticeBasis(Eigen::MatrixXd vectors, double tol) : vectors_(std::move(vectors)) {
  const auto d = vectors_.rows();
  if (d < 1 || vectors_.cols() != d) throw ShapeError("lattice basis must be d vectors in R^d");
  if (!vectors_.allFinite()) throw ShapeError("lattice basis has non-finite entries");
  double scale = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) scale += vectors_.row(i).norm();
  scale /= static_cast<double>(d);
  const double det = gram().determinant();
  if (!(scale > 0.0) || !(det > tol * std::pow(scale, 2.0 * static_cast<double>(d)))) {
    throw ParameterError("lattice basis vectors are linearly dependent");
  }
}

LatticeBasis reduce_basis(const LatticeBasis& basis) {
  Eigen::MatrixXd b = basis.vectors();
  const auto d = b.rows();
  if (d == 2) {
    for (int iter = 0; iter < 1000; ++iter) {
      if (b.row(0).squaredNorm() > b.row(1).squaredNorm()) b.row(0).swap(b.row(1));
      const double mu = std::round(b.row(0).dot(b.row(1)) / b.row(0).squaredNorm());
      if (mu == 0.0) break;
      b.row(1) -= mu * b.row(0);
    }
  } else if (d >= 3) {
    for (int iter = 0; iter < 1000; ++iter) {
      bool changed = false;
      for (Eigen::Index i = 0; i < d; ++i) {
        Eigen::RowVectorXd best = b.row(i);
        std::vector<Eigen::Index> others;
        for (Eigen::Index j = 0; j < d; ++j) {
          if (j != i) others.push_back(j);
        }
        std::vector<int> c(others.size(), -2);
        while (true) {
          Eigen::RowVectorXd cand = b.row(i);
          for (std::size_t k = 0; k < others.size(); ++k) cand += c[k] * b.row(others[k]);
          if (cand.squaredNorm() < best.squaredNorm() * (1.0 - 1e-12)) best = cand;
          std::size_t k = 0;
          while (k < c.size() && c[k] == 2) c[k++] = -2;
          if (k == c.size()) break;
          ++c[k];
        }
        if (best.squaredNorm() < b.row(i).squaredNorm() * (1.0 - 1e-12)) {
          b.row(i) = best;
          changed = true;
        }
      }
      if (!changed) break;
    }
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return b.row(x).squaredNorm() < b.row(y).squaredNorm();
  });
  Eigen::MatrixXd sorted(d, d);
  for (Eigen::Index i = 0; i < d; ++i) sorted.row(i) = b.row(order[static_cast<std::size_t>(i)]);
  return LatticeBasis(sorted);
}

long LatticeSpectrum::total() const {
  long sum = 0;
  for (long m : multiplicities) sum += m;
  return sum;
}

LatticeSpectrum lattice_distance_spectrum(const LatticeBasis& basis, double cutoff,
                                          Execution execution) {
  if (!(cutoff > 0.0) || !std::isfinite(cutoff)) throw ParameterError("cutoff must be positive");
  const BoxBounds box = integer_box(basis, cutoff);
  const Eigen::MatrixXd gram = basis.gram();
  const double limit = cutoff * (1.0 + kShellRelTol);
  const double limit2 = limit * limit;

  const long w1 = box.half_width[0];
  std::vector<std::vector<double>> shards(static_cast<std::size_t>(2 * w1 + 1));
  if (execution == Execution::serial) {
    for (long n1 = -w1; n1 <= w1; ++n1) {
      collect_shard(gram, box, n1, limit2, shards[static_cast<std::size_t>(n1 + w1)]);
    }
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (long n1 = -w1; n1 <= w1; ++n1) {
      collect_shard(gram, box, n1, limit2, shards[static_cast<std::size_t>(n1 + w1)]);
    }
  }
  std::vector<double> lengths;
  for (const auto& s : shards) lengths.insert(lengths.end(), s.begin(), s.end());
  std::sort(lengths.begin(), lengths.end());

  LatticeSpectrum out;
  out.cutoff = cutoff;
  double prev = 0.0;
  for (double v : lengths) {
    if (!out.distances.empty() && v - prev <= kShellRelTol * v) {
      ++out.multiplicities.back();
    } else {
      out.distances.push_back(v);
      out.multiplicities.push_back(1);
    }
    prev = v;
  }
  return out;
}

bool spectra_match(const LatticeSpectrum& a, const LatticeSpectrum& b, double rel_tol) {
  if (a.distances.size() != b.distances.size()) return false;
  for (std::size_t i = 0; i < a.distances.size(); ++i) {
    const double scale = std::max(a.distances[i], b.distances[i]);
    if (std::abs(a.distances[i] - b.distances[i]) > rel_tol * scale) return false;
    if (a.multiplicities[i] != b.multiplicities[i]) return false;
  }
  return true;
}

CellReconstruction reconstruct_cell(const LatticeSpectrum& spectrum, int d, double tol) {
  if (d < 1 || d > 3) throw ScopeError("cell reconstruction supports d = 1, 2, 3");
  if (spectrum.distances.empty() ||
      spectrum.distances.size() != spectrum.multiplicities.size()) {
    throw ParameterError("spectrum is empty or inconsistent");
  }
  const int m = pair_count(d + 1);
  const int shells = std::min<int>(10, static_cast<int>(spectrum.distances.size()));

  CellReconstruction result;
  std::vector<int> pick;
  std::vector<int> uses(static_cast<std::size_t>(shells), 0);
  bool done = false;

  auto try_candidate = [&]() {
    ++result.candidates_tried;
    std::vector<double> values;
    for (int s : pick) values.push_back(spectrum.distances[static_cast<std::size_t>(s)]);
    EnumerationOptions opts;
    opts.tol = tol;
    DegeneracyClassSet classes;
    try {
      classes = enumerate_simplex_classes(DistanceMultiset(values), d, opts);
    } catch (const Error&) {
      return;
    }
    for (const auto& cls : classes.classes) {
      Eigen::MatrixXd vecs(d, d);
      for (int i = 0; i < d; ++i) vecs.row(i) = cls.points().row(i + 1);
      try {
        LatticeBasis candidate(vecs, tol);
        if (spectra_match(lattice_distance_spectrum(candidate, spectrum.cutoff), spectrum)) {
          result.validated.push_back(reduce_basis(candidate));
        }
      } catch (const ParameterError&) {
        // degenerate simplex
      } catch (const BudgetError&) {
      }
    }
    if (!result.validated.empty()) {
      result.basis = result.validated.front();
      result.simplex_distances = values;
      done = true;
    }
  };

  std::function<void(int)> rec = [&](int start) {
    if (done) return;
    if (static_cast<int>(pick.size()) == m) {
      try_candidate();
      return;
    }
    for (int s = start; s < shells && !done; ++s) {
      // A vector and its negative share a shell; the simplex edges are
      // distinct up to sign.
      if (2 * (uses[static_cast<std::size_t>(s)] + 1) >
          spectrum.multiplicities[static_cast<std::size_t>(s)]) {
        continue;
      }
      ++uses[static_cast<std::size_t>(s)];
      pick.push_back(s);
      rec(s);
      pick.pop_back();
      --uses[static_cast<std::size_t>(s)];
    }
  };
  rec(0);

  if (!done) {
    throw ReconstructionError(
        "no simplex assembled from the smallest " + std::to_string(shells) +
        " shells regenerates the spectrum (" + std::to_string(result.candidates_tried) +
        " distance sets tried); the input may stem from a non-reduced basis or not be a "
        "lattice spectrum");
  }
  return result;
}

}  // namespace distspace
