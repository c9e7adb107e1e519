#include "distspace/constructions.hpp"

#include "distspace/congruence.hpp"
#include "distspace/errors.hpp"
#include "distspace/geometry.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace distspace {

namespace {

constexpr double kInverseGoldenRatio = 0.6180339887498949;

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * unit_uniform(rng);
}

DistanceAssignment pattern_assignment(const std::array<int, 6>& pattern,
                                      const std::array<double, 4>& lengths,
                                      Boundary coincident) {
  std::array<double, 6> values{};
  for (std::size_t p = 0; p < 6; ++p) values[p] = lengths[static_cast<std::size_t>(pattern[p])];
  return DistanceAssignment::from_incremental(4, values, coincident);
}

bool has_transposition_symmetry(const DistanceAssignment& dists, double tol) {
  for (const auto& perm : automorphisms(dists, tol)) {
    int moved = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) moved += perm[i] != static_cast<int>(i) ? 1 : 0;
    if (moved == 2) return true;
  }
  return false;
}

}  // namespace

std::array<double, 4> kite_trapezoid_lengths(double x) {
  const double a2 = 2.0 * x * x - 3.0 * x + 1.25;
  const double b2 = 2.0 * x * x - x + 0.25;
  return {std::sqrt(std::max(a2, 0.0)), std::sqrt(std::max(b2, 0.0)), 2.0 * x - 1.0, 1.0};
}

KiteTrapezoidPair kite_trapezoid(double x, Boundary mode, double tol) {
  if (!(x >= 0.5) || !std::isfinite(x)) throw ParameterError("kite-trapezoid needs x >= 1/2");
  if (x == 0.5 && mode == Boundary::strict) {
    throw ParameterError("x = 1/2 collapses both shapes; use boundary mode");
  }

  // Placements are searched at x itself, or at a generic x for the
  // collapsed limit, where c = 0 makes two points coincide.
  const double x_search = x > 0.5 ? x : 0.75;
  const auto search_lengths = kite_trapezoid_lengths(x_search);

  std::array<int, 6> pattern = {0, 0, 1, 1, 2, 3};
  std::vector<std::pair<std::array<int, 6>, DistanceAssignment>> classes;
  do {
    const auto dists = pattern_assignment(pattern, search_lengths, Boundary::strict);
    if (!realizability_check(dists, 2, tol).realizable) continue;
    const bool known = std::any_of(classes.begin(), classes.end(), [&](const auto& c) {
      return congruent(c.second, dists, tol);
    });
    if (!known) classes.emplace_back(pattern, dists);
  } while (std::next_permutation(pattern.begin(), pattern.end()));

  if (classes.size() != 2) {
    throw ConstructionError("expected two realizable classes for {a,a,b,b,c,1}, found " +
                            std::to_string(classes.size()));
  }
  const bool first_is_kite = has_transposition_symmetry(classes[0].second, tol);
  const bool second_is_kite = has_transposition_symmetry(classes[1].second, tol);
  if (first_is_kite == second_is_kite) {
    throw ConstructionError("could not tell the kite from the trapezoid");
  }

  KiteTrapezoidPair out;
  out.x = x;
  out.edge_lengths = kite_trapezoid_lengths(x);
  out.kite_pattern = classes[first_is_kite ? 0 : 1].first;
  out.trapezoid_pattern = classes[first_is_kite ? 1 : 0].first;
  const Boundary coincident = x > 0.5 ? Boundary::strict : Boundary::inclusive;
  out.kite = embed(pattern_assignment(out.kite_pattern, out.edge_lengths, coincident), 2, tol,
                   Boundary::inclusive);
  out.trapezoid = embed(pattern_assignment(out.trapezoid_pattern, out.edge_lengths, coincident),
                        2, tol, Boundary::inclusive);
  return out;
}

std::string kite_trapezoid_family_csv(double x_min, double x_max, double step) {
  if (!(step > 0.0) || x_max < x_min) throw ParameterError("family range needs step > 0, x_max >= x_min");
  std::ostringstream out;
  out << "x,a,b,c\n";
  char line[128];
  for (long i = 0;; ++i) {
    const double x = x_min + static_cast<double>(i) * step;
    if (x > x_max + 1e-12) break;
    const auto len = kite_trapezoid_lengths(x);
    std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g,%.12g\n", x, len[0], len[1], len[2]);
    out << line;
  }
  return out.str();
}

SymmetricTwoFold symmetric_two_fold(const SymmetricConstructionParams& params, double tol) {
  const int d = params.dimension;
  if (d < 2) throw ParameterError("symmetric construction needs d >= 2");
  const auto dim = static_cast<std::size_t>(d);
  if (params.gamma1.dimension() != d || params.center1.size() != dim ||
      params.direction.size() != dim || params.center2.size() != dim) {
    throw ParameterError("all construction vectors must have dimension " + std::to_string(d));
  }
  if (params.line2_offsets.empty()) throw ParameterError("line l2 needs at least one point");
  if (params.primary_offsets.empty()) throw ParameterError("need at least one primary point");

  const Eigen::Map<const Eigen::VectorXd> c1(params.center1.data(), d);
  const Eigen::Map<const Eigen::VectorXd> c2(params.center2.data(), d);
  Eigen::VectorXd u = Eigen::Map<const Eigen::VectorXd>(params.direction.data(), d);
  if (!(u.norm() > 0.0)) throw ParameterError("line direction must be nonzero");
  u.normalize();

  const Eigen::MatrixXd& g1 = params.gamma1.points();
  double length = (c2 - c1).norm();
  for (Eigen::Index i = 0; i < g1.rows(); ++i) length = std::max(length, (g1.row(i).transpose() - c1).norm());
  for (double t : params.line2_offsets) length = std::max(length, std::abs(t));
  for (double t : params.primary_offsets) length = std::max(length, std::abs(t));
  const double eps = tol * std::max(length, 1e-300) * 1e3;

  for (Eigen::Index i = 0; i < g1.rows(); ++i) {
    const Eigen::VectorXd mirror = 2.0 * c1 - g1.row(i).transpose();
    bool found = false;
    for (Eigen::Index j = 0; j < g1.rows() && !found; ++j) {
      found = (g1.row(j).transpose() - mirror).norm() <= eps;
    }
    if (!found) throw ParameterError("gamma1 is not centrally symmetric about center1");
  }
  if (!((c2 - c1).norm() > eps)) throw ParameterError("center2 must differ from center1");
  if (std::abs((c2 - c1).dot(u)) > eps) {
    throw ParameterError("segment center1-center2 must be perpendicular to the lines");
  }
  std::vector<double> l2 = params.line2_offsets;
  std::sort(l2.begin(), l2.end());
  for (std::size_t i = 0; i < l2.size(); ++i) {
    if (std::abs(l2[i] + l2[l2.size() - 1 - i]) > eps) {
      throw ParameterError("points on l2 must be symmetric about center2");
    }
  }
  const auto& prim = params.primary_offsets;
  for (std::size_t i = 0; i < prim.size(); ++i) {
    if (std::abs(prim[i]) <= eps) throw ParameterError("a primary point sits on center1");
    for (std::size_t j = i + 1; j < prim.size(); ++j) {
      if (std::abs(prim[i] + prim[j]) <= eps) {
        throw ParameterError("two primary points are symmetric about center1");
      }
      if (std::abs(prim[i] - prim[j]) <= eps) throw ParameterError("primary points repeat");
    }
  }

  const auto n1 = g1.rows();
  const auto n2 = static_cast<Eigen::Index>(params.line2_offsets.size());
  const auto n3 = static_cast<Eigen::Index>(prim.size());
  Eigen::MatrixXd primary(n1 + n2 + n3, d);
  primary.topRows(n1) = g1;
  for (Eigen::Index i = 0; i < n2; ++i) {
    primary.row(n1 + i) = (c2 + params.line2_offsets[static_cast<std::size_t>(i)] * u).transpose();
  }
  Eigen::MatrixXd dual = primary;
  for (Eigen::Index i = 0; i < n3; ++i) {
    const double t = prim[static_cast<std::size_t>(i)];
    primary.row(n1 + n2 + i) = (c1 + t * u).transpose();
    dual.row(n1 + n2 + i) = (c1 - t * u).transpose();
  }

  SymmetricTwoFold out{PointConfiguration(d, primary), PointConfiguration(d, dual), false, false};
  DistanceAssignment dp, dd;
  try {
    dp = pairwise_distances(out.primary, tol);
    dd = pairwise_distances(out.dual, tol);
  } catch (const DuplicatePointError& e) {
    throw ParameterError(std::string("construction has coincident points: ") + e.what());
  }
  auto vp = dp.upper_triangle();
  auto vd = dd.upper_triangle();
  std::sort(vp.begin(), vp.end());
  std::sort(vd.begin(), vd.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < vp.size(); ++i) worst = std::max(worst, std::abs(vp[i] - vd[i]));
  out.multisets_equal = worst <= 1e-12 * std::max(1.0, length);
  out.congruent = congruent(dp, dd, tol);
  if (out.congruent) {
    throw ConstructionError(
        "primary and dual configurations are congruent (accidental symmetry); "
        "break the mirror symmetry of gamma1 about the hyperplane normal to the lines");
  }
  return out;
}

SymmetricConstructionParams default_symmetric_params(int d) {
  if (d != 2 && d != 3) throw ParameterError("default parameters exist for d = 2 and d = 3");
  SymmetricConstructionParams p;
  p.dimension = d;
  p.line2_offsets = {-1.0, 0.0, 1.0};
  p.primary_offsets = {0.5, 1.3};
  Eigen::MatrixXd rect(4, d);
  if (d == 2) {
    const Eigen::Rotation2Dd rot(0.4);
    const Eigen::Vector2d e1 = rot * Eigen::Vector2d(1.0, 0.0);
    const Eigen::Vector2d e2 = rot * Eigen::Vector2d(0.0, 0.6);
    rect.row(0) = (e1 + e2).transpose();
    rect.row(1) = (-e1 + e2).transpose();
    rect.row(2) = (-e1 - e2).transpose();
    rect.row(3) = (e1 - e2).transpose();
    p.center1 = {0.0, 0.0};
    p.direction = {1.0, 0.0};
    p.center2 = {0.0, 1.0};
  } else {
    const Eigen::Matrix3d rot = (Eigen::AngleAxisd(0.4, Eigen::Vector3d::UnitZ()) *
                                 Eigen::AngleAxisd(0.7, Eigen::Vector3d::UnitX()))
                                    .toRotationMatrix();
    const Eigen::Vector3d e1 = rot * Eigen::Vector3d(1.0, 0.0, 0.0);
    const Eigen::Vector3d e2 = rot * Eigen::Vector3d(0.0, 0.6, 0.0);
    rect.row(0) = (e1 + e2).transpose();
    rect.row(1) = (-e1 + e2).transpose();
    rect.row(2) = (-e1 - e2).transpose();
    rect.row(3) = (e1 - e2).transpose();
    p.center1 = {0.0, 0.0, 0.0};
    p.direction = {1.0, 0.0, 0.0};
    p.center2 = {0.0, 0.6, 0.8};
  }
  p.gamma1 = PointConfiguration(d, rect);
  return p;
}

SymmetricConstructionParams random_symmetric_params(int d, std::uint64_t seed) {
  if (d < 2) throw ParameterError("symmetric construction needs d >= 2");
  std::mt19937_64 rng(seed);
  SymmetricConstructionParams p;
  p.dimension = d;

  Eigen::VectorXd c1(d);
  for (int k = 0; k < d; ++k) c1(k) = uniform(rng, -0.5, 0.5);
  const int half = 2 + static_cast<int>(rng() % 2);
  Eigen::MatrixXd g1(2 * half, d);
  for (int i = 0; i < half; ++i) {
    Eigen::VectorXd v(d);
    for (int k = 0; k < d; ++k) v(k) = uniform(rng, -1.0, 1.0);
    g1.row(2 * i) = (c1 + v).transpose();
    g1.row(2 * i + 1) = (c1 - v).transpose();
  }

  Eigen::VectorXd u(d);
  do {
    for (int k = 0; k < d; ++k) u(k) = uniform(rng, -1.0, 1.0);
  } while (u.norm() < 0.2);
  u.normalize();
  Eigen::VectorXd w(d);
  do {
    for (int k = 0; k < d; ++k) w(k) = uniform(rng, -1.0, 1.0);
    w -= w.dot(u) * u;
  } while (w.norm() < 0.2);
  w.normalize();
  const Eigen::VectorXd c2 = c1 + uniform(rng, 0.6, 1.5) * w;

  const int n2 = 2 + static_cast<int>(rng() % 3);
  for (int i = 0; i < n2 / 2; ++i) {
    const double t = uniform(rng, 0.3, 1.5);
    p.line2_offsets.push_back(t);
    p.line2_offsets.push_back(-t);
  }
  if (n2 % 2 == 1) p.line2_offsets.push_back(0.0);

  const int n3 = 1 + static_cast<int>(rng() % 3);
  std::vector<double> magnitudes;
  while (static_cast<int>(magnitudes.size()) < n3) {
    const double m = uniform(rng, 0.2, 1.6);
    const bool close = std::any_of(magnitudes.begin(), magnitudes.end(),
                                   [&](double o) { return std::abs(o - m) < 0.05; });
    if (!close) magnitudes.push_back(m);
  }
  for (double m : magnitudes) p.primary_offsets.push_back((rng() & 1U) ? m : -m);

  p.gamma1 = PointConfiguration(d, g1);
  p.center1.assign(c1.data(), c1.data() + d);
  p.direction.assign(u.data(), u.data() + d);
  p.center2.assign(c2.data(), c2.data() + d);
  return p;
}

DistanceMultiset generic_simplex_distances(int d, double mean, double spread,
                                           std::uint64_t seed, bool require_distinct) {
  if (d < 1) throw ParameterError("simplex dimension must be positive");
  if (!(mean > 0.0)) throw ParameterError("mean distance must be positive");
  if (!(spread >= 0.0)) throw ParameterError("spread must be nonnegative");
  const int m = pair_count(d + 1);
  if (spread == 0.0) {
    if (require_distinct) throw ParameterError("distinct offsets need spread > 0");
    return DistanceMultiset(std::vector<double>(static_cast<std::size_t>(m), mean));
  }
  std::mt19937_64 rng(seed);
  constexpr int kMaxAttempts = 100;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const double start = unit_uniform(rng);
    std::vector<double> values;
    for (int i = 0; i < m; ++i) {
      double frac = start + (i + 1) * kInverseGoldenRatio;
      frac -= std::floor(frac);
      values.push_back(mean + spread * (2.0 * frac - 1.0));
    }
    if (std::any_of(values.begin(), values.end(), [](double v) { return !(v > 0.0); })) continue;
    const auto dists = DistanceAssignment::from_incremental(d + 1, values);
    if (!realizability_check(dists, d).realizable) continue;
    if (!simplex_inequality_holds(dists, d, kStructuralTol, Boundary::strict)) continue;
    return DistanceMultiset(values);
  }
  throw ParameterError("spread too large: no closing simplex after " +
                       std::to_string(kMaxAttempts) + " samples");
}

}  // namespace distspace
