#pragma once

#include "distspace/types.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace distspace {

/// Four-point planar pair sharing the distance multiset {a, a, b, b, c, 1}:
///   a = sqrt(2x² - 3x + 5/4), b = sqrt(2x² - x + 1/4), c = 2x - 1.
struct KiteTrapezoidPair {
  double x = 0.0;
  PointConfiguration kite;
  PointConfiguration trapezoid;
  std::array<double, 4> edge_lengths{};  ///< a, b, c, d (= 1)
  /// Which symbol (0=a, 1=b, 2=c, 3=d) sits on each pair, incremental order.
  std::array<int, 6> kite_pattern{};
  std::array<int, 6> trapezoid_pattern{};
};

std::array<double, 4> kite_trapezoid_lengths(double x);

/// Builds the pair for x > 1/2, or x = 1/2 with Boundary::inclusive (both
/// shapes collapse onto a segment with two coincident points). The edge
/// placements are found by searching all placements of {a,a,b,b,c,1} for
/// realizable non-congruent classes; the class with a mirror symmetry
/// fixing two vertices is the kite.
KiteTrapezoidPair kite_trapezoid(double x, Boundary mode = Boundary::strict,
                                 double tol = kStructuralTol);

/// Rows "x,a,b,c" over [x_min, x_max] in steps of `step`, with header.
std::string kite_trapezoid_family_csv(double x_min, double x_max, double step);

/// Parameters of the centrally symmetric two-fold construction.
///
/// gamma1 is symmetric under inversion through center1. Points of the second
/// block lie on the line center2 + t·direction at the given offsets, which
/// must form a set symmetric about 0; center2 - center1 is perpendicular to
/// direction. The primary points lie on the parallel line through center1
/// at `primary_offsets`; their duals sit at the negated offsets.
struct SymmetricConstructionParams {
  int dimension = 2;
  PointConfiguration gamma1;
  std::vector<double> center1;
  std::vector<double> direction;
  std::vector<double> center2;
  std::vector<double> line2_offsets;
  std::vector<double> primary_offsets;
};

struct SymmetricTwoFold {
  PointConfiguration primary;
  PointConfiguration dual;
  bool congruent = false;       ///< attached non-congruence check (always false on return)
  bool multisets_equal = false;
};

/// Throws ParameterError when the geometric invariants fail and
/// ConstructionError when the two results are congruent.
SymmetricTwoFold symmetric_two_fold(const SymmetricConstructionParams& params,
                                    double tol = kStructuralTol);

/// Documented default instance: a rotated centered rectangle, three evenly
/// spaced points on l2 at unit offset, two primary points. d = 2 or 3.
SymmetricConstructionParams default_symmetric_params(int d);

/// Random parameter set passing the invariants; deterministic per seed.
SymmetricConstructionParams random_symmetric_params(int d, std::uint64_t seed);

/// d(d+1)/2 values mean + δ_i with mutually distinct |δ_i| <= spread drawn
/// from a seeded golden-ratio sequence. Resamples until the simplex closes
/// (cap 100). With spread = 0 and require_distinct = false, returns equal
/// values.
DistanceMultiset generic_simplex_distances(int d, double mean, double spread,
                                           std::uint64_t seed, bool require_distinct = true);

}  // namespace distspace
