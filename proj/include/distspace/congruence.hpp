#pragma once

#include "distspace/types.hpp"

#include <optional>
#include <vector>

namespace distspace {

/// Searches for a relabeling π with a(i,j) ≈ b(π(i),π(j)) for all i, j.
/// Tolerance is relative to the mean pair distance of `a`. With
/// `allow_isotropic_rescale`, both matrices are first divided by their own
/// mean pair distance. Throws ShapeError on size mismatch.
std::optional<std::vector<int>> find_relabeling(const DistanceAssignment& a,
                                                const DistanceAssignment& b,
                                                double tol = kStructuralTol,
                                                bool allow_isotropic_rescale = false);

bool congruent(const DistanceAssignment& a, const DistanceAssignment& b,
               double tol = kStructuralTol, bool allow_isotropic_rescale = false);

/// Congruence up to translation, rotation and reflection (and optionally
/// uniform scaling). Throws ShapeError unless n and d agree.
bool congruent(const PointConfiguration& a, const PointConfiguration& b,
               double tol = kStructuralTol, bool allow_isotropic_rescale = false);

/// Every relabeling that maps the distance matrix onto itself.
std::vector<std::vector<int>> automorphisms(const DistanceAssignment& a,
                                            double tol = kStructuralTol);

}  // namespace distspace
