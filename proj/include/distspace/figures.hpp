#pragma once

#include "distspace/degeneracy.hpp"

#include <string>
#include <vector>

namespace distspace::figures {

/// Printed reference values used by the reproduce command.
struct PrintedRoot {
  PermutationConstraintSystem system;
  std::vector<double> printed_unknowns;
  int printed_k = 0;
};

/// Two-fold planar four-point system: d1..d4 fixed, d5 and d6 unknown,
/// Ω₁ = identity and Ω₂ permuting the last three slots.
PrintedRoot two_fold_planar();

/// Three-fold planar four-point system: d1..d3 fixed, d4..d6 unknown, three
/// permutations of the last three slots.
PrintedRoot three_fold_planar();

/// Closest root to the printed values (max-norm), or nullptr when none.
const RootInfo* closest_root(const std::vector<RootInfo>& roots,
                             const std::vector<double>& printed);

/// Multiset of a full six-slot solution.
DistanceMultiset sextuple_multiset(const Sextuple& slots);

inline const std::vector<std::string> kFigureNames = {"fig1", "fig2", "fig5",
                                                      "fig6", "fig7", "fig8"};

}  // namespace distspace::figures
