#include "distspace/figures.hpp"

#include <algorithm>
#include <cmath>

namespace distspace::figures {

PrintedRoot two_fold_planar() {
  PrintedRoot r;
  r.system.free_values = {{0, 1.0}, {1, 1.58114}, {2, 0.70710}, {3, 0.87228}};
  r.system.unknowns = {4, 5};
  r.system.equations = {{0, 1, 2, 3, 4, 5}, {0, 1, 2, 5, 3, 4}};
  r.printed_unknowns = {1.32698, 1.54551};
  r.printed_k = 2;
  return r;
}

PrintedRoot three_fold_planar() {
  PrintedRoot r;
  r.system.free_values = {{0, 1.0}, {1, 1.581144}, {2, 0.70710}};
  r.system.unknowns = {3, 4, 5};
  r.system.equations = {{0, 1, 2, 3, 4, 5}, {0, 1, 2, 4, 5, 3}, {0, 1, 2, 3, 5, 4}};
  r.printed_unknowns = {1.34371, 0.37267, 0.68718};
  r.printed_k = 3;
  return r;
}

const RootInfo* closest_root(const std::vector<RootInfo>& roots,
                             const std::vector<double>& printed) {
  const RootInfo* best = nullptr;
  double best_gap = 0.0;
  for (const auto& root : roots) {
    if (root.solution.unknowns.size() != printed.size()) continue;
    double gap = 0.0;
    for (std::size_t i = 0; i < printed.size(); ++i) {
      gap = std::max(gap, std::abs(root.solution.unknowns[i] - printed[i]));
    }
    if (best == nullptr || gap < best_gap) {
      best = &root;
      best_gap = gap;
    }
  }
  return best;
}

DistanceMultiset sextuple_multiset(const Sextuple& slots) {
  return DistanceMultiset(std::vector<double>(slots.begin(), slots.end()));
}

}  // namespace distspace::figures
