#include "distspace/congruence.hpp"
#include "distspace/degeneracy.hpp"
#include "distspace/errors.hpp"
#include "distspace/geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>

namespace distspace {

namespace {

struct GramEntries {
  double m00, m01, m02, m11, m12, m22;
};

GramEntries minus_two_gram(const Sextuple& x) {
  const double s1 = x[0] * x[0], s2 = x[1] * x[1], s3 = x[2] * x[2];
  const double s4 = x[3] * x[3], s5 = x[4] * x[4], s6 = x[5] * x[5];
  return {-2.0 * s1, s3 - s1 - s2, s5 - s1 - s4, -2.0 * s2, s6 - s2 - s4, -2.0 * s4};
}

}  // namespace

double constraint_polynomial(const Sextuple& x) {
  const auto [m00, m01, m02, m11, m12, m22] = minus_two_gram(x);
  return m00 * (m11 * m22 - m12 * m12) - m01 * (m01 * m22 - m12 * m02) +
         m02 * (m01 * m12 - m11 * m02);
}

Sextuple constraint_polynomial_gradient(const Sextuple& x) {
  const auto [m00, m01, m02, m11, m12, m22] = minus_two_gram(x);
  // Cofactors of the symmetric matrix.
  const double c00 = m11 * m22 - m12 * m12;
  const double c11 = m00 * m22 - m02 * m02;
  const double c22 = m00 * m11 - m01 * m01;
  const double c01 = m12 * m02 - m01 * m22;
  const double c02 = m01 * m12 - m11 * m02;
  const double c12 = m01 * m02 - m00 * m12;
  // dD/d(x_i²); off-diagonal entries occur twice.
  const std::array<double, 6> ds = {
      -2.0 * c00 - 2.0 * c01 - 2.0 * c02,
      -2.0 * c01 - 2.0 * c11 - 2.0 * c12,
      2.0 * c01,
      -2.0 * c02 - 2.0 * c12 - 2.0 * c22,
      2.0 * c02,
      2.0 * c12,
  };
  Sextuple g{};
  for (std::size_t i = 0; i < 6; ++i) g[i] = 2.0 * x[i] * ds[i];
  return g;
}

void PermutationConstraintSystem::validate() const {
  std::set<int> seen;
  for (const auto& [slot, value] : free_values) {
    if (slot < 0 || slot > 5) throw ShapeError("free slot out of range 0..5");
    if (!(value > 0.0) || !std::isfinite(value)) throw ShapeError("free values must be positive");
    seen.insert(slot);
  }
  for (int u : unknowns) {
    if (u < 0 || u > 5) throw ShapeError("unknown slot out of range 0..5");
    if (!seen.insert(u).second) throw ShapeError("slot listed twice in system");
  }
  if (seen.size() != 6) throw ShapeError("free and unknown slots must cover all six distances");
  for (const auto& eq : equations) {
    std::array<int, 6> sorted = eq;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 6; ++i) {
      if (sorted[static_cast<std::size_t>(i)] != i) throw ShapeError("equation is not a permutation of six slots");
    }
  }
  if (equations.size() > unknowns.size()) {
    throw ShapeError("more equations than unknowns");
  }
}

double PermutationConstraintSystem::free_mean() const {
  if (free_values.empty()) return 1.0;
  double sum = 0.0;
  for (const auto& [slot, value] : free_values) sum += value;
  return sum / static_cast<double>(free_values.size());
}

Sextuple PermutationConstraintSystem::assemble(const std::vector<double>& unknown_values) const {
  Sextuple slots{};
  for (const auto& [slot, value] : free_values) slots[static_cast<std::size_t>(slot)] = value;
  for (std::size_t i = 0; i < unknowns.size(); ++i) {
    slots[static_cast<std::size_t>(unknowns[i])] = unknown_values[i];
  }
  return slots;
}

std::vector<double> PermutationConstraintSystem::residuals(const Sextuple& slots) const {
  std::vector<double> out;
  out.reserve(equations.size());
  for (const auto& eq : equations) {
    Sextuple x{};
    for (std::size_t p = 0; p < 6; ++p) x[p] = slots[static_cast<std::size_t>(eq[p])];
    out.push_back(constraint_polynomial(x));
  }
  return out;
}

namespace {

Eigen::MatrixXd jacobian(const PermutationConstraintSystem& system, const Sextuple& slots) {
  const auto ne = static_cast<Eigen::Index>(system.equations.size());
  const auto nu = static_cast<Eigen::Index>(system.unknowns.size());
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(ne, nu);
  for (Eigen::Index e = 0; e < ne; ++e) {
    const auto& eq = system.equations[static_cast<std::size_t>(e)];
    Sextuple x{};
    for (std::size_t p = 0; p < 6; ++p) x[p] = slots[static_cast<std::size_t>(eq[p])];
    const Sextuple g = constraint_polynomial_gradient(x);
    for (Eigen::Index u = 0; u < nu; ++u) {
      const int slot = system.unknowns[static_cast<std::size_t>(u)];
      for (std::size_t p = 0; p < 6; ++p) {
        if (eq[p] == slot) j(e, u) += g[p];
      }
    }
  }
  return j;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double sum_sq(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x * x;
  return m;
}

}  // namespace

ConstrainedSolution solve_constrained(const PermutationConstraintSystem& system,
                                      const std::vector<double>& initial_guess,
                                      const NewtonOptions& options) {
  system.validate();
  if (system.equations.size() != system.unknowns.size()) {
    throw ShapeError("Newton solve needs as many equations as unknowns");
  }
  if (initial_guess.size() != system.unknowns.size()) {
    throw ShapeError("initial guess must have one value per unknown");
  }
  const double s = system.free_mean();
  const double scale6 = std::pow(s, 6);

  std::vector<double> u = initial_guess;
  Sextuple slots = system.assemble(u);
  std::vector<double> f = system.residuals(slots);
  double merit = sum_sq(f);
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    if (max_abs(f) / scale6 <= options.tol) break;
    const Eigen::MatrixXd j = jacobian(system, slots);
    const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(f.data(), static_cast<Eigen::Index>(f.size()));
    const Eigen::VectorXd step = j.colPivHouseholderQr().solve(rhs);
    if (!step.allFinite()) {
      throw NoSolutionError("singular Jacobian", max_abs(f) / scale6);
    }
    double lambda = 1.0;
    bool accepted = false;
    for (int h = 0; h <= options.max_halvings; ++h, lambda *= 0.5) {
      std::vector<double> trial = u;
      for (std::size_t i = 0; i < trial.size(); ++i) trial[i] -= lambda * step(static_cast<Eigen::Index>(i));
      const Sextuple trial_slots = system.assemble(trial);
      std::vector<double> trial_f = system.residuals(trial_slots);
      const double trial_merit = sum_sq(trial_f);
      if (trial_merit < merit) {
        u = std::move(trial);
        slots = trial_slots;
        f = std::move(trial_f);
        merit = trial_merit;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (max_abs(f) / scale6 <= options.tol) break;
      throw NoSolutionError("Newton iterate stalled away from a real root", max_abs(f) / scale6);
    }
  }
  const double residual = max_abs(f) / scale6;
  if (residual > options.tol) {
    throw SolverError("Newton did not converge within " +
                          std::to_string(options.max_iterations) + " iterations",
                      residual);
  }
  // D depends on squares only, so a negative iterate mirrors a positive root.
  for (double& v : u) v = std::abs(v);
  for (double v : u) {
    if (v <= kStructuralTol * s) throw NoSolutionError("root has a vanishing distance", residual);
  }
  ConstrainedSolution out;
  out.unknowns = u;
  out.slots = system.assemble(u);
  out.residual = residual;
  out.iterations = it;
  return out;
}

std::vector<PointConfiguration> realize_permutations(const PermutationConstraintSystem& system,
                                                     const Sextuple& slots, double tol) {
  std::vector<PointConfiguration> configs;
  std::vector<DistanceAssignment> seen;
  for (const auto& eq : system.equations) {
    std::array<double, 6> values{};
    for (std::size_t p = 0; p < 6; ++p) values[p] = slots[static_cast<std::size_t>(eq[p])];
    const auto dists = DistanceAssignment::from_incremental(4, values);
    if (!realizability_check(dists, 2, tol).realizable) continue;
    const bool duplicate = std::any_of(seen.begin(), seen.end(), [&](const auto& other) {
      return congruent(dists, other, tol);
    });
    if (duplicate) continue;
    seen.push_back(dists);
    configs.push_back(embed(dists, 2, tol));
  }
  return configs;
}

std::vector<RootInfo> solve_constrained_all(const PermutationConstraintSystem& system,
                                            const RootSearchOptions& options) {
  system.validate();
  if (system.equations.size() != system.unknowns.size()) {
    throw ShapeError("root search needs as many equations as unknowns");
  }
  const int k = static_cast<int>(system.unknowns.size());
  const int g = std::max(options.grid_per_unknown, 1);
  const double s = system.free_mean();
  std::size_t total = 1;
  for (int i = 0; i < k; ++i) total *= static_cast<std::size_t>(g);

  auto guess_at = [&](std::size_t index) {
    std::vector<double> guess(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      const auto step = index % static_cast<std::size_t>(g);
      index /= static_cast<std::size_t>(g);
      const double t = g == 1 ? 0.5 : static_cast<double>(step) / (g - 1);
      guess[static_cast<std::size_t>(i)] = s * (0.1 + t * 2.9);
    }
    return guess;
  };

  std::vector<std::optional<ConstrainedSolution>> found(total);
  auto attempt = [&](std::size_t index) {
    try {
      found[index] = solve_constrained(system, guess_at(index), options.newton);
    } catch (const Error&) {
    }
  };
  if (options.execution == Execution::parallel) {
    const auto n = static_cast<std::int64_t>(total);
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < n; ++i) attempt(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < total; ++i) attempt(i);
  }

  std::vector<ConstrainedSolution> roots;
  for (const auto& candidate : found) {
    if (!candidate) continue;
    const bool known = std::any_of(roots.begin(), roots.end(), [&](const auto& r) {
      for (std::size_t i = 0; i < r.unknowns.size(); ++i) {
        if (std::abs(r.unknowns[i] - candidate->unknowns[i]) > 1e-7 * s) return false;
      }
      return true;
    });
    if (!known) roots.push_back(*candidate);
  }
  std::sort(roots.begin(), roots.end(),
            [](const auto& a, const auto& b) { return a.unknowns < b.unknowns; });

  std::vector<RootInfo> out;
  for (auto& root : roots) {
    RootInfo info;
    info.solution = root;
    info.realizable_for_all = true;
    for (const auto& eq : system.equations) {
      std::array<double, 6> values{};
      for (std::size_t p = 0; p < 6; ++p) values[p] = root.slots[static_cast<std::size_t>(eq[p])];
      const auto dists = DistanceAssignment::from_incremental(4, values);
      if (!realizability_check(dists, 2, options.structural_tol).realizable) {
        info.realizable_for_all = false;
      }
    }
    info.configuration_count = static_cast<int>(
        realize_permutations(system, root.slots, options.structural_tol).size());
    for (std::size_t i = 0; i < system.unknowns.size() && !info.multiple_root; ++i) {
      const int slot = system.unknowns[i];
      for (int other = 0; other < 6; ++other) {
        if (other == slot) continue;
        if (std::abs(root.slots[static_cast<std::size_t>(slot)] -
                     root.slots[static_cast<std::size_t>(other)]) <= 1e-6 * s) {
          info.multiple_root = true;
          break;
        }
      }
    }
    out.push_back(std::move(info));
  }
  return out;
}

}  // namespace distspace
