#pragma once

#include "distspace/types.hpp"

#include <cstdint>
#include <vector>

namespace distspace {

/// d linearly independent vectors a_1..a_d, one per row.
class LatticeBasis {
 public:
  LatticeBasis() = default;
  /// Throws ShapeError for a non-square or non-finite matrix and
  /// ParameterError when the Gram determinant is not above tol·s^{2d}.
  explicit LatticeBasis(Eigen::MatrixXd vectors, double tol = kStructuralTol);

  int dimension() const { return static_cast<int>(vectors_.rows()); }
  const Eigen::MatrixXd& vectors() const { return vectors_; }
  Eigen::MatrixXd gram() const { return vectors_ * vectors_.transpose(); }

 private:
  Eigen::MatrixXd vectors_;
};

/// Lagrange–Gauss reduction for d = 2; greedy shortest-vector reduction with
/// integer coefficients in [-2, 2] for d = 3. The result spans the same
/// lattice with |a_1| <= |a_2| <= ... .
LatticeBasis reduce_basis(const LatticeBasis& basis);

struct LatticeSpectrum {
  double cutoff = 0.0;
  std::vector<double> distances;      ///< shell radii, ascending
  std::vector<long> multiplicities;   ///< lattice vectors per shell

  long total() const;
};

inline constexpr std::uint64_t kMaxLatticeVectors = 10'000'000;

/// Lengths |n_1 a_1 + ... + n_d a_d| = sqrt(nᵀ G n) of every nonzero integer
/// combination up to the cutoff (inclusive to a relative 1e-9), grouped into
/// shells whose radii agree to a relative 1e-9. Throws BudgetError when the
/// enclosing integer box exceeds 10⁷ tuples.
LatticeSpectrum lattice_distance_spectrum(const LatticeBasis& basis, double cutoff,
                                          Execution execution = Execution::parallel);

/// True when both spectra have the same shell count, radii within
/// rel_tol·radius and identical multiplicities.
bool spectra_match(const LatticeSpectrum& a, const LatticeSpectrum& b, double rel_tol = 1e-9);

struct CellReconstruction {
  LatticeBasis basis;                      ///< first validating cell
  std::vector<LatticeBasis> validated;     ///< every validating cell of that distance set
  std::vector<double> simplex_distances;   ///< the d(d+1)/2 values assembled
  int candidates_tried = 0;
};

/// Tries distance sets of size d(d+1)/2 drawn from the smallest shells
/// (each shell used at most multiplicity/2 times, since ±v share a shell) in
/// lexicographic shell order. Each set is assembled into every non-congruent
/// nondegenerate simplex; the vectors from vertex 0 form a candidate basis,
/// accepted when its regenerated spectrum matches the input and returned in
/// reduced form. Throws
/// ReconstructionError when nothing validates. d must be 1, 2 or 3.
CellReconstruction reconstruct_cell(const LatticeSpectrum& spectrum, int d,
                                    double tol = kStructuralTol);

}  // namespace distspace
