#include "distspace/errors.hpp"
#include "distspace/lattice.hpp"

#include <Eigen/LU>
#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace distspace;

namespace {

LatticeBasis basis2(double a, double b, double c, double d) {
  Eigen::MatrixXd m(2, 2);
  m << a, b, c, d;
  return LatticeBasis(m);
}

double angle_deg(const Eigen::MatrixXd& v, int i, int j) {
  return std::acos(v.row(i).dot(v.row(j)) / (v.row(i).norm() * v.row(j).norm())) * 180.0 / M_PI;
}

// Spectrum from explicit coordinates of integer combinations, without the
// Gram form.
std::vector<double> direct_lengths(const LatticeBasis& b, int range, double cutoff) {
  const int d = b.dimension();
  std::vector<double> out;
  std::vector<int> n(static_cast<std::size_t>(d), -range);
  while (true) {
    Eigen::RowVectorXd v = Eigen::RowVectorXd::Zero(d);
    bool zero = true;
    for (int i = 0; i < d; ++i) {
      v += n[static_cast<std::size_t>(i)] * b.vectors().row(i);
      zero = zero && n[static_cast<std::size_t>(i)] == 0;
    }
    if (!zero && v.norm() <= cutoff * (1 + 1e-9)) out.push_back(v.norm());
    int k = 0;
    while (k < d && n[static_cast<std::size_t>(k)] == range) n[static_cast<std::size_t>(k++)] = -range;
    if (k == d) break;
    ++n[static_cast<std::size_t>(k)];
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(LatticeBasis, RejectsDependentVectors) {
  EXPECT_THROW(basis2(1, 0, 2, 0), ParameterError);
  EXPECT_THROW(LatticeBasis(Eigen::MatrixXd::Zero(2, 3)), ShapeError);
}

TEST(LatticeSpectrum, SquareShells) {
  const auto s = lattice_distance_spectrum(basis2(1, 0, 0, 1), 2.3);
  ASSERT_EQ(s.distances.size(), 4U);
  EXPECT_NEAR(s.distances[0], 1, 1e-15);
  EXPECT_NEAR(s.distances[1], std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(s.distances[2], 2, 1e-15);
  EXPECT_NEAR(s.distances[3], std::sqrt(5.0), 1e-15);
  EXPECT_EQ(s.multiplicities, (std::vector<long>{4, 4, 4, 8}));
}

TEST(LatticeSpectrum, TriangularShells) {
  const auto s = lattice_distance_spectrum(basis2(1, 0, 0.5, std::sqrt(3.0) / 2), 1.8);
  ASSERT_EQ(s.distances.size(), 2U);
  EXPECT_NEAR(s.distances[0], 1, 1e-12);
  EXPECT_NEAR(s.distances[1], std::sqrt(3.0), 1e-12);
  EXPECT_EQ(s.multiplicities, (std::vector<long>{6, 6}));
}

TEST(LatticeSpectrum, SimpleCubicShells) {
  const auto s = lattice_distance_spectrum(LatticeBasis(Eigen::MatrixXd::Identity(3, 3)), 1.8);
  ASSERT_EQ(s.distances.size(), 3U);
  EXPECT_NEAR(s.distances[2], std::sqrt(3.0), 1e-12);
  EXPECT_EQ(s.multiplicities, (std::vector<long>{6, 12, 8}));
}

TEST(LatticeSpectrum, GramFormMatchesDirectNorms) {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    const int d = 2 + t % 2;
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(d, d);
    for (int i = 0; i < d; ++i) {
      for (int k = 0; k < d; ++k) m(i, k) += 0.3 * u(rng);
    }
    const auto b = reduce_basis(LatticeBasis(m));
    const auto s = lattice_distance_spectrum(b, 2.5);
    const auto direct = direct_lengths(b, 12, 2.5);
    ASSERT_EQ(static_cast<std::size_t>(s.total()), direct.size());
    std::size_t k = 0;
    for (std::size_t shell = 0; shell < s.distances.size(); ++shell) {
      for (long c = 0; c < s.multiplicities[shell]; ++c, ++k) {
        EXPECT_NEAR(s.distances[shell], direct[k], 1e-12 * direct[k]);
      }
    }
    EXPECT_NEAR(s.distances.front(), b.vectors().row(0).norm(), 1e-12);
  }
}

TEST(LatticeSpectrum, SerialAndParallelAgree) {
  const auto b = basis2(1, 0, 0.31, 1.13);
  const auto a = lattice_distance_spectrum(b, 6.0, Execution::serial);
  const auto c = lattice_distance_spectrum(b, 6.0);
  EXPECT_EQ(a.distances, c.distances);
  EXPECT_EQ(a.multiplicities, c.multiplicities);
}

TEST(LatticeSpectrum, Budget) {
  EXPECT_THROW(lattice_distance_spectrum(LatticeBasis(Eigen::MatrixXd::Identity(3, 3)), 1000.0),
               BudgetError);
  EXPECT_THROW(lattice_distance_spectrum(basis2(1, 0, 0, 1), 0.0), ParameterError);
}

TEST(ReduceBasis, RecoversShortVectors) {
  const auto r = reduce_basis(basis2(1, 0, 5, 1));
  EXPECT_NEAR(r.vectors().row(0).norm(), 1, 1e-12);
  EXPECT_NEAR(r.vectors().row(1).norm(), 1, 1e-12);
  Eigen::MatrixXd m(3, 3);
  m << 1, 0, 0, 3, 1, 0, 2, 4, 1;
  const auto r3 = reduce_basis(LatticeBasis(m));
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(r3.vectors().row(i).norm(), 1, 1e-12);
  EXPECT_NEAR(std::abs(r3.vectors().determinant()), 1, 1e-12);
}

TEST(ReconstructCell, Square) {
  const auto s = lattice_distance_spectrum(basis2(1, 0, 0, 1), 3.0);
  const auto cell = reconstruct_cell(s, 2);
  const auto& v = cell.basis.vectors();
  EXPECT_NEAR(v.row(0).norm(), 1, 1e-12);
  EXPECT_NEAR(v.row(1).norm(), 1, 1e-12);
  EXPECT_NEAR(angle_deg(v, 0, 1), 90, 1e-9);
  EXPECT_TRUE(spectra_match(lattice_distance_spectrum(cell.basis, 3.0), s));
  EXPECT_EQ(cell.simplex_distances.size(), 3U);
}

TEST(ReconstructCell, Triangular) {
  const auto s = lattice_distance_spectrum(basis2(1, 0, 0.5, std::sqrt(3.0) / 2), 3.0);
  const auto cell = reconstruct_cell(s, 2);
  const auto& v = cell.basis.vectors();
  EXPECT_NEAR(v.row(0).norm(), 1, 1e-12);
  EXPECT_NEAR(v.row(1).norm(), 1, 1e-12);
  const double angle = angle_deg(v, 0, 1);
  EXPECT_TRUE(std::abs(angle - 60) < 1e-9 || std::abs(angle - 120) < 1e-9) << angle;
}

TEST(ReconstructCell, SimpleCubicHasOrthogonalCandidate) {
  const auto s = lattice_distance_spectrum(LatticeBasis(Eigen::MatrixXd::Identity(3, 3)), 3.0);
  const auto cell = reconstruct_cell(s, 3);
  bool orthogonal = false;
  for (const auto& b : cell.validated) {
    const Eigen::MatrixXd g = b.gram();
    orthogonal = orthogonal || (g - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-9;
  }
  EXPECT_TRUE(orthogonal);
}

TEST(ReconstructCell, RoundTripGenericBases) {
  std::mt19937_64 rng(62);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 12; ++t) {
    const int d = 1 + t % 3;
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(d, d);
    for (int i = 0; i < d; ++i) {
      for (int k = 0; k < d; ++k) m(i, k) += 0.25 * u(rng);
    }
    const auto b = reduce_basis(LatticeBasis(m));
    const auto s = lattice_distance_spectrum(b, 3.0);
    const auto cell = reconstruct_cell(s, d);
    EXPECT_TRUE(spectra_match(lattice_distance_spectrum(cell.basis, 3.0), s));
    EXPECT_EQ(static_cast<int>(cell.simplex_distances.size()), d * (d + 1) / 2);
  }
}

TEST(ReconstructCell, FailureOnNonLatticeInput) {
  LatticeSpectrum s;
  s.cutoff = 2.0;
  s.distances = {1.0, 1.3, 1.9};
  s.multiplicities = {2, 2, 2};
  EXPECT_THROW(reconstruct_cell(s, 2), ReconstructionError);
  EXPECT_THROW(reconstruct_cell(s, 4), ScopeError);
}
