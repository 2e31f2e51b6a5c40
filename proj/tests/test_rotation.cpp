// Copyright 2026 The fermion-complexity Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fc/complexity.hpp"
#include "fc/errors.hpp"
#include "fc/rotation.hpp"
#include "oracle/dense_fock.hpp"
#include "support.hpp"

using namespace fc;
using testing_support::max_abs;
using testing_support::random_hermitian;
using testing_support::random_state;

TEST(Rotate, MatchesOracleExponential) {
  const int n = 6;
  oracle::DenseFock jw(n);
  for (int p = 1; p < n; ++p) {
    const FockSector s = enumerate_sector(n, p);
    const ManyBodyState psi = random_state(s, 30 + static_cast<std::uint64_t>(p));
    for (double scale : {0.1, 1.0, 3.0, 12.0}) {
      const Matrix a = random_hermitian(n, 40 + static_cast<std::uint64_t>(p), scale);
      const Vector ref = oracle::expi_hermitian(jw.one_body(a)) * jw.embed(psi);
      const ManyBodyState out = rotate(psi, RotationGenerator(a));
      EXPECT_LT(max_abs(jw.embed(out) - ref), 1e-9) << "p=" << p << " scale=" << scale;
    }
  }
}

TEST(Rotate, StoragesAgree) {
  const FockSector s({{0, 4, 2}, {4, 4, 2}});
  const ManyBodyState psi = random_state(s, 2);
  const RotationGenerator g(random_hermitian(8, 3, 2.0, {{0, 4}, {4, 4}}), {{0, 4}, {4, 4}});
  RotateOptions table, fly;
  table.storage = OneBodyOperator::Storage::table;
  fly.storage = OneBodyOperator::Storage::on_the_fly;
  EXPECT_LT(max_abs(rotate(psi, g, table).amplitudes() - rotate(psi, g, fly).amplitudes()), 1e-13);
}

TEST(Rotate, PreservesNormAndInverts) {
  const FockSector s = enumerate_sector(8, 4);
  const ManyBodyState psi = random_state(s, 6);
  const RotationGenerator g(random_hermitian(8, 7, 5.0));
  ActionStats stats;
  const ManyBodyState out = rotate(psi, g, {}, &stats);
  EXPECT_NEAR(out.norm(), 1.0, 1e-10);
  EXPECT_GT(stats.matvecs, 0);
  EXPECT_LT(max_abs(rotate(out, -g).amplitudes() - psi.amplitudes()), 1e-9);
}

TEST(Rotate, ZeroAndDiagonalGenerators) {
  const FockSector s = enumerate_sector(6, 3);
  const ManyBodyState psi = random_state(s, 8);
  EXPECT_LT(max_abs(rotate(psi, RotationGenerator::zero(6)).amplitudes() - psi.amplitudes()), 1e-15);
  // Diagonal A only multiplies each amplitude by a phase.
  Matrix a = Matrix::Zero(6, 6);
  for (int k = 0; k < 6; ++k) a(k, k) = 0.3 * k - 1.0;
  const ManyBodyState out = rotate(psi, RotationGenerator(a));
  EXPECT_LT(max_abs(out.amplitudes().cwiseAbs() - psi.amplitudes().cwiseAbs()), 1e-10);
}

TEST(Rotate, CorrelationMatrixCovariance) {
  const FockSector s = enumerate_sector(7, 3);
  const ManyBodyState psi = random_state(s, 10);
  const RotationGenerator g(random_hermitian(7, 11, 2.0));
  const Matrix u = g.unitary();
  const Matrix c = correlation_matrix(psi).entries();
  EXPECT_LT(max_abs(correlation_matrix(rotate(psi, g)).entries() - u * c * u.adjoint()), 1e-10);
}

TEST(Rotate, RejectsCrossBlockGenerator) {
  Matrix a = Matrix::Zero(4, 4);
  a(0, 3) = a(3, 0) = 1.0;
  EXPECT_THROW(RotationGenerator(a, {{0, 2}, {2, 2}}), InvalidArgument);
  Matrix b = Matrix::Zero(3, 3);
  b(0, 1) = 1.0;
  EXPECT_THROW(RotationGenerator{b}, InvalidArgument);
}

TEST(Generator, UnitaryRoundTrip) {
  const Matrix a = random_hermitian(6, 12, 2.0);
  const Matrix u = oracle::expi_hermitian(a);
  const RotationGenerator g = generator_from_unitary(u);
  EXPECT_LT(max_abs(g.unitary() - u), 1e-12);
  // Spectral norm 2 < π, so the principal logarithm returns A itself.
  EXPECT_LT(max_abs(g.matrix() - a), 1e-11);
}

TEST(Generator, BranchCutMapsToPlusPi) {
  const Matrix u = -Matrix::Identity(3, 3);
  UnitaryLogReport report;
  const RotationGenerator g = generator_from_unitary(u, {}, report);
  EXPECT_EQ(report.branch_cut_eigenvalues, 3);
  EXPECT_LT(max_abs(g.matrix() - std::numbers::pi * Matrix::Identity(3, 3)), 1e-12);
  EXPECT_LT(max_abs(g.unitary() - u), 1e-12);
}

TEST(Generator, BlockedLogStaysBlocked) {
  const OrbitalRanges blocks{{0, 3}, {3, 3}};
  const Matrix u = repeat_blocks(fourier_unitary(3), blocks);
  const RotationGenerator g = generator_from_unitary(u, blocks);
  EXPECT_LT(max_abs(g.matrix().block(0, 3, 3, 3)), 1e-15);
  EXPECT_LT(max_abs(g.unitary() - u), 1e-12);
  EXPECT_THROW(generator_from_unitary(2.0 * Matrix::Identity(3, 3)), InvalidArgument);
}

TEST(Fourier, IsUnitaryWithSignConvention) {
  const Matrix f = fourier_unitary(5);
  EXPECT_LT(max_abs(f.adjoint() * f - Matrix::Identity(5, 5)), 1e-14);
  EXPECT_LT(std::abs(f(1, 1) - std::polar(1.0 / std::sqrt(5.0), -2.0 * std::numbers::pi / 5.0)), 1e-15);
}

TEST(Rotate, SlaterInNaturalOrbitalsHasZeroEntropy) {
  // Rotate a basis state by a random orbital change; the natural-orbital
  // basis undoes it.
  const FockSector s = enumerate_sector(8, 3);
  const ManyBodyState slater = rotate(ManyBodyState::basis_state(s, 11), RotationGenerator(random_hermitian(8, 13, 2.0)));
  EXPECT_GT(renyi2_entropy(slater), 0.5);
  const Matrix u = natural_orbital_unitary(correlation_matrix(slater));
  const ManyBodyState back = rotate(slater, generator_from_unitary(u));
  EXPECT_NEAR(renyi2_entropy(back), 0.0, 1e-10);
}
