// Copyright 2026 The fermion-complexity Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "fc/complexity.hpp"
#include "fc/errors.hpp"
#include "fc/generic.hpp"
#include "support.hpp"

using namespace fc;
using testing_support::max_abs;

TEST(Haar, SingleStateSector) {
  const HaarSample h = sample_haar_state(enumerate_sector(4, 4), 3);
  EXPECT_NEAR(std::abs(h.state.amplitudes()[0]), 1.0, 1e-15);
}

TEST(Haar, NormalizedAndDeterministic) {
  const FockSector s = enumerate_sector(10, 4);
  const HaarSample a = sample_haar_state(s, 5), b = sample_haar_state(s, 5), c = sample_haar_state(s, 6);
  EXPECT_NEAR(a.state.norm(), 1.0, 1e-14);
  EXPECT_EQ(a.state.amplitudes(), b.state.amplitudes());
  EXPECT_GT(max_abs(a.state.amplitudes() - c.state.amplitudes()), 1e-3);
}

TEST(Haar, PurityMoment) {
  const FockSector s = enumerate_sector(12, 4);  // Q = 495
  const double q = static_cast<double>(s.dimension());
  double mean = 0.0;
  const int samples = 40;
  for (int k = 0; k < samples; ++k)
    mean += std::exp(-renyi2_entropy(sample_haar_state(s, static_cast<std::uint64_t>(k)).state)) / samples;
  EXPECT_NEAR(mean * q / 2.0, 1.0, 0.1);
}

TEST(Haar, EntropyNearCue) {
  const FockSector s = enumerate_sector(16, 2);  // Q = 120
  double mean = 0.0;
  for (int k = 0; k < 20; ++k) mean += renyi2_entropy(sample_haar_state(s, 100 + static_cast<std::uint64_t>(k)).state) / 20.0;
  EXPECT_NEAR(mean / cue_entropy(120.0), 1.0, 0.05);
}

TEST(Haar, CorrelationEntropyApproachesMaximal) {
  // ν = 1/4 at growing Q: the deficit from -ln ν shrinks.
  double previous = 1.0;
  for (int no : {8, 12, 16}) {
    const FockSector s = enumerate_sector(no, no / 4);
    const double se = correlation_entropies(correlation_matrix(sample_haar_state(s, 1).state)).particle.value();
    const double deficit = 1.0 - se / -std::log(0.25);
    EXPECT_GT(deficit, 0.0);
    EXPECT_LT(deficit, previous) << no;
    previous = deficit;
  }
  EXPECT_LT(previous, 0.05);
}

TEST(Cue, UnitaryAndDeterministic) {
  for (int n : {1, 2, 5, 16}) {
    const Matrix u = sample_cue_unitary(n, 9);
    EXPECT_LT(max_abs(u.adjoint() * u - Matrix::Identity(n, n)), 1e-12);
    EXPECT_EQ(u, sample_cue_unitary(n, 9));
  }
  EXPECT_NEAR(std::abs(sample_cue_unitary(1, 4)(0, 0)), 1.0, 1e-15);
}

TEST(Cue, FirstMoments) {
  const int n = 4, samples = 4000;
  Rng rng(77, 1);
  Matrix mean = Matrix::Zero(n, n);
  double sq = 0.0;
  for (int k = 0; k < samples; ++k) {
    const Matrix u = sample_cue_unitary(n, rng);
    mean += u / samples;
    sq += u.cwiseAbs2().sum() / (n * n * static_cast<double>(samples));
  }
  EXPECT_LT(max_abs(mean), 0.05);
  EXPECT_NEAR(sq, 1.0 / n, 1e-12);  // rows are unit vectors, so this is exact
  // Individual |U_ij|^2 averages to 1/n.
  Matrix second = Matrix::Zero(n, n);
  Rng again(78, 1);
  for (int k = 0; k < samples; ++k) second += sample_cue_unitary(n, again).cwiseAbs2().cast<Complex>() / samples;
  EXPECT_LT(max_abs(second - Matrix::Constant(n, n, 1.0 / n)), 0.03);
}

TEST(Analytics, AlphaGeneric) {
  EXPECT_NEAR(alpha_generic(0.5), 2.0, 1e-14);
  EXPECT_NEAR(alpha_generic(1.0 / 3.0), 1.0 + 2.0 * std::log(1.5) / std::log(3.0), 1e-13);
  EXPECT_NEAR(alpha_generic(1.0 / 3.0), 1.7381, 1e-4);
  // α_g - 1 ~ 1/ln(1/ν) as ν -> 0.
  for (double nu : {1e-6, 1e-12, 1e-100}) EXPECT_NEAR((alpha_generic(nu) - 1.0) * -std::log(nu), 1.0, 1e-5);
  EXPECT_LT(alpha_generic(1e-12), alpha_generic(1e-6));
  for (double nu : {0.05, 0.2, 0.37, 0.49}) EXPECT_NEAR(alpha_generic(nu), alpha_generic(1.0 - nu), 1e-13);
  for (double nu : {0.0, 1.0, -0.1}) EXPECT_THROW(alpha_generic(nu), InvalidArgument);
}

TEST(Analytics, Record) {
  const GenericAnalytics g = generic_complexity_analytics(12, 4);
  EXPECT_NEAR(g.s_cue, std::log(495.0 / 2.0), 1e-12);
  const double nu = 1.0 / 3.0;
  const double lead = -12.0 * (nu * std::log(nu) + (1 - nu) * std::log(1 - nu));
  EXPECT_NEAR(g.s_leading, lead, 1e-12);
  EXPECT_NEAR(g.s_leading, g.alpha_g * 4 * -std::log(nu), 1e-12);
  EXPECT_NEAR(cue_entropy(4900.0), 7.804, 1e-3);
  EXPECT_THROW(generic_complexity_analytics(6, 0), InvalidArgument);
  EXPECT_THROW(generic_complexity_analytics(6, 6), InvalidArgument);
}
