// Copyright 2026 The fermion-complexity Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "fc/fock.hpp"
#include "fc/onebody.hpp"
#include "fc/rng.hpp"

namespace testing_support {

inline fc::ManyBodyState random_state(const fc::FockSector& sector, std::uint64_t seed) {
  fc::Rng rng(seed, 7);
  fc::Vector v(static_cast<Eigen::Index>(sector.dimension()));
  for (Eigen::Index k = 0; k < v.size(); ++k) v[k] = rng.complex_normal();
  return fc::ManyBodyState(sector, v.normalized());
}

/// Random Hermitian matrix, block-diagonal over `blocks` when given, scaled
/// to spectral norm `scale`.
inline fc::Matrix random_hermitian(int n, std::uint64_t seed, double scale = 1.0,
                                   const fc::OrbitalRanges& blocks = {}) {
  fc::Rng rng(seed, 11);
  fc::Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
  fc::Matrix h = 0.5 * (g + g.adjoint());
  if (!blocks.empty()) {
    fc::Matrix masked = fc::Matrix::Zero(n, n);
    for (const auto& b : blocks) masked.block(b.first, b.first, b.size, b.size) = h.block(b.first, b.first, b.size, b.size);
    h = masked;
  }
  const double norm = Eigen::SelfAdjointEigenSolver<fc::Matrix>(h, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs().maxCoeff();
  return h * (scale / norm);
}

template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace testing_support
