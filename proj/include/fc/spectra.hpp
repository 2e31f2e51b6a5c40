// Copyright 2026 The fermion-complexity Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "fc/fock.hpp"

namespace fc {

/// Post-hoc lattice symmetry label of one eigenstate.
struct SymmetryLabel {
  Complex momentum_phase{0.0, 0.0};  // <T>
  int momentum = -1;                 // m with <T> = exp(2 pi i m / L); -1 when unlabeled
  int parity = 0;                    // +1 / -1; 0 when undefined (momentum not self-conjugate)
};

struct SpectrumResult {
  FockSector sector;
  Eigen::VectorXd energies;  // ascending
  Matrix vectors;            // columns are eigenvectors
  std::vector<int> group;    // degenerate-group id per state
  std::vector<SymmetryLabel> labels;

  std::size_t size() const { return static_cast<std::size_t>(energies.size()); }
  ManyBodyState state(std::size_t k) const;
};

struct DenseOptions {
  std::size_t dimension_cap = 20000;
  double degeneracy_tolerance = 1e-9;  // relative, times max(1, |E|)
};

/// All eigenpairs by dense Hermitian diagonalization. CapacityError above the
/// dimension cap.
SpectrumResult full_spectrum(const SparseOperator& h, const DenseOptions& options = {});

struct LanczosOptions {
  double tolerance = 1e-8;  // residual norm ||H v - E v||
  int max_iterations = 5000;
  int max_subspace = 0;  // 0 chooses max(40, 4 * n_lowest + 20)
  std::uint64_t seed = 1;
  double degeneracy_tolerance = 1e-9;
};

/// Lowest eigenpairs from a thick-restarted block Krylov subspace (random
/// block start, so degenerate copies are found) with full
/// reorthogonalization. Throws NumericalError with the achieved residual when
/// it does not converge.
SpectrumResult ground_state(const SparseOperator& h, int n_lowest, const LanczosOptions& options = {});

/// Assigns degenerate-group ids from energy gaps.
std::vector<int> degenerate_groups(const Eigen::VectorXd& energies, double tolerance);

/// Labels states by momentum and reflection parity. Inside each degenerate
/// group the translation is diagonalized first and the reflection second;
/// states of a group are reordered by ascending momentum index, then parity
/// +1 before -1. `period` is the lattice length L (T^L = 1).
SpectrumResult label_symmetry(SpectrumResult spectrum, const SparseOperator& translation,
                              const SparseOperator& parity, int period);

}  // namespace fc
