// Copyright 2026 The fermion-complexity Authors
// SPDX-License-Identifier: Apache-2.0

// Single-particle basis changes of many-body states.
//
// A Hermitian generator A defines the orbital transformation c' = U c with
// U = exp(iA). The amplitudes of a state in the rotated Slater basis are
// exp(i Â)|ψ> with Â = Σ_ij A_ij c†_i c_j, and the correlation matrix
// transforms as C -> U C U†.

#pragma once

#include "fc/fock.hpp"
#include "fc/onebody.hpp"

namespace fc {

class RotationGenerator {
 public:
  /// Validates Hermiticity (1e-12) and, with `blocks` set, that entries
  /// outside the diagonal blocks vanish; both are then enforced exactly.
  explicit RotationGenerator(Matrix a, OrbitalRanges blocks = {});

  static RotationGenerator zero(int n_orbitals, OrbitalRanges blocks = {});

  const Matrix& matrix() const { return a_; }
  const OrbitalRanges& blocks() const { return blocks_; }
  int n_orbitals() const { return static_cast<int>(a_.rows()); }

  /// U = exp(iA).
  Matrix unitary() const;
  RotationGenerator operator-() const { return RotationGenerator(-a_, blocks_); }

 private:
  Matrix a_;
  OrbitalRanges blocks_;
};

struct UnitaryLogReport {
  /// Eigenphases within 1e-12 of the branch cut that were moved onto +π.
  int branch_cut_eigenvalues = 0;
};

/// A = -i log(u) on the principal branch, eigenphases in (-π, π]. With
/// `blocks` set each diagonal block is treated separately and the result is
/// block-diagonal. Throws InvalidArgument when u is not unitary to 1e-9.
RotationGenerator generator_from_unitary(const Matrix& u, const OrbitalRanges& blocks = {});
RotationGenerator generator_from_unitary(const Matrix& u, const OrbitalRanges& blocks,
                                         UnitaryLogReport& report);

struct RotateOptions {
  double tolerance = 1e-10;
  OneBodyOperator::Storage storage = OneBodyOperator::Storage::automatic;
};

/// Statistics of one exponential action, for diagnostics and tests.
struct ActionStats {
  int steps = 0;           // scaling steps s
  int degree = 0;          // Taylor degree bound m
  int matvecs = 0;         // products actually taken
  double spectral_radius = 0.0;  // half-width of the spectrum of Â
};

/// exp(i Â)|state>, by a Taylor series with scaling. The spectrum of Â on the
/// sector is known exactly from the eigenvalues of A (sums of N_p of them per
/// block), so Â is shifted to its spectral midpoint and the step count and
/// degree are chosen from the remaining half-width.
ManyBodyState rotate(const ManyBodyState& state, const RotationGenerator& generator,
                     const RotateOptions& options = {}, ActionStats* stats = nullptr);

/// Unitary discrete Fourier matrix, U_kj = exp(-2πi kj/n)/√n.
Matrix fourier_unitary(int n);

/// Block-diagonal matrix with `block` repeated on every range.
Matrix repeat_blocks(const Matrix& block, const OrbitalRanges& ranges);

}  // namespace fc
