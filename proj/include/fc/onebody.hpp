// Copyright 2026 The fermion-complexity Authors
// SPDX-License-Identifier: Apache-2.0

// One-body reduced density matrix, natural orbitals and correlation entropies.

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fc/fock.hpp"

namespace fc {

/// Hermitian matrix C_ij = <c†_j c_i> with trace N_p.
class CorrelationMatrix {
 public:
  CorrelationMatrix(Matrix entries, int n_particles);

  const Matrix& entries() const { return entries_; }
  int n_orbitals() const { return static_cast<int>(entries_.rows()); }
  int n_particles() const { return n_particles_; }

 private:
  Matrix entries_;
  int n_particles_;
};

struct NaturalOrbitals {
  Eigen::VectorXd occupations;  // descending, clipped to [0, 1]
  Matrix orbitals;              // columns are eigenvectors of C
};

/// Range of orbitals treated as one symmetry block (no particle count).
struct OrbitalRange {
  int first = 0;
  int size = 0;

  friend bool operator==(const OrbitalRange&, const OrbitalRange&) = default;
};

using OrbitalRanges = std::vector<OrbitalRange>;

/// Orbital ranges of a sector's conservation blocks.
OrbitalRanges conserved_blocks(const FockSector& sector);

struct CorrelationEntropies {
  std::optional<double> particle;  // undefined for N_p = 0
  std::optional<double> hole;      // undefined for N_p = N_o
  double s_c = 0.0;                // max of the defined ones
  std::vector<std::pair<double, double>> renyi;  // (order n, S_{c,n})
};

CorrelationMatrix correlation_matrix(const ManyBodyState& state);

/// Eigen-decomposition with deterministic conventions: occupations sorted in
/// descending order; eigenvectors of (numerically) degenerate occupations are
/// replaced by the Gram-Schmidt projections of unit vectors e_0, e_1, ... onto
/// the degenerate subspace; each eigenvector's largest-magnitude entry is
/// made real positive. With `blocks` set, C is diagonalized per block and
/// every orbital is supported on exactly one block.
NaturalOrbitals natural_orbitals(const CorrelationMatrix& c, const OrbitalRanges& blocks = {});

/// Single-particle unitary U = V† mapping the current orbitals onto the
/// natural orbitals, block-diagonal when `blocks` is given (rows of each
/// block ordered by descending occupation).
Matrix natural_orbital_unitary(const CorrelationMatrix& c, const OrbitalRanges& blocks = {});

/// S_c^p = -ln(Σλ²/N_p), S_c^h = -ln(Σ(1-λ)²/(N_o-N_p)), and the Rényi-n
/// correlation entropies S_{c,n} = ln(Σλ^n/N_p)/(1-n) (n = 1 is the limit).
CorrelationEntropies correlation_entropies(const CorrelationMatrix& c,
                                           const std::vector<double>& orders = {});
CorrelationEntropies correlation_entropies(const Eigen::VectorXd& occupations, int n_particles,
                                           const std::vector<double>& orders = {});

}  // namespace fc
