// Copyright 2026 The fermion-complexity Authors
// SPDX-License-Identifier: Apache-2.0

// Lattice Hamiltonians (Hubbard chain, spinless t-V chain) and the lattice
// symmetry operators used to label their eigenstates.

#pragma once

#include <string>
#include <vector>

#include "fc/fock.hpp"

namespace fc {

enum class ModelKind { hubbard, tv };
enum class Boundary { periodic, open };

/// Hubbard orbitals are packed as orbital = site + L * spin (spin 0 = up), so
/// each spin species is one contiguous orbital block.
struct ModelSpec {
  ModelKind kind = ModelKind::hubbard;
  int length = 0;
  double hopping = 1.0;
  double interaction = 0.0;  // U for hubbard, V for tv
  int n_up = 0;              // hubbard
  int n_dn = 0;              // hubbard
  int n_particles = 0;       // tv
  Boundary boundary = Boundary::periodic;

  static ModelSpec hubbard(int length, double hopping, double u, int n_up, int n_dn,
                           Boundary boundary = Boundary::periodic);
  static ModelSpec tv(int length, double hopping, double v, int n_particles,
                      Boundary boundary = Boundary::periodic);

  int n_orbitals() const;
  int total_particles() const;
  /// Throws InvalidArgument for inconsistent parameters.
  void validate() const;
  /// Natural sector of the model: the (N_up, N_dn) product sector for the
  /// Hubbard chain, the plain N_p sector for the t-V chain.
  FockSector sector() const;
  /// Nearest-neighbour bonds (i, j) over sites.
  std::vector<std::pair<int, int>> bonds() const;
  std::string name() const;
};

std::string to_string(ModelKind kind);

SparseOperator build_hamiltonian(const ModelSpec& spec, const FockSector& sector);

/// Site-permutation operator with fermionic reordering sign. `site_map[s]`
/// is the image of site s; it is applied to every spin species.
SparseOperator site_permutation_operator(const ModelSpec& spec, const FockSector& sector,
                                         const std::vector<int>& site_map);

/// Translation by one site, s -> s + 1 (mod L).
SparseOperator translation_operator(const ModelSpec& spec, const FockSector& sector);

/// Site-centred reflection, s -> -s (mod L); maps momentum k to -k.
SparseOperator parity_operator(const ModelSpec& spec, const FockSector& sector);

}  // namespace fc
