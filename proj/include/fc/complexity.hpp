// Copyright 2026 The fermion-complexity Authors
// SPDX-License-Identifier: Apache-2.0

// Fock-space entropies, baseline bases, and the minimization of the Renyi-2
// entropy over single-particle bases.

#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fc/fock.hpp"
#include "fc/models.hpp"
#include "fc/onebody.hpp"
#include "fc/rotation.hpp"

namespace fc {

enum class BasisKind { position, momentum, natural, explicit_unitary, optimized };

std::string to_string(BasisKind kind);

struct BasisSpec {
  BasisKind kind = BasisKind::position;
  Matrix unitary;  // only for explicit_unitary

  /// Throws InvalidArgument unless u is unitary within 1e-10.
  static BasisSpec explicit_basis(Matrix u);
};

/// -ln Σ|a_k|⁴, no cutoff.
double renyi2_entropy(const ManyBodyState& state);
double renyi2_entropy(const Vector& amplitudes);

/// -Σ P_k ln P_k with 0 ln 0 = 0.
double shannon_entropy(const ManyBodyState& state);

/// Number of probabilities above `threshold` (reporting only).
std::size_t significant_amplitudes(const ManyBodyState& state, double threshold = 1e-12);

/// N_p when ν ≤ 1/2, otherwise N_o - N_p.
int active_count(int n_orbitals, int n_particles);

/// Orbital blocks of the lattice: one per spin species.
OrbitalRanges lattice_blocks(const ModelSpec& model);

/// Fourier generator applied separately on every range.
RotationGenerator momentum_generator(const OrbitalRanges& ranges);

/// Generator that maps the state onto its natural orbitals, per block.
RotationGenerator natural_generator(const ManyBodyState& state, const OrbitalRanges& blocks);

/// Amplitudes of the state in the given basis (the rotation is applied here).
ManyBodyState in_basis(const ManyBodyState& state, const BasisSpec& basis, const OrbitalRanges& lattice);

struct OptimizerOptions {
  enum class Gradient { analytic, finite_difference };

  int random_starts = 3;
  std::uint64_t seed = 1;
  int max_iterations = 500;
  double gradient_tolerance = 1e-6;
  double relative_decrease = 1e-10;
  int stall_window = 5;
  Gradient gradient = Gradient::analytic;
  double fd_step = 1e-4;
  /// Allow A to couple orbitals of different conserved blocks; the state is
  /// first embedded into the plain sector.
  bool full_mixing = false;
  double action_tolerance = 1e-12;
  /// Ranges used for the momentum start; empty means the conserved blocks.
  OrbitalRanges lattice;
};

struct StartResult {
  std::string name;
  double initial = 0.0;
  double final = 0.0;
  int iterations = 0;
  bool converged = false;
  bool line_search_failed = false;
  double gradient_norm = 0.0;
};

struct OptimizerDiagnostics {
  int iterations = 0;   // summed over starts
  int starts = 0;
  int evaluations = 0;  // objective evaluations, gradients included
  double gradient_norm = 0.0;  // at the best point, infinity norm
  bool converged = false;  // of the start that gave the best point
  std::string best_start;
  std::vector<StartResult> per_start;
};

struct ComplexityReport {
  static constexpr double nan = std::numeric_limits<double>::quiet_NaN();

  std::map<BasisKind, double> s_pb;
  double s_min = nan;
  std::optional<double> s_opt;
  CorrelationEntropies entropies;
  double s_c = nan;
  int n_i = 0;
  double alpha = nan;  // s_opt (or s_min without optimization) / (N_i S_c)
  std::size_t k_max = 0;
  OptimizerDiagnostics optimizer;
  std::optional<RotationGenerator> best_generator;
};

/// S_pos, S_mom, S_nat, s_min, S_c and α from s_min.
ComplexityReport baseline_complexities(const ManyBodyState& state, const ModelSpec& model);

/// Multi-start conjugate-gradient minimization. The report also carries the
/// baseline entropies of the start generators.
ComplexityReport optimize_basis(const ManyBodyState& state, const OptimizerOptions& options = {});

/// Same, with the momentum start taken from the model's lattice.
ComplexityReport optimize_basis(const ManyBodyState& state, const ModelSpec& model,
                                OptimizerOptions options = {});

/// Value and Hermitian gradient of f(A) = renyi2(rotate(state, A)) in the
/// real inner product Re Tr(X† Y). Exposed for testing.
double entropy_gradient(const ManyBodyState& state, const RotationGenerator& a, Matrix& gradient,
                        const RotateOptions& options = {});

}  // namespace fc
