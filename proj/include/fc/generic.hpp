// Copyright 2026 The fermion-complexity Authors
// SPDX-License-Identifier: Apache-2.0

// Haar-random ("generic") Fock states, CUE unitaries, and the closed-form
// complexity of generic states.

#pragma once

#include <cstdint>

#include "fc/fock.hpp"
#include "fc/rng.hpp"

namespace fc {

struct HaarSample {
  ManyBodyState state;
  std::uint64_t seed;
};

/// Independent standard complex Gaussian amplitudes, normalized; this is
/// exactly the Haar measure on the unit sphere of the sector.
HaarSample sample_haar_state(const FockSector& sector, std::uint64_t seed);

/// Haar unitary from the QR decomposition of a complex Ginibre matrix with
/// the phases of R's diagonal moved into Q.
Matrix sample_cue_unitary(int n, Rng& rng);
Matrix sample_cue_unitary(int n, std::uint64_t seed);

struct GenericAnalytics {
  double s_cue;      // -ln(2/Q)
  double s_leading;  // -N_o ln(ν^ν (1-ν)^(1-ν))
  double alpha_g;
};

/// -ln(2/Q) for a sector of dimension Q.
double cue_entropy(double dimension);

/// Generic-state scaling coefficient as a function of the filling ν in (0, 1).
double alpha_generic(double filling);

/// Throws InvalidArgument for ν in {0, 1}.
GenericAnalytics generic_complexity_analytics(int n_orbitals, int n_particles);

}  // namespace fc
