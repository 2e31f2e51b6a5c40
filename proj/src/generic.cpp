// Copyright 2026 The fermion-complexity Authors
// SPDX-License-Identifier: Apache-2.0

#include "fc/generic.hpp"

#include <cmath>

#include "fc/errors.hpp"

namespace fc {

namespace {
constexpr std::uint64_t kHaarStream = 0x48414152;  // "HAAR"
constexpr std::uint64_t kCueStream = 0x435545;     // "CUE"
}  // namespace

HaarSample sample_haar_state(const FockSector& sector, std::uint64_t seed) {
  Rng rng(seed, kHaarStream);
  const auto q = static_cast<Eigen::Index>(sector.dimension());
  Vector v(q);
  for (Eigen::Index k = 0; k < q; ++k) v[k] = rng.complex_normal();
  v.normalize();
  return {ManyBodyState(sector, std::move(v)), seed};
}

Matrix sample_cue_unitary(int n, Rng& rng) {
  if (n < 1) throw InvalidArgument("CUE dimension must be positive");
  Matrix z(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) z(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix& r = qr.matrixQR();
  for (int k = 0; k < n; ++k) {
    const Complex d = r(k, k);
    q.col(k) *= (std::abs(d) > 0 ? d / std::abs(d) : Complex{1.0, 0.0});
  }
  return q;
}

Matrix sample_cue_unitary(int n, std::uint64_t seed) {
  Rng rng(seed, kCueStream);
  return sample_cue_unitary(n, rng);
}

double cue_entropy(double dimension) {
  if (!(dimension >= 1)) throw InvalidArgument("sector dimension must be at least 1");
  return std::log(dimension / 2.0);
}

double alpha_generic(double nu) {
  if (!(nu > 0.0 && nu < 1.0)) throw InvalidArgument("filling must lie strictly between 0 and 1");
  if (nu <= 0.5) return 1.0 + (1.0 - nu) * std::log1p(-nu) / (nu * std::log(nu));
  return 1.0 + nu * std::log(nu) / ((1.0 - nu) * std::log1p(-nu));
}

GenericAnalytics generic_complexity_analytics(int n_orbitals, int n_particles) {
  if (n_orbitals < 1 || n_particles <= 0 || n_particles >= n_orbitals)
    throw InvalidArgument("generic analytics need 0 < N_p < N_o");
  const double nu = static_cast<double>(n_particles) / n_orbitals;
  // ln Q via lgamma; Q itself overflows long before 64 orbitals matter here.
  const double log_q = std::lgamma(n_orbitals + 1.0) - std::lgamma(n_particles + 1.0) -
                       std::lgamma(n_orbitals - n_particles + 1.0);
  GenericAnalytics out{};
  out.s_cue = log_q - std::log(2.0);
  out.s_leading = -n_orbitals * (nu * std::log(nu) + (1.0 - nu) * std::log1p(-nu));
  out.alpha_g = alpha_generic(nu);
  return out;
}

}  // namespace fc
