// Copyright 2026 The fermion-complexity Authors
// SPDX-License-Identifier: Apache-2.0

#include "fc/onebody.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fc/errors.hpp"

namespace fc {

namespace {
constexpr double kOccupationSlack = 1e-8;
constexpr double kDegeneracy = 1e-10;
}  // namespace

CorrelationMatrix::CorrelationMatrix(Matrix entries, int n_particles)
    : entries_(std::move(entries)), n_particles_(n_particles) {
  if (entries_.rows() != entries_.cols()) throw InvalidArgument("correlation matrix must be square");
  if (n_particles_ < 0 || n_particles_ > entries_.rows())
    throw InvalidArgument("particle number out of range for correlation matrix");
}

OrbitalRanges conserved_blocks(const FockSector& sector) {
  OrbitalRanges out;
  for (const auto& b : sector.blocks()) out.push_back({b.first, b.size});
  return out;
}

CorrelationMatrix correlation_matrix(const ManyBodyState& state) {
  const Vector& psi = state.amplitudes();
  // one_body_transition gives M_ij = <c†_i c_j>; C_ij = <c†_j c_i> = M_ji.
  Matrix m = one_body_transition(state.sector(), psi, psi).transpose();
  m = 0.5 * (m + m.adjoint()).eval();
  return {std::move(m), state.sector().n_particles()};
}

namespace {

// Deterministic eigenbasis of a Hermitian block, occupations descending.
void diagonalize_block(const Matrix& c, Eigen::VectorXd& values, Matrix& vectors) {
  const Eigen::Index n = c.rows();
  Eigen::SelfAdjointEigenSolver<Matrix> es(c);
  if (es.info() != Eigen::Success) throw NumericalError("correlation matrix diagonalization failed");
  values = es.eigenvalues().reverse();
  vectors = es.eigenvectors().rowwise().reverse();

  Eigen::Index begin = 0;
  while (begin < n) {
    Eigen::Index end = begin + 1;
    while (end < n && values[end - 1] - values[end] < kDegeneracy) ++end;
    const Eigen::Index d = end - begin;
    if (d > 1) {
      const Matrix sub = vectors.middleCols(begin, d);
      const Matrix proj = sub * sub.adjoint();
      Matrix fresh(n, 0);
      for (Eigen::Index i = 0; i < n && fresh.cols() < d; ++i) {
        Vector v = proj.col(i);
        for (int pass = 0; pass < 2; ++pass)
          if (fresh.cols() > 0) v -= fresh * (fresh.adjoint() * v);
        const double nv = v.norm();
        if (nv < 1e-6) continue;
        fresh.conservativeResize(n, fresh.cols() + 1);
        fresh.col(fresh.cols() - 1) = v / nv;
      }
      if (fresh.cols() != d) throw NumericalError("could not orthonormalize degenerate natural orbitals");
      vectors.middleCols(begin, d) = fresh;
    }
    begin = end;
  }

  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index imax = 0;
    const Eigen::VectorXd mags = vectors.col(k).cwiseAbs();
    const double top = mags.maxCoeff();
    // First index within rounding of the maximum, so ties resolve by index.
    for (imax = 0; imax < n; ++imax)
      if (mags[imax] >= top - 1e-12) break;
    vectors.col(k) *= std::polar(1.0, -std::arg(vectors(imax, k)));
  }
}

void check_and_clip(Eigen::VectorXd& values) {
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    if (values[k] < -kOccupationSlack || values[k] > 1.0 + kOccupationSlack)
      throw NumericalError("natural occupation " + std::to_string(values[k]) + " outside [0, 1]");
    values[k] = std::clamp(values[k], 0.0, 1.0);
  }
}

OrbitalRanges effective_blocks(const CorrelationMatrix& c, const OrbitalRanges& blocks) {
  if (blocks.empty()) return {{0, c.n_orbitals()}};
  int next = 0;
  for (const auto& b : blocks) {
    if (b.first != next || b.size < 1) throw InvalidArgument("orbital blocks must tile the orbitals");
    next += b.size;
  }
  if (next != c.n_orbitals()) throw InvalidArgument("orbital blocks must tile the orbitals");
  return blocks;
}

}  // namespace

NaturalOrbitals natural_orbitals(const CorrelationMatrix& c, const OrbitalRanges& blocks) {
  const int n = c.n_orbitals();
  const auto ranges = effective_blocks(c, blocks);
  Eigen::VectorXd values(n);
  Matrix vectors = Matrix::Zero(n, n);
  for (const auto& b : ranges) {
    Eigen::VectorXd v;
    Matrix w;
    diagonalize_block(c.entries().block(b.first, b.first, b.size, b.size), v, w);
    values.segment(b.first, b.size) = v;
    vectors.block(b.first, b.first, b.size, b.size) = w;
  }
  check_and_clip(values);

  // Global descending order; stable so equal occupations keep block order.
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return values[a] > values[b]; });
  NaturalOrbitals out{Eigen::VectorXd(n), Matrix(n, n)};
  for (int k = 0; k < n; ++k) {
    out.occupations[k] = values[order[static_cast<std::size_t>(k)]];
    out.orbitals.col(k) = vectors.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

Matrix natural_orbital_unitary(const CorrelationMatrix& c, const OrbitalRanges& blocks) {
  const int n = c.n_orbitals();
  const auto ranges = effective_blocks(c, blocks);
  Matrix u = Matrix::Zero(n, n);
  for (const auto& b : ranges) {
    Eigen::VectorXd v;
    Matrix w;
    diagonalize_block(c.entries().block(b.first, b.first, b.size, b.size), v, w);
    u.block(b.first, b.first, b.size, b.size) = w.adjoint();
  }
  return u;
}

CorrelationEntropies correlation_entropies(const Eigen::VectorXd& occupations, int n_particles,
                                           const std::vector<double>& orders) {
  const auto n_orbitals = static_cast<int>(occupations.size());
  const int n_holes = n_orbitals - n_particles;
  CorrelationEntropies out;
  if (n_particles > 0) out.particle = -std::log(occupations.squaredNorm() / n_particles);
  if (n_holes > 0) {
    const Eigen::VectorXd holes = Eigen::VectorXd::Ones(n_orbitals) - occupations;
    out.hole = -std::log(holes.squaredNorm() / n_holes);
  }
  // Both entropies are non-negative, so an undefined one never wins the max.
  out.s_c = std::max(out.particle.value_or(0.0), out.hole.value_or(0.0));

  for (double n : orders) {
    if (n_particles == 0) throw InvalidArgument("Renyi correlation entropies need N_p > 0");
    if (n <= 0) throw InvalidArgument("Renyi order must be positive");
    double value = 0.0;
    if (std::abs(n - 1.0) < 1e-12) {
      for (Eigen::Index i = 0; i < occupations.size(); ++i)
        if (occupations[i] > 0) value -= occupations[i] * std::log(occupations[i]);
      value /= n_particles;
    } else if (n == 2.0) {
      value = -std::log(occupations.squaredNorm() / n_particles);
    } else {
      double trace = 0.0;
      for (Eigen::Index i = 0; i < occupations.size(); ++i) trace += std::pow(occupations[i], n);
      value = std::log(trace / n_particles) / (1.0 - n);
    }
    out.renyi.emplace_back(n, value);
  }
  return out;
}

CorrelationEntropies correlation_entropies(const CorrelationMatrix& c, const std::vector<double>& orders) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(c.entries(), Eigen::EigenvaluesOnly);
  Eigen::VectorXd values = es.eigenvalues();
  check_and_clip(values);
  return correlation_entropies(values, c.n_particles(), orders);
}

}  // namespace fc
