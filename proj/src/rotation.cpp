// Copyright 2026 The fermion-complexity Authors
// SPDX-License-Identifier: Apache-2.0

#include "fc/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "fc/errors.hpp"

namespace fc {

namespace {

bool same_block(const OrbitalRanges& blocks, int i, int j) {
  for (const auto& b : blocks) {
    const bool in_i = i >= b.first && i < b.first + b.size;
    const bool in_j = j >= b.first && j < b.first + b.size;
    if (in_i || in_j) return in_i && in_j;
  }
  return false;
}

void check_tiling(const OrbitalRanges& blocks, int n) {
  int next = 0;
  for (const auto& b : blocks) {
    if (b.first != next || b.size < 1) throw InvalidArgument("generator blocks must tile the orbitals");
    next += b.size;
  }
  if (!blocks.empty() && next != n) throw InvalidArgument("generator blocks must tile the orbitals");
}

}  // namespace

RotationGenerator::RotationGenerator(Matrix a, OrbitalRanges blocks)
    : a_(std::move(a)), blocks_(std::move(blocks)) {
  if (a_.rows() != a_.cols()) throw InvalidArgument("generator must be square");
  const int n = static_cast<int>(a_.rows());
  check_tiling(blocks_, n);
  if ((a_ - a_.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, a_.cwiseAbs().maxCoeff()))
    throw InvalidArgument("generator is not Hermitian");
  a_ = 0.5 * (a_ + a_.adjoint()).eval();
  if (!blocks_.empty()) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (same_block(blocks_, i, j)) continue;
        if (std::abs(a_(i, j)) > 1e-12) throw InvalidArgument("generator mixes orbitals across blocks");
        a_(i, j) = 0.0;
      }
  }
}

RotationGenerator RotationGenerator::zero(int n_orbitals, OrbitalRanges blocks) {
  return RotationGenerator(Matrix::Zero(n_orbitals, n_orbitals), std::move(blocks));
}

Matrix RotationGenerator::unitary() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a_);
  const Eigen::VectorXcd phases =
      es.eigenvalues().unaryExpr([](double x) { return std::polar(1.0, x); });
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

namespace {

Matrix log_block(const Matrix& u, UnitaryLogReport& report) {
  const Eigen::Index n = u.rows();
  // A normal matrix has a diagonal Schur form with a unitary Schur basis,
  // which stays orthonormal inside degenerate eigenspaces.
  Eigen::ComplexSchur<Matrix> schur(u);
  if (schur.info() != Eigen::Success) throw NumericalError("Schur decomposition failed");
  const Matrix& t = schur.matrixT();
  const Matrix& z = schur.matrixU();
  const double off = t.triangularView<Eigen::StrictlyUpper>().toDenseMatrix().cwiseAbs().maxCoeff();
  if (n > 1 && off > 1e-8) throw InvalidArgument("matrix is not normal; cannot take a unitary logarithm");
  Eigen::VectorXd theta(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    double phase = std::arg(t(k, k));
    if (std::numbers::pi - std::abs(phase) < 1e-12) {
      phase = std::numbers::pi;
      ++report.branch_cut_eigenvalues;
    }
    theta[k] = phase;
  }
  Matrix a = z * theta.asDiagonal() * z.adjoint();
  return 0.5 * (a + a.adjoint());
}

}  // namespace

RotationGenerator generator_from_unitary(const Matrix& u, const OrbitalRanges& blocks,
                                         UnitaryLogReport& report) {
  if (u.rows() != u.cols()) throw InvalidArgument("unitary must be square");
  const Eigen::Index n = u.rows();
  const double defect = (u.adjoint() * u - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (defect > 1e-9) throw InvalidArgument("matrix is not unitary (defect " + std::to_string(defect) + ")");
  check_tiling(blocks, static_cast<int>(n));

  Matrix a = Matrix::Zero(n, n);
  if (blocks.empty()) {
    a = log_block(u, report);
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!same_block(blocks, i, j) && std::abs(u(i, j)) > 1e-9)
          throw InvalidArgument("unitary mixes orbitals across blocks");
    for (const auto& b : blocks)
      a.block(b.first, b.first, b.size, b.size) = log_block(u.block(b.first, b.first, b.size, b.size), report);
  }
  return RotationGenerator(std::move(a), blocks);
}

RotationGenerator generator_from_unitary(const Matrix& u, const OrbitalRanges& blocks) {
  UnitaryLogReport ignored;
  return generator_from_unitary(u, blocks, ignored);
}

namespace {

struct Schedule {
  int steps = 1;
  int degree = 1;
};

// Minimizes steps * degree subject to the Taylor remainder bound
// steps * (rho/steps)^(degree+1) / (degree+1)! <= tol, valid because i Â is
// skew-Hermitian after the spectral shift.
Schedule choose_schedule(double rho, double tol) {
  const double log_tol = std::log(tol);
  auto ok = [&](int m, double s) {
    return (m + 1) * std::log(rho / s) - std::lgamma(m + 2.0) + std::log(s) <= log_tol;
  };
  Schedule best{0, 0};
  double best_cost = std::numeric_limits<double>::infinity();
  for (int m = 1; m <= 60; ++m) {
    double s = 1;
    if (!ok(m, s)) {
      double lo = 1, hi = 2;
      while (!ok(m, hi) && hi < 1e8) hi *= 2;
      if (!ok(m, hi)) continue;
      while (hi - lo > 1) {
        const double mid = std::floor((lo + hi) / 2);
        (ok(m, mid) ? hi : lo) = mid;
      }
      s = hi;
    }
    if (s * m < best_cost) {
      best_cost = s * m;
      best = {static_cast<int>(s), m};
    }
  }
  if (best.steps == 0) throw NumericalError("exponential action cannot reach the requested tolerance");
  return best;
}

}  // namespace

ManyBodyState rotate(const ManyBodyState& state, const RotationGenerator& generator,
                     const RotateOptions& options, ActionStats* stats) {
  const FockSector& sector = state.sector();
  if (generator.n_orbitals() != sector.n_orbitals())
    throw SectorMismatch("generator dimension does not match the sector's orbital count");

  // Spectrum of Â on the sector: per conserved block, sums of N_b eigenvalues.
  double lo = 0.0, hi = 0.0;
  for (const auto& b : sector.blocks()) {
    const Matrix sub = generator.matrix().block(b.first, b.first, b.size, b.size);
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Matrix>(sub, Eigen::EigenvaluesOnly).eigenvalues();
    lo += ev.head(b.particles).sum();
    hi += ev.tail(b.particles).sum();
  }
  const double shift = 0.5 * (lo + hi);
  const double rho = 0.5 * (hi - lo);

  // Throws SectorMismatch for generators that mix conserved blocks.
  const OneBodyOperator op(sector, generator.matrix(), shift, options.storage);
  const Complex global = std::polar(1.0, shift);

  ActionStats local;
  local.spectral_radius = rho;
  Vector v = state.amplitudes();
  if (rho > 1e-15) {
    const Schedule schedule = choose_schedule(rho, options.tolerance);
    local.steps = schedule.steps;
    local.degree = schedule.degree;
    const Complex factor{0.0, 1.0 / schedule.steps};
    const double step_tol = options.tolerance / schedule.steps;
    Vector term, next;
    for (int s = 0; s < schedule.steps; ++s) {
      Vector sum = v;
      term = v;
      double previous = term.norm();
      for (int k = 1; k <= schedule.degree; ++k) {
        op.apply(term, next);
        ++local.matvecs;
        term = next * (factor / static_cast<double>(k));
        sum += term;
        const double current = term.norm();
        if (previous + current <= step_tol * sum.norm()) break;
        previous = current;
      }
      v = std::move(sum);
    }
  }
  if (stats) *stats = local;
  return {sector, global * v};
}

Matrix fourier_unitary(int n) {
  if (n < 1) throw InvalidArgument("Fourier matrix needs n >= 1");
  Matrix u(n, n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      u(k, j) = std::polar(norm, -2.0 * std::numbers::pi * ((static_cast<long>(k) * j) % n) / n);
  return u;
}

Matrix repeat_blocks(const Matrix& block, const OrbitalRanges& ranges) {
  int n = 0;
  for (const auto& r : ranges) {
    if (r.size != block.rows()) throw InvalidArgument("block size mismatch");
    n += r.size;
  }
  Matrix out = Matrix::Zero(n, n);
  for (const auto& r : ranges) out.block(r.first, r.first, r.size, r.size) = block;
  return out;
}

}  // namespace fc
