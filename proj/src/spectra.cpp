// Copyright 2026 The fermion-complexity Authors
// SPDX-License-Identifier: Apache-2.0

#include "fc/spectra.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "fc/errors.hpp"
#include "fc/rng.hpp"

namespace fc {

ManyBodyState SpectrumResult::state(std::size_t k) const {
  if (k >= size()) throw InvalidArgument("eigenstate index out of range");
  return {sector, vectors.col(static_cast<Eigen::Index>(k))};
}

std::vector<int> degenerate_groups(const Eigen::VectorXd& energies, double tolerance) {
  std::vector<int> group(static_cast<std::size_t>(energies.size()));
  int id = 0;
  for (Eigen::Index k = 0; k < energies.size(); ++k) {
    if (k > 0) {
      const double scale = std::max(1.0, std::abs(energies[k]));
      if (energies[k] - energies[k - 1] > tolerance * scale) ++id;
    }
    group[static_cast<std::size_t>(k)] = id;
  }
  return group;
}

namespace {

bool is_real(const SparseOperator::Csr& m) {
  for (Eigen::Index k = 0; k < m.outerSize(); ++k)
    for (SparseOperator::Csr::InnerIterator it(m, k); it; ++it)
      if (it.value().imag() != 0.0) return false;
  return true;
}

}  // namespace

SpectrumResult full_spectrum(const SparseOperator& h, const DenseOptions& options) {
  const std::size_t q = h.dimension();
  if (q > options.dimension_cap)
    throw CapacityError("dense diagonalization of dimension " + std::to_string(q) +
                        " exceeds the cap of " + std::to_string(options.dimension_cap));
  if (!h.is_hermitian()) throw InvalidArgument("full_spectrum needs a Hermitian operator");
  const auto n = static_cast<lapack_int>(q);
  SpectrumResult out{h.sector(), Eigen::VectorXd(n), Matrix(), {}, {}};

  if (is_real(h.matrix())) {
    Eigen::MatrixXd a = Matrix(h.matrix()).real();
    const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', n, a.data(), n, out.energies.data());
    if (info != 0) throw NumericalError("dsyevd failed with info " + std::to_string(info));
    out.vectors = a.cast<Complex>();
  } else {
    Matrix a = h.to_dense();
    const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'U', n,
                                           reinterpret_cast<lapack_complex_double*>(a.data()), n,
                                           out.energies.data());
    if (info != 0) throw NumericalError("zheevd failed with info " + std::to_string(info));
    out.vectors = std::move(a);
  }
  out.group = degenerate_groups(out.energies, options.degeneracy_tolerance);
  out.labels.assign(q, {});
  return out;
}

SpectrumResult ground_state(const SparseOperator& h, int n_lowest, const LanczosOptions& options) {
  const auto q = static_cast<Eigen::Index>(h.dimension());
  if (n_lowest < 1 || n_lowest > q) throw InvalidArgument("n_lowest must lie in [1, Q]");
  if (!h.is_hermitian()) throw InvalidArgument("ground_state needs a Hermitian operator");

  // Small problems: the subspace would span everything anyway.
  const int max_sub = std::min<Eigen::Index>(
      q, options.max_subspace > 0 ? options.max_subspace : std::max(40, 4 * n_lowest + 20));
  // A block start resolves degenerate copies that a single Krylov vector
  // cannot reach; every block member is converged, not just the wanted ones.
  const int block = static_cast<int>(std::min<Eigen::Index>(q, std::max(n_lowest + 6, 2 * n_lowest)));
  const int keep = std::min(max_sub - 1, std::max({n_lowest + 4, 2 * n_lowest, block}));

  Matrix basis(q, max_sub);   // orthonormal Krylov basis V
  Matrix images(q, max_sub);  // H V
  Matrix projected = Matrix::Zero(max_sub, max_sub);
  int size = 0;

  auto add_vector = [&](Vector v) -> bool {
    for (int pass = 0; pass < 2; ++pass) {
      if (size > 0) v -= basis.leftCols(size) * (basis.leftCols(size).adjoint() * v);
    }
    const double nv = v.norm();
    if (nv < 1e-10) return false;
    basis.col(size) = v / nv;
    Vector hv;
    h.apply(basis.col(size), hv);
    images.col(size) = hv;
    const Vector column = basis.leftCols(size + 1).adjoint() * hv;
    projected.block(0, size, size + 1, 1) = column;
    projected.block(size, 0, 1, size + 1) = column.adjoint();
    projected(size, size) = column[size].real();
    ++size;
    return true;
  };

  Rng rng(options.seed, 0x4c414e43);
  for (int b = 0; b < block; ++b) {
    Vector start(q);
    for (Eigen::Index i = 0; i < q; ++i) start[i] = rng.complex_normal();
    add_vector(std::move(start));
  }

  Eigen::VectorXd ritz_values;
  Matrix ritz_vectors;
  Eigen::VectorXd residuals(block);
  int iteration = 0;
  double worst = 0.0;
  while (true) {
    Eigen::SelfAdjointEigenSolver<Matrix> small(projected.topLeftCorner(size, size));
    ritz_values = small.eigenvalues();
    const int wanted = std::min(block, size);
    const Matrix y = small.eigenvectors().leftCols(std::min(size, std::max(keep, wanted)));
    ritz_vectors = basis.leftCols(size) * y;
    const Matrix ritz_images = images.leftCols(size) * y;

    worst = 0.0;
    std::vector<Vector> expansions;
    for (int k = 0; k < wanted; ++k) {
      Vector r = ritz_images.col(k) - ritz_values[k] * ritz_vectors.col(k);
      residuals[k] = r.norm();
      worst = std::max(worst, residuals[k]);
      if (residuals[k] > options.tolerance) expansions.push_back(std::move(r));
    }
    if (wanted == block && expansions.empty()) break;
    if (size == q) break;  // complete space; Ritz pairs are exact
    if (++iteration > options.max_iterations)
      throw NumericalError("ground_state did not converge; residual " + std::to_string(worst));

    if (size + static_cast<int>(std::max<std::size_t>(expansions.size(), 1)) > max_sub) {
      // Thick restart: keep the lowest Ritz vectors.
      const int kept = static_cast<int>(y.cols());
      basis.leftCols(kept) = ritz_vectors;
      images.leftCols(kept) = ritz_images;
      projected.setZero();
      for (int k = 0; k < kept; ++k) projected(k, k) = ritz_values[k];
      size = kept;
    }
    bool grew = false;
    for (auto& r : expansions) {
      if (size >= max_sub) break;
      grew |= add_vector(std::move(r));
    }
    if (!grew) {
      Vector fresh(q);
      for (Eigen::Index i = 0; i < q; ++i) fresh[i] = rng.complex_normal();
      if (!add_vector(std::move(fresh)) && size < q)
        throw NumericalError("ground_state could not extend its Krylov subspace");
    }
  }

  SpectrumResult out{h.sector(), ritz_values.head(n_lowest), ritz_vectors.leftCols(n_lowest), {}, {}};
  // Final explicit residual check.
  for (int k = 0; k < n_lowest; ++k) {
    Vector hv;
    h.apply(out.vectors.col(k), hv);
    const double res = (hv - out.energies[k] * out.vectors.col(k)).norm();
    if (res > options.tolerance * 10)
      throw NumericalError("ground_state residual " + std::to_string(res) + " above tolerance");
  }
  out.group = degenerate_groups(out.energies, options.degeneracy_tolerance);
  out.labels.assign(static_cast<std::size_t>(n_lowest), {});
  return out;
}

namespace {

Matrix restricted(const SparseOperator& op, const Matrix& v) {
  Matrix image(v.rows(), v.cols());
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    Vector out;
    op.apply(v.col(c), out);
    image.col(c) = out;
  }
  return v.adjoint() * image;
}

int momentum_index(Complex phase, int period) {
  const double angle = std::arg(phase);
  int m = static_cast<int>(std::lround(angle * period / (2.0 * std::numbers::pi)));
  return ((m % period) + period) % period;
}

bool self_conjugate(int m, int period) { return (2 * m) % period == 0; }

}  // namespace

SpectrumResult label_symmetry(SpectrumResult spectrum, const SparseOperator& translation,
                              const SparseOperator& parity, int period) {
  if (!(translation.sector() == spectrum.sector) || !(parity.sector() == spectrum.sector))
    throw SectorMismatch("symmetry operators and spectrum live in different sectors");
  if (period < 1) throw InvalidArgument("period must be positive");
  const std::size_t n = spectrum.size();
  spectrum.labels.assign(n, {});
  const double two_pi = 2.0 * std::numbers::pi;

  std::size_t begin = 0;
  while (begin < n) {
    std::size_t end = begin + 1;
    while (end < n && spectrum.group[end] == spectrum.group[begin]) ++end;
    const auto g = static_cast<Eigen::Index>(end - begin);
    const Matrix v = spectrum.vectors.middleCols(static_cast<Eigen::Index>(begin), g);

    // Momentum projectors Π_m = (1/L) Σ_r e^{-2πimr/L} T^r inside the group.
    const Matrix t = restricted(translation, v);
    const Matrix p = restricted(parity, v);
    std::vector<Matrix> powers(static_cast<std::size_t>(period));
    powers[0] = Matrix::Identity(g, g);
    for (int r = 1; r < period; ++r) powers[r] = powers[r - 1] * t;

    Matrix coefficients(g, 0);
    std::vector<SymmetryLabel> labels;
    for (int m = 0; m < period; ++m) {
      Matrix proj = Matrix::Zero(g, g);
      for (int r = 0; r < period; ++r) proj += std::polar(1.0, -two_pi * m * r / period) * powers[r];
      proj /= static_cast<double>(period);
      proj = 0.5 * (proj + proj.adjoint()).eval();
      Eigen::SelfAdjointEigenSolver<Matrix> es(proj);
      Matrix w(g, 0);
      for (Eigen::Index k = g - 1; k >= 0; --k) {
        if (es.eigenvalues()[k] < 0.5) break;
        w.conservativeResize(g, w.cols() + 1);
        w.col(w.cols() - 1) = es.eigenvectors().col(k);
      }
      if (w.cols() == 0) continue;

      Matrix block = w;
      std::vector<int> parities(static_cast<std::size_t>(w.cols()), 0);
      if (self_conjugate(m, period)) {
        Matrix pr = w.adjoint() * p * w;
        pr = 0.5 * (pr + pr.adjoint()).eval();
        Eigen::SelfAdjointEigenSolver<Matrix> ps(pr);
        // Descending eigenvalues: parity +1 first.
        block = w * ps.eigenvectors().rowwise().reverse();
        for (Eigen::Index k = 0; k < w.cols(); ++k)
          parities[static_cast<std::size_t>(k)] = ps.eigenvalues()[w.cols() - 1 - k] > 0 ? 1 : -1;
      }
      const Eigen::Index at = coefficients.cols();
      coefficients.conservativeResize(g, at + block.cols());
      coefficients.rightCols(block.cols()) = block;
      for (Eigen::Index k = 0; k < block.cols(); ++k)
        labels.push_back({Complex{}, m, parities[static_cast<std::size_t>(k)]});
    }
    if (coefficients.cols() != g)
      throw NumericalError("momentum projectors do not resolve a degenerate group; operators may not commute with H");

    // Fix each state's global phase so its largest-magnitude amplitude is
    // real positive, then verify the labels on the rotated states.
    const Matrix rotated = (g == 1) ? v : (v * coefficients).eval();
    for (Eigen::Index k = 0; k < g; ++k) {
      Vector s = rotated.col(k);
      Eigen::Index imax = 0;
      s.cwiseAbs().maxCoeff(&imax);
      s *= std::polar(1.0, -std::arg(s[imax]));
      Vector ts, ps;
      translation.apply(s, ts);
      const Complex phase = s.dot(ts);
      if (std::abs(phase) < 0.999)
        throw NumericalError("state is not a translation eigenstate (|<T>| = " +
                             std::to_string(std::abs(phase)) + ")");
      auto& label = spectrum.labels[begin + static_cast<std::size_t>(k)];
      label.momentum_phase = phase;
      label.momentum = momentum_index(phase, period);
      if (g > 1 && label.momentum != labels[static_cast<std::size_t>(k)].momentum)
        throw NumericalError("momentum label mismatch after in-group rotation");
      label.parity = 0;
      if (self_conjugate(label.momentum, period)) {
        parity.apply(s, ps);
        const double pv = s.dot(ps).real();
        if (std::abs(std::abs(pv) - 1.0) > 1e-3)
          throw NumericalError("state is not a reflection eigenstate (<P> = " + std::to_string(pv) + ")");
        label.parity = pv > 0 ? 1 : -1;
      }
      spectrum.vectors.col(static_cast<Eigen::Index>(begin) + k) = s;
    }
    begin = end;
  }
  return spectrum;
}

}  // namespace fc
