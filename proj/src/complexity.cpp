// Copyright 2026 The fermion-complexity Authors
// SPDX-License-Identifier: Apache-2.0

#include "fc/complexity.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "fc/errors.hpp"
#include "fc/generic.hpp"
#include "fc/rng.hpp"

namespace fc {

std::string to_string(BasisKind kind) {
  switch (kind) {
    case BasisKind::position: return "position";
    case BasisKind::momentum: return "momentum";
    case BasisKind::natural: return "natural";
    case BasisKind::explicit_unitary: return "explicit";
    case BasisKind::optimized: return "optimized";
  }
  return "unknown";
}

BasisSpec BasisSpec::explicit_basis(Matrix u) {
  if (u.rows() != u.cols()) throw InvalidArgument("basis unitary must be square");
  const double defect = (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
  if (defect > 1e-10) throw InvalidArgument("basis matrix is not unitary");
  return {BasisKind::explicit_unitary, std::move(u)};
}

double renyi2_entropy(const Vector& amplitudes) {
  return -std::log(amplitudes.cwiseAbs2().squaredNorm());
}

double renyi2_entropy(const ManyBodyState& state) { return renyi2_entropy(state.amplitudes()); }

double shannon_entropy(const ManyBodyState& state) {
  double h = 0.0;
  for (Eigen::Index k = 0; k < state.amplitudes().size(); ++k) {
    const double p = std::norm(state.amplitudes()[k]);
    if (p > 0) h -= p * std::log(p);
  }
  return h;
}

std::size_t significant_amplitudes(const ManyBodyState& state, double threshold) {
  std::size_t n = 0;
  for (Eigen::Index k = 0; k < state.amplitudes().size(); ++k)
    if (std::norm(state.amplitudes()[k]) > threshold) ++n;
  return n;
}

int active_count(int n_orbitals, int n_particles) {
  return 2 * n_particles <= n_orbitals ? n_particles : n_orbitals - n_particles;
}

OrbitalRanges lattice_blocks(const ModelSpec& model) {
  if (model.kind == ModelKind::hubbard) return {{0, model.length}, {model.length, model.length}};
  return {{0, model.length}};
}

RotationGenerator momentum_generator(const OrbitalRanges& ranges) {
  if (ranges.empty()) throw InvalidArgument("momentum generator needs at least one range");
  int n = 0;
  for (const auto& r : ranges) n += r.size;
  Matrix u = Matrix::Zero(n, n);
  for (const auto& r : ranges) u.block(r.first, r.first, r.size, r.size) = fourier_unitary(r.size);
  return generator_from_unitary(u, ranges);
}

RotationGenerator natural_generator(const ManyBodyState& state, const OrbitalRanges& blocks) {
  const Matrix u = natural_orbital_unitary(correlation_matrix(state), blocks);
  return generator_from_unitary(u, blocks);
}

ManyBodyState in_basis(const ManyBodyState& state, const BasisSpec& basis, const OrbitalRanges& lattice) {
  const OrbitalRanges blocks = conserved_blocks(state.sector());
  switch (basis.kind) {
    case BasisKind::position: return state;
    case BasisKind::momentum: return rotate(state, momentum_generator(lattice.empty() ? blocks : lattice));
    case BasisKind::natural: return rotate(state, natural_generator(state, blocks));
    case BasisKind::explicit_unitary: return rotate(state, generator_from_unitary(basis.unitary, blocks));
    case BasisKind::optimized: break;
  }
  throw InvalidArgument("optimized basis has no closed form; use optimize_basis");
}

double entropy_gradient(const ManyBodyState& state, const RotationGenerator& a, Matrix& gradient,
                        const RotateOptions& options) {
  const ManyBodyState rotated = rotate(state, a, options);
  const Vector& psi = rotated.amplitudes();
  const Eigen::VectorXd p = psi.cwiseAbs2();
  const double big_f = p.squaredNorm();
  const Vector w = p.cast<Complex>().cwiseProduct(psi);

  // dF = Re Tr(K† dM) where exp(iÂ) moves by i M̂ for a first-order change.
  const Matrix g = one_body_transition(state.sector(), w, psi);
  const Matrix k = Complex{0.0, -4.0} * g.conjugate();

  Eigen::SelfAdjointEigenSolver<Matrix> es(a.matrix());
  const Matrix& v = es.eigenvectors();
  const Eigen::VectorXd& ev = es.eigenvalues();
  Matrix kt = v.adjoint() * k * v;
  const Eigen::Index n = ev.size();
  for (Eigen::Index q = 0; q < n; ++q)
    for (Eigen::Index r = 0; r < n; ++r) {
      const double x = ev[q] - ev[r];
      const Complex phi = std::abs(x) < 1e-8 ? Complex{1.0, 0.5 * x}
                                              : (std::polar(1.0, x) - 1.0) / Complex{0.0, x};
      kt(q, r) *= std::conj(phi);
    }
  Matrix grad = -(v * kt * v.adjoint()) / big_f;
  gradient = 0.5 * (grad + grad.adjoint());
  return -std::log(big_f);
}

namespace {

// Real coordinates of a block-diagonal Hermitian matrix: per block, the
// diagonal followed by (Re, Im) of each upper-triangular entry.
class Parametrization {
 public:
  Parametrization(OrbitalRanges blocks, int n) : blocks_(std::move(blocks)), n_(n) {
    for (const auto& b : blocks_) size_ += b.size * b.size;
  }

  Eigen::Index size() const { return size_; }
  const OrbitalRanges& blocks() const { return blocks_; }

  Eigen::VectorXd to_params(const Matrix& a) const {
    Eigen::VectorXd x(size_);
    Eigen::Index k = 0;
    for (const auto& b : blocks_) {
      for (int i = 0; i < b.size; ++i) x[k++] = a(b.first + i, b.first + i).real();
      for (int i = 0; i < b.size; ++i)
        for (int j = i + 1; j < b.size; ++j) {
          const Complex z = a(b.first + i, b.first + j);
          x[k++] = z.real();
          x[k++] = z.imag();
        }
    }
    return x;
  }

  Matrix to_matrix(const Eigen::VectorXd& x) const {
    Matrix a = Matrix::Zero(n_, n_);
    Eigen::Index k = 0;
    for (const auto& b : blocks_) {
      for (int i = 0; i < b.size; ++i) a(b.first + i, b.first + i) = x[k++];
      for (int i = 0; i < b.size; ++i)
        for (int j = i + 1; j < b.size; ++j) {
          const Complex z{x[k], x[k + 1]};
          k += 2;
          a(b.first + i, b.first + j) = z;
          a(b.first + j, b.first + i) = std::conj(z);
        }
    }
    return a;
  }

  Eigen::VectorXd gradient_params(const Matrix& h) const {
    Eigen::VectorXd g(size_);
    Eigen::Index k = 0;
    for (const auto& b : blocks_) {
      for (int i = 0; i < b.size; ++i) g[k++] = h(b.first + i, b.first + i).real();
      for (int i = 0; i < b.size; ++i)
        for (int j = i + 1; j < b.size; ++j) {
          const Complex z = h(b.first + i, b.first + j);
          g[k++] = 2.0 * z.real();
          g[k++] = 2.0 * z.imag();
        }
    }
    return g;
  }

 private:
  OrbitalRanges blocks_;
  int n_;
  Eigen::Index size_ = 0;
};

class Objective {
 public:
  Objective(const ManyBodyState& state, Parametrization par, const OptimizerOptions& options)
      : state_(state), par_(std::move(par)), options_(options) {
    rotate_.tolerance = options.action_tolerance;
  }

  RotationGenerator generator(const Eigen::VectorXd& x) const {
    return RotationGenerator(par_.to_matrix(x), par_.blocks());
  }

  double value(const Eigen::VectorXd& x) {
    ++evaluations;
    return renyi2_entropy(rotate(state_, generator(x), rotate_));
  }

  double value_and_gradient(const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    if (options_.gradient == OptimizerOptions::Gradient::analytic) {
      ++evaluations;
      Matrix h;
      const double f = entropy_gradient(state_, generator(x), h, rotate_);
      g = par_.gradient_params(h);
      return f;
    }
    const double f = value(x);
    g.resize(x.size());
    Eigen::VectorXd y = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      y[i] = x[i] + options_.fd_step;
      const double up = value(y);
      y[i] = x[i] - options_.fd_step;
      const double down = value(y);
      y[i] = x[i];
      g[i] = (up - down) / (2.0 * options_.fd_step);
    }
    return f;
  }

  const Parametrization& parametrization() const { return par_; }

  int evaluations = 0;

 private:
  const ManyBodyState& state_;
  Parametrization par_;
  const OptimizerOptions& options_;
  RotateOptions rotate_;
};

constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 40;
constexpr double kMaxStep = 3.141592653589793;  // per-coordinate cap on a trial step

StartResult run_start(Objective& obj, Eigen::VectorXd& x, const OptimizerOptions& o) {
  StartResult r;
  Eigen::VectorXd g;
  double f = obj.value_and_gradient(x, g);
  r.initial = f;
  Eigen::VectorXd d = -g;
  const Eigen::Index n = x.size();
  double alpha_prev = 0.0, slope_prev = 0.0;
  int since_restart = 0;
  std::vector<double> history{f};

  for (;;) {
    if (g.lpNorm<Eigen::Infinity>() < o.gradient_tolerance) {
      r.converged = true;
      break;
    }
    if (r.iterations >= o.max_iterations) break;

    double slope = g.dot(d);
    if (slope >= 0 || since_restart >= n) {
      d = -g;
      slope = -g.squaredNorm();
      since_restart = 0;
      alpha_prev = 0.0;
    }
    double alpha = alpha_prev > 0 ? alpha_prev * slope_prev / slope : 1.0 / g.norm();
    alpha = std::min(alpha, kMaxStep / d.lpNorm<Eigen::Infinity>());

    bool accepted = false;
    Eigen::VectorXd trial;
    double f_trial = 0.0;
    for (int t = 0; t < kMaxBacktracks; ++t) {
      trial = x + alpha * d;
      f_trial = obj.value(trial);
      if (f_trial <= f + kArmijo * alpha * slope) {
        accepted = true;
        break;
      }
      // Minimizer of the quadratic through f, slope and f_trial, safeguarded.
      const double denom = 2.0 * (f_trial - f - slope * alpha);
      double next = denom > 0 ? -slope * alpha * alpha / denom : 0.5 * alpha;
      alpha = std::clamp(next, 0.1 * alpha, 0.5 * alpha);
    }
    if (!accepted) {
      if (since_restart > 0) {
        since_restart = n;  // retry along steepest descent
        continue;
      }
      r.line_search_failed = true;
      break;
    }

    Eigen::VectorXd g_new;
    const double f_new = obj.value_and_gradient(trial, g_new);
    const double beta = std::max(0.0, g_new.dot(g_new - g) / g.squaredNorm());
    x = std::move(trial);
    f = f_new;
    alpha_prev = alpha;
    slope_prev = slope;
    d = -g_new + beta * d;
    g = std::move(g_new);
    ++since_restart;
    ++r.iterations;
    history.push_back(f);

    const auto h = history.size();
    const auto w = static_cast<std::size_t>(o.stall_window);
    if (h > w && history[h - 1 - w] - f <= o.relative_decrease * std::max(std::abs(f), 1e-12)) {
      r.converged = true;
      break;
    }
  }
  r.final = f;
  r.gradient_norm = g.lpNorm<Eigen::Infinity>();
  return r;
}

void finish_report(ComplexityReport& report, const ManyBodyState& state) {
  report.entropies = correlation_entropies(correlation_matrix(state));
  report.s_c = report.entropies.s_c;
  report.n_i = active_count(state.sector().n_orbitals(), state.sector().n_particles());
  report.k_max = significant_amplitudes(state);
  const double s = report.s_opt.value_or(report.s_min);
  if (report.s_c >= 1e-12 && report.n_i > 0) report.alpha = s / (report.n_i * report.s_c);
}

}  // namespace

ComplexityReport baseline_complexities(const ManyBodyState& state, const ModelSpec& model) {
  if (model.n_orbitals() != state.sector().n_orbitals())
    throw SectorMismatch("model and state have different orbital counts");
  ComplexityReport report;
  const OrbitalRanges blocks = conserved_blocks(state.sector());
  report.s_pb[BasisKind::position] = renyi2_entropy(state);
  report.s_pb[BasisKind::momentum] = renyi2_entropy(rotate(state, momentum_generator(lattice_blocks(model))));
  report.s_pb[BasisKind::natural] = renyi2_entropy(rotate(state, natural_generator(state, blocks)));
  report.s_min = std::min({report.s_pb[BasisKind::position], report.s_pb[BasisKind::momentum],
                           report.s_pb[BasisKind::natural]});
  finish_report(report, state);
  return report;
}

ComplexityReport optimize_basis(const ManyBodyState& state, const ModelSpec& model, OptimizerOptions options) {
  if (model.n_orbitals() != state.sector().n_orbitals())
    throw SectorMismatch("model and state have different orbital counts");
  options.lattice = lattice_blocks(model);
  return optimize_basis(state, options);
}

ComplexityReport optimize_basis(const ManyBodyState& state, const OptimizerOptions& options) {
  if (options.random_starts < 0 || options.max_iterations < 0 || options.stall_window < 1)
    throw InvalidArgument("invalid optimizer options");
  if (std::abs(state.norm() - 1.0) > 1e-8) throw InvalidArgument("optimize_basis needs a normalized state");

  const int n = state.sector().n_orbitals();
  const OrbitalRanges blocks = conserved_blocks(state.sector());
  const OrbitalRanges lattice = options.lattice.empty() ? blocks : options.lattice;

  std::vector<std::pair<std::string, Matrix>> starts;
  starts.emplace_back("position", Matrix::Zero(n, n));
  starts.emplace_back("natural", natural_generator(state, blocks).matrix());
  starts.emplace_back("momentum", momentum_generator(lattice).matrix());

  const ManyBodyState work = options.full_mixing ? embed_in_plain_sector(state) : state;
  const OrbitalRanges opt_blocks = conserved_blocks(work.sector());
  for (int j = 0; j < options.random_starts; ++j) {
    Rng rng(options.seed, 0x5354415254ULL + static_cast<std::uint64_t>(j));
    Matrix u = Matrix::Zero(n, n);
    for (const auto& b : opt_blocks) u.block(b.first, b.first, b.size, b.size) = sample_cue_unitary(b.size, rng);
    starts.emplace_back("random" + std::to_string(j), generator_from_unitary(u, opt_blocks).matrix());
  }

  ComplexityReport report;
  Objective objective(work, Parametrization(opt_blocks, n), options);
  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_x;
  for (const auto& [name, a] : starts) {
    Eigen::VectorXd x = objective.parametrization().to_params(a);
    StartResult r = run_start(objective, x, options);
    r.name = name;
    if (name == "position") report.s_pb[BasisKind::position] = r.initial;
    if (name == "natural") report.s_pb[BasisKind::natural] = r.initial;
    if (name == "momentum") report.s_pb[BasisKind::momentum] = r.initial;
    report.optimizer.iterations += r.iterations;
    if (r.final < best) {
      best = r.final;
      best_x = x;
      report.optimizer.best_start = name;
      report.optimizer.gradient_norm = r.gradient_norm;
      report.optimizer.converged = r.converged;
    }
    report.optimizer.per_start.push_back(std::move(r));
  }
  report.optimizer.starts = static_cast<int>(starts.size());
  report.optimizer.evaluations = objective.evaluations;
  report.s_min = std::min({report.s_pb[BasisKind::position], report.s_pb[BasisKind::momentum],
                           report.s_pb[BasisKind::natural]});
  report.s_opt = std::min(best, report.s_min);
  report.s_pb[BasisKind::optimized] = *report.s_opt;
  report.best_generator = objective.generator(best_x);
  finish_report(report, state);
  return report;
}

}  // namespace fc
