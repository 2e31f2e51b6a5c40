// Copyright 2026 The fermion-complexity Authors
// SPDX-License-Identifier: Apache-2.0

#include "fc/fc.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <string>

#include "fc/complexity.hpp"
#include "fc/config.hpp"
#include "fc/errors.hpp"
#include "fc/experiments.hpp"
#include "fc/generic.hpp"
#include "fc/models.hpp"
#include "fc/onebody.hpp"
#include "fc/rotation.hpp"
#include "fc/spectra.hpp"

struct fc_sector {
  fc::FockSector sector;
};

struct fc_state {
  fc::ManyBodyState state;
};

namespace {

thread_local std::string last_error;

fc_status fail(fc_status status, const char* message) {
  last_error = message;
  return status;
}

template <class F>
fc_status guarded(F&& f) {
  try {
    f();
    return FC_OK;
  } catch (const fc::ConfigError& e) {
    return fail(FC_ERROR_CONFIG, e.what());
  } catch (const fc::NumericalError& e) {
    return fail(FC_ERROR_NUMERICAL, e.what());
  } catch (const fc::CapacityError& e) {
    return fail(FC_ERROR_CAPACITY, e.what());
  } catch (const fc::SectorMismatch& e) {
    return fail(FC_ERROR_SECTOR_MISMATCH, e.what());
  } catch (const fc::InvalidArgument& e) {
    return fail(FC_ERROR_INVALID_ARGUMENT, e.what());
  } catch (const fc::Error& e) {
    return fail(FC_ERROR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(FC_ERROR_CAPACITY, "out of memory");
  } catch (const std::exception& e) {
    return fail(FC_ERROR_INTERNAL, e.what());
  } catch (...) {
    return fail(FC_ERROR_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* message) {
  if (!ok) throw fc::InvalidArgument(message);
}

fc::ModelSpec to_model(const fc_model_params& p) {
  const auto boundary = p.periodic ? fc::Boundary::periodic : fc::Boundary::open;
  if (p.kind == FC_MODEL_HUBBARD)
    return fc::ModelSpec::hubbard(p.length, p.hopping, p.interaction, p.n_up, p.n_dn, boundary);
  if (p.kind == FC_MODEL_TV) return fc::ModelSpec::tv(p.length, p.hopping, p.interaction, p.n_particles, boundary);
  throw fc::InvalidArgument("unknown model kind");
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

extern "C" {

const char* fc_version(void) { return fc::kVersion; }

const char* fc_last_error(void) { return last_error.c_str(); }

const char* fc_status_name(fc_status status) {
  switch (status) {
    case FC_OK: return "ok";
    case FC_ERROR_INVALID_ARGUMENT: return "invalid argument";
    case FC_ERROR_CONFIG: return "config error";
    case FC_ERROR_NUMERICAL: return "numerical failure";
    case FC_ERROR_CAPACITY: return "capacity exceeded";
    case FC_ERROR_SECTOR_MISMATCH: return "sector mismatch";
    case FC_ERROR_IO: return "i/o error";
    case FC_ERROR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

fc_status fc_sector_create(int n_orbitals, int n_particles, fc_sector** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = new fc_sector{fc::enumerate_sector(n_orbitals, n_particles)};
  });
}

fc_status fc_sector_create_blocks(const int* sizes, const int* particles, int n_blocks, fc_sector** out) {
  return guarded([&] {
    require(out != nullptr && sizes != nullptr && particles != nullptr && n_blocks > 0, "invalid block arguments");
    std::vector<fc::OrbitalBlock> blocks;
    int first = 0;
    for (int b = 0; b < n_blocks; ++b) {
      blocks.push_back({first, sizes[b], particles[b]});
      first += sizes[b];
    }
    *out = new fc_sector{fc::FockSector(std::move(blocks))};
  });
}

void fc_sector_destroy(fc_sector* sector) { delete sector; }

fc_status fc_sector_dimension(const fc_sector* sector, uint64_t* out) {
  return guarded([&] {
    require(sector && out, "null argument");
    *out = sector->sector.dimension();
  });
}

fc_status fc_sector_orbitals(const fc_sector* sector, int* out) {
  return guarded([&] {
    require(sector && out, "null argument");
    *out = sector->sector.n_orbitals();
  });
}

fc_status fc_state_create(const fc_sector* sector, const double* amplitudes, size_t dimension, fc_state** out) {
  return guarded([&] {
    require(sector && amplitudes && out, "null argument");
    require(dimension == sector->sector.dimension(), "amplitude count does not match the sector dimension");
    fc::Vector v(static_cast<Eigen::Index>(dimension));
    for (size_t k = 0; k < dimension; ++k) v[static_cast<Eigen::Index>(k)] = {amplitudes[2 * k], amplitudes[2 * k + 1]};
    *out = new fc_state{fc::ManyBodyState(sector->sector, std::move(v))};
  });
}

fc_status fc_state_basis(const fc_sector* sector, uint64_t rank, fc_state** out) {
  return guarded([&] {
    require(sector && out, "null argument");
    *out = new fc_state{fc::ManyBodyState::basis_state(sector->sector, rank)};
  });
}

fc_status fc_state_haar(const fc_sector* sector, uint64_t seed, fc_state** out) {
  return guarded([&] {
    require(sector && out, "null argument");
    *out = new fc_state{fc::sample_haar_state(sector->sector, seed).state};
  });
}

fc_status fc_state_ground(const fc_model_params* model, fc_state** out) {
  return guarded([&] {
    require(model && out, "null argument");
    const fc::ModelSpec spec = to_model(*model);
    const fc::FockSector sector = spec.sector();
    const fc::SparseOperator h = fc::build_hamiltonian(spec, sector);
    *out = new fc_state{sector.dimension() <= 2000 ? fc::full_spectrum(h).state(0) : fc::ground_state(h, 1).state(0)};
  });
}

void fc_state_destroy(fc_state* state) { delete state; }

fc_status fc_state_dimension(const fc_state* state, uint64_t* out) {
  return guarded([&] {
    require(state && out, "null argument");
    *out = state->state.sector().dimension();
  });
}

fc_status fc_state_amplitudes(const fc_state* state, double* out, size_t dimension) {
  return guarded([&] {
    require(state && out, "null argument");
    const fc::Vector& a = state->state.amplitudes();
    require(dimension == static_cast<size_t>(a.size()), "buffer size does not match the sector dimension");
    for (size_t k = 0; k < dimension; ++k) {
      out[2 * k] = a[static_cast<Eigen::Index>(k)].real();
      out[2 * k + 1] = a[static_cast<Eigen::Index>(k)].imag();
    }
  });
}

fc_status fc_state_renyi2(const fc_state* state, double* out) {
  return guarded([&] {
    require(state && out, "null argument");
    *out = fc::renyi2_entropy(state->state);
  });
}

fc_status fc_state_shannon(const fc_state* state, double* out) {
  return guarded([&] {
    require(state && out, "null argument");
    *out = fc::shannon_entropy(state->state);
  });
}

fc_status fc_state_correlation_entropies(const fc_state* state, double* particle, double* hole, double* s_c) {
  return guarded([&] {
    require(state != nullptr, "null argument");
    const auto e = fc::correlation_entropies(fc::correlation_matrix(state->state));
    if (particle) *particle = e.particle.value_or(kNaN);
    if (hole) *hole = e.hole.value_or(kNaN);
    if (s_c) *s_c = e.s_c;
  });
}

fc_status fc_state_rotate(const fc_state* state, const double* generator, int n, fc_state** out) {
  return guarded([&] {
    require(state && generator && out, "null argument");
    require(n == state->state.sector().n_orbitals(), "generator size does not match the orbital count");
    fc::Matrix a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const size_t k = static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j);
        a(i, j) = {generator[2 * k], generator[2 * k + 1]};
      }
    *out = new fc_state{fc::rotate(state->state, fc::RotationGenerator(std::move(a)))};
  });
}

fc_status fc_complexity(const fc_state* state, const fc_model_params* model, const fc_optimizer_params* optimizer,
                        fc_complexity_result* out) {
  return guarded([&] {
    require(state && model && out, "null argument");
    const fc::ModelSpec spec = to_model(*model);
    fc::ComplexityReport r;
    if (optimizer && optimizer->optimize) {
      fc::OptimizerOptions o;
      o.random_starts = optimizer->random_starts;
      o.max_iterations = optimizer->max_iterations;
      o.seed = optimizer->seed;
      r = fc::optimize_basis(state->state, spec, o);
    } else {
      r = fc::baseline_complexities(state->state, spec);
    }
    out->s_pos = r.s_pb.at(fc::BasisKind::position);
    out->s_mom = r.s_pb.at(fc::BasisKind::momentum);
    out->s_nat = r.s_pb.at(fc::BasisKind::natural);
    out->s_min = r.s_min;
    out->s_opt = r.s_opt.value_or(kNaN);
    out->s_c_particle = r.entropies.particle.value_or(kNaN);
    out->s_c_hole = r.entropies.hole.value_or(kNaN);
    out->s_c = r.s_c;
    out->alpha = r.alpha;
    out->n_i = r.n_i;
    out->converged = r.optimizer.converged ? 1 : 0;
    out->iterations = r.optimizer.iterations;
  });
}

fc_status fc_generic_analytics(int n_orbitals, int n_particles, double* s_cue, double* s_leading, double* alpha_g) {
  return guarded([&] {
    const auto a = fc::generic_complexity_analytics(n_orbitals, n_particles);
    if (s_cue) *s_cue = a.s_cue;
    if (s_leading) *s_leading = a.s_leading;
    if (alpha_g) *alpha_g = a.alpha_g;
  });
}

fc_status fc_run_experiment(const char* kind, const char* config_text, char* output_dir, size_t capacity) {
  return guarded([&] {
    if (!kind || !config_text) throw fc::ConfigError("experiment kind and config text are required");
    const auto k = fc::parse_experiment_kind(kind);
    if (!k) throw fc::ConfigError(std::string("unknown experiment '") + kind + "'");
    const fc::RunResult result = fc::run_experiment(*k, fc::Config::parse(config_text));
    if (output_dir && capacity > 0) {
      const std::string dir = result.output_dir.string();
      const size_t n = std::min(capacity - 1, dir.size());
      std::memcpy(output_dir, dir.data(), n);
      output_dir[n] = '\0';
    }
  });
}

}  // extern "C"
