/* Copyright 2026 The fermion-complexity Authors
 * SPDX-License-Identifier: Apache-2.0 */

/* C interface of libfcomplexity.
 *
 * Objects are opaque handles released with their *_destroy function. Every
 * fallible call returns an fc_status; on failure the message is available
 * from fc_last_error() on the same thread until the next failing call.
 * Complex arrays are interleaved (re, im) doubles; matrices are row-major. */

#ifndef FC_FC_H
#define FC_FC_H

#include <stddef.h>
#include <stdint.h>

#if defined(FC_BUILDING_LIBRARY)
#define FC_API __attribute__((visibility("default")))
#else
#define FC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fc_status {
  FC_OK = 0,
  FC_ERROR_INVALID_ARGUMENT = 1,
  FC_ERROR_CONFIG = 2,
  FC_ERROR_NUMERICAL = 3,
  FC_ERROR_CAPACITY = 4,
  FC_ERROR_SECTOR_MISMATCH = 5,
  FC_ERROR_IO = 6,
  FC_ERROR_INTERNAL = 7
} fc_status;

typedef enum fc_model_kind { FC_MODEL_HUBBARD = 0, FC_MODEL_TV = 1 } fc_model_kind;

typedef struct fc_sector fc_sector;
typedef struct fc_state fc_state;

typedef struct fc_model_params {
  fc_model_kind kind;
  int length;
  double hopping;
  double interaction; /* U or V */
  int n_up;           /* hubbard */
  int n_dn;           /* hubbard */
  int n_particles;    /* t-V */
  int periodic;       /* nonzero for periodic boundaries */
} fc_model_params;

typedef struct fc_optimizer_params {
  int optimize; /* zero: baseline bases only */
  int random_starts;
  int max_iterations;
  uint64_t seed;
} fc_optimizer_params;

typedef struct fc_complexity_result {
  double s_pos, s_mom, s_nat, s_min;
  double s_opt; /* NaN without optimization */
  double s_c_particle, s_c_hole, s_c;
  double alpha;
  int n_i;
  int converged;
  int iterations;
} fc_complexity_result;

FC_API const char* fc_version(void);
FC_API const char* fc_last_error(void);
/* Stable name of a status code. */
FC_API const char* fc_status_name(fc_status status);

/* Sectors. `sizes`/`particles` describe contiguous orbital blocks with
 * conserved particle numbers; fc_sector_create is the single-block case. */
FC_API fc_status fc_sector_create(int n_orbitals, int n_particles, fc_sector** out);
FC_API fc_status fc_sector_create_blocks(const int* sizes, const int* particles, int n_blocks, fc_sector** out);
FC_API void fc_sector_destroy(fc_sector* sector);
FC_API fc_status fc_sector_dimension(const fc_sector* sector, uint64_t* out);
FC_API fc_status fc_sector_orbitals(const fc_sector* sector, int* out);

/* States. */
FC_API fc_status fc_state_create(const fc_sector* sector, const double* amplitudes, size_t dimension,
                                 fc_state** out);
FC_API fc_status fc_state_basis(const fc_sector* sector, uint64_t rank, fc_state** out);
FC_API fc_status fc_state_haar(const fc_sector* sector, uint64_t seed, fc_state** out);
FC_API fc_status fc_state_ground(const fc_model_params* model, fc_state** out);
FC_API void fc_state_destroy(fc_state* state);
FC_API fc_status fc_state_dimension(const fc_state* state, uint64_t* out);
FC_API fc_status fc_state_amplitudes(const fc_state* state, double* out, size_t dimension);

FC_API fc_status fc_state_renyi2(const fc_state* state, double* out);
FC_API fc_status fc_state_shannon(const fc_state* state, double* out);
/* Undefined entropies (no particles or no holes) are NaN. */
FC_API fc_status fc_state_correlation_entropies(const fc_state* state, double* particle, double* hole,
                                                double* s_c);
/* exp(i Â)|state> for a Hermitian n x n generator. */
FC_API fc_status fc_state_rotate(const fc_state* state, const double* generator, int n, fc_state** out);

FC_API fc_status fc_complexity(const fc_state* state, const fc_model_params* model,
                               const fc_optimizer_params* optimizer, fc_complexity_result* out);

FC_API fc_status fc_generic_analytics(int n_orbitals, int n_particles, double* s_cue, double* s_leading,
                                      double* alpha_g);

/* Runs an experiment ("ground", "excited", "generic", "distribution",
 * "analyze") from flat key = value config text. The output directory is
 * copied into `output_dir` (NUL-terminated, truncated to `capacity`). */
FC_API fc_status fc_run_experiment(const char* kind, const char* config_text, char* output_dir, size_t capacity);

#ifdef __cplusplus
}
#endif

#endif /* FC_FC_H */
