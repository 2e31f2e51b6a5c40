/* Copyright 2026 The fermion-complexity Authors
 * SPDX-License-Identifier: Apache-2.0 */

/* The C API exercised from C: handles, status codes, and a small run. */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "fc/fc.h"

static int failures = 0;

#define CHECK(cond)                                                        \
  do {                                                                     \
    if (!(cond)) {                                                         \
      fprintf(stderr, "%s:%d: CHECK failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                          \
    }                                                                      \
  } while (0)

static void test_sector_and_states(void) {
  fc_sector* s = NULL;
  uint64_t q = 0;
  int n = 0;
  CHECK(fc_sector_create(6, 3, &s) == FC_OK);
  CHECK(fc_sector_dimension(s, &q) == FC_OK && q == 20);
  CHECK(fc_sector_orbitals(s, &n) == FC_OK && n == 6);

  fc_state* basis = NULL;
  double s2 = -1.0;
  CHECK(fc_state_basis(s, 4, &basis) == FC_OK);
  CHECK(fc_state_renyi2(basis, &s2) == FC_OK && fabs(s2) < 1e-15);

  /* Equal superposition of two basis states: ln 2. */
  double amps[40] = {0};
  amps[0] = amps[2 * 5] = 1.0 / sqrt(2.0);
  fc_state* pair = NULL;
  double h = 0.0;
  CHECK(fc_state_create(s, amps, 20, &pair) == FC_OK);
  CHECK(fc_state_renyi2(pair, &s2) == FC_OK && fabs(s2 - log(2.0)) < 1e-14);
  CHECK(fc_state_shannon(pair, &h) == FC_OK && fabs(h - log(2.0)) < 1e-14);

  /* Rotation by a diagonal generator keeps the entropy. */
  double gen[72] = {0};
  for (int k = 0; k < 6; ++k) gen[2 * (k * 6 + k)] = 0.3 * k;
  fc_state* rotated = NULL;
  CHECK(fc_state_rotate(pair, gen, 6, &rotated) == FC_OK);
  CHECK(fc_state_renyi2(rotated, &s2) == FC_OK && fabs(s2 - log(2.0)) < 1e-9);

  double out[40];
  CHECK(fc_state_amplitudes(rotated, out, 20) == FC_OK);
  CHECK(fc_state_amplitudes(rotated, out, 19) == FC_ERROR_INVALID_ARGUMENT);

  fc_state_destroy(rotated);
  fc_state_destroy(pair);
  fc_state_destroy(basis);
  fc_sector_destroy(s);
}

static void test_errors(void) {
  fc_sector* s = NULL;
  CHECK(fc_sector_create(4, 5, &s) == FC_ERROR_INVALID_ARGUMENT);
  CHECK(s == NULL);
  CHECK(strlen(fc_last_error()) > 0);
  CHECK(fc_sector_create(64, 32, &s) == FC_ERROR_CAPACITY);
  CHECK(fc_sector_create(4, 2, NULL) == FC_ERROR_INVALID_ARGUMENT);
  CHECK(fc_state_renyi2(NULL, NULL) == FC_ERROR_INVALID_ARGUMENT);
  CHECK(strcmp(fc_status_name(FC_ERROR_CONFIG), "config") == 0 || strlen(fc_status_name(FC_ERROR_CONFIG)) > 0);

  char dir[512];
  CHECK(fc_run_experiment("ground", "not a valid line\n", dir, sizeof dir) == FC_ERROR_CONFIG);
  CHECK(fc_run_experiment("nonsense", "", dir, sizeof dir) == FC_ERROR_CONFIG);
  CHECK(fc_run_experiment("ground", "sizes = 4\nbogus_key = 1\n", dir, sizeof dir) == FC_ERROR_CONFIG);
}

static void test_complexity(void) {
  fc_model_params m = {FC_MODEL_HUBBARD, 4, 1.0, 4.0, 2, 2, 0, 1};
  fc_state* g = NULL;
  CHECK(fc_state_ground(&m, &g) == FC_OK);
  fc_optimizer_params o = {1, 1, 200, 7};
  fc_complexity_result r;
  CHECK(fc_complexity(g, &m, &o, &r) == FC_OK);
  CHECK(r.s_min <= r.s_pos && r.s_min <= r.s_mom && r.s_min <= r.s_nat);
  CHECK(r.s_opt <= r.s_min + 1e-9);
  CHECK(r.s_opt >= r.s_c - 1e-8);
  CHECK(r.n_i == 4);
  CHECK(fabs(r.alpha - r.s_opt / (r.n_i * r.s_c)) < 1e-12);

  fc_optimizer_params none = {0, 0, 0, 1};
  CHECK(fc_complexity(g, &m, &none, &r) == FC_OK);
  CHECK(isnan(r.s_opt));
  fc_state_destroy(g);

  double s_cue, s_lead, a;
  CHECK(fc_generic_analytics(8, 4, &s_cue, &s_lead, &a) == FC_OK);
  CHECK(fabs(a - 2.0) < 1e-14);
  CHECK(fabs(s_cue - log(70.0 / 2.0)) < 1e-12);
  CHECK(fc_generic_analytics(8, 0, &s_cue, &s_lead, &a) == FC_ERROR_INVALID_ARGUMENT);
}

int main(void) {
  CHECK(strcmp(fc_version(), "0.1.0") == 0);
  test_sector_and_states();
  test_errors();
  test_complexity();
  if (failures) {
    fprintf(stderr, "%d check(s) failed\n", failures);
    return 1;
  }
  printf("capi: all checks passed\n");
  return 0;
}
