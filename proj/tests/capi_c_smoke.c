/* Compiles as plain C against the shared library and exercises one full
 * generate -> diagnose -> distance flow. Exits nonzero on any mismatch. */
#include <math.h>
#include <stdio.h>
#include <string.h>

#include "maxlra/maxlra.h"

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "FAILED: %s (line %d): %s\n", #cond,        \
              __LINE__, maxlra_last_error());                     \
      return 1;                                                   \
    }                                                             \
  } while (0)

int main(void) {
  EXPECT(maxlra_version() != NULL);

  maxlra_matrix* x = NULL;
  EXPECT(maxlra_generate("identity", 2, 0, 0, 0, 0, &x) == MAXLRA_OK);
  EXPECT(maxlra_matrix_rows(x) == 2);
  EXPECT(maxlra_matrix_cols(x) == 2);

  double mx = 0.0;
  EXPECT(maxlra_max_norm(x, &mx) == MAXLRA_OK);
  EXPECT(mx == 1.0);

  maxlra_diagnostics diag;
  memset(&diag, 0, sizeof(diag));
  EXPECT(maxlra_diagnose(x, 1e-10, &diag) == MAXLRA_OK);
  EXPECT(diag.rank == 2);
  EXPECT(fabs(diag.spikiness - 2.0) < 1e-9);

  maxlra_ap_config cfg;
  maxlra_ap_config_init(&cfg);
  EXPECT(cfg.max_iter == 2000);
  cfg.seed = 1;

  maxlra_distance dist;
  memset(&dist, 0, sizeof(dist));
  EXPECT(maxlra_estimate_distance(x, 1, 0.0, -1.0, 1e-3, 3, &cfg, &dist,
                                  NULL) == MAXLRA_OK);
  EXPECT(dist.eps_plus > 0.49);
  EXPECT(dist.eps_plus < 0.52);
  EXPECT(dist.eps_minus < dist.eps_plus);
  EXPECT(dist.probes >= 2);

  /* Error paths must report through status codes, not crash. */
  EXPECT(maxlra_generate("hadamard", 3, 0, 0, 0, 0, &x) ==
         MAXLRA_ERR_NOT_POWER_OF_TWO);
  EXPECT(strlen(maxlra_last_error()) > 0);

  maxlra_matrix_destroy(x);
  printf("c smoke ok\n");
  return 0;
}
