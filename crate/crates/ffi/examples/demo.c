#include <stdio.h>
#include <stdlib.h>

#include "symmap.h"

static int check(SymmapStatus s, const char *what) {
  if (s != SYMMAP_STATUS_OK) {
    const char *msg = symmap_last_error();
    fprintf(stderr, "%s failed (%d): %s\n", what, (int)s, msg ? msg : "?");
    return 1;
  }
  return 0;
}

int main(void) {
  SymmapMapping *voss = NULL, *rot = NULL, *pm = NULL;
  SymmapSequence *seq = NULL;
  SymmapProfile *p = NULL, *q = NULL;
  int related = -1;
  double scale = 0.0, rho = 0.0, pct = 0.0;

  if (check(symmap_mapping_builtin("voss", &voss), "voss") ||
      check(symmap_mapping_builtin("fig7_rot", &rot), "fig7_rot") ||
      check(symmap_mapping_builtin("paired_pm", &pm), "paired_pm"))
    return 1;

  if (check(symmap_rotation_check(voss, rot, 1e-9, &related, &scale, NULL), "rotation"))
    return 1;
  printf("voss vs fig7_rot: related=%d scale=%.6f\n", related, scale);

  if (check(symmap_sequence_parse("ATGC", "ATGGCTTACGATCGATTTACGGA", &seq), "sequence") ||
      check(symmap_spectrum(voss, seq, &p), "spectrum p") ||
      check(symmap_spectrum(rot, seq, &q), "spectrum q"))
    return 1;

  size_t dc = 0;
  if (check(symmap_pearson(p, q, &dc, 1, &rho), "pearson") ||
      check(symmap_extrema_preservation(p, q, &pct), "extrema"))
    return 1;
  printf("spectrum rho=%.9f extrema=%.1f\n", rho, pct);

  SymmapMapping *bad = NULL;
  SymmapStatus s = symmap_mapping_builtin("nope", &bad);
  printf("unknown mapping status=%d\n", (int)s);

  symmap_profile_free(p);
  symmap_profile_free(q);
  symmap_sequence_free(seq);
  symmap_mapping_free(voss);
  symmap_mapping_free(rot);
  symmap_mapping_free(pm);
  return (related == 1 && rho > 0.999999999 && s == SYMMAP_STATUS_UNKNOWN_MAPPING) ? 0 : 1;
}
