/* SPDX-License-Identifier: Apache-2.0
 * Copyright 2026 venuerank contributors
 *
 * Compile-and-link check that the public header is consumable from plain C.
 */

#include <stdio.h>
#include <string.h>

#include "venuerank.h"

int main(void) {
  vr_pipeline_config pipeline;
  vr_synth_config synth;
  vr_error err;

  vr_pipeline_config_defaults(&pipeline);
  vr_synth_config_defaults(&synth);
  memset(&err, 0, sizeof(err));

  if (pipeline.cv_folds != 5 || synth.n_users != 100) {
    fprintf(stderr, "unexpected defaults\n");
    return 1;
  }
  if (vr_bundle_open("/definitely/not/here", &err) != NULL) {
    return 1;
  }
  if (err.code != VR_ERR_IO) {
    fprintf(stderr, "expected io error, got %s\n", vr_status_name(err.code));
    return 1;
  }
  printf("%s\n", vr_version());
  return 0;
}
