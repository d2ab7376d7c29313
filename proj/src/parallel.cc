// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#include "uiground/parallel.h"

#include <omp.h>

namespace uiground {

void SetThreadCount(int threads) {
  omp_set_num_threads(threads > 0 ? threads : omp_get_num_procs());
}

int ThreadCount() { return omp_get_max_threads(); }

}  // namespace uiground
