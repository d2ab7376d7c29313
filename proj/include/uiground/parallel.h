// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef UIGROUND_PARALLEL_H_
#define UIGROUND_PARALLEL_H_

namespace uiground {

// Selects between the OpenMP kernel and its serial reference. Both paths
// produce bit-identical results; the serial one exists for testing and for
// benchmarking the parallel one against.
enum class Exec { kSerial, kParallel };

// Sets the OpenMP team size used by kParallel kernels (<= 0 restores the
// runtime default).
void SetThreadCount(int threads);
int ThreadCount();

}  // namespace uiground

#endif  // UIGROUND_PARALLEL_H_
