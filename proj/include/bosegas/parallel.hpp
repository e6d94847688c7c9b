#pragma once

namespace bosegas {

/// Worker threads used by the OpenMP kernels. Reads BOSEGAS_THREADS
/// (0 or unset = OpenMP default) unless overridden.
int worker_threads();

/// Process-wide override; 0 restores the environment-driven value.
void set_worker_threads(int threads);

}  // namespace bosegas
