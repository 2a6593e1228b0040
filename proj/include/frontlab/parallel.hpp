#pragma once

#include <cstddef>

namespace frontlab {

/// Worker count for the row-parallel stencil loops. Initialised from the
/// FRONTLAB_THREADS environment variable (default: hardware concurrency).
int thread_count();
void set_thread_count(int n);

}  // namespace frontlab
