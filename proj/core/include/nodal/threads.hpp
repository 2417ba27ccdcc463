#pragma once

namespace nodal {

/// Worker count used when a caller passes threads = 0: the NODAL_THREADS
/// environment variable if set, otherwise the hardware concurrency.
int default_thread_count();

}  // namespace nodal
