#pragma once

#include <functional>

namespace privwit {

// Resolve the worker count: an explicit positive flag wins, then the
// PRIVWIT_THREADS environment variable, then hardware concurrency.
int resolve_threads(int flag_value = 0);

// Run fn(i) for i in [0, n) across `threads` workers (contiguous chunks).
// threads <= 1 or n < 2 degrades to a plain loop.  Exceptions thrown by fn
// are captured and rethrown on the calling thread (first one wins).
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace privwit
