#pragma once

#include <cstddef>
#include <functional>
#include <optional>

namespace qmf::cli {

// --threads if given, else QMF_THREADS, else the hardware concurrency (at least 1).
int resolve_threads(std::optional<int> flag);

// Calls body(i) for i in [0, n) on up to `threads` workers. Results must be written to
// per-index slots; the first exception thrown by any call is rethrown after all workers stop.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

}  // namespace qmf::cli
