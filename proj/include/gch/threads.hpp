#ifndef GCH_THREADS_HPP
#define GCH_THREADS_HPP

#include <cstddef>
#include <functional>

namespace gch {

// Effective worker count: min(hardware, GCHKIT_THREADS if set), at least 1.
int thread_cap();

// Static-partition parallel map over [0, n).  Workers write only to
// disjoint indices, so callers that reduce the per-index results
// sequentially get the same answer (bit for bit) for any thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace gch

#endif
