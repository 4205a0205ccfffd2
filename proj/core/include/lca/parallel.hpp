#pragma once

#include <cstddef>
#include <functional>

namespace lca {

/// Worker count for enumerate-mode sweeps: min(LCA_THREADS, hardware), at
/// least 1. LCA_THREADS=1 forces sequential execution.
unsigned worker_count();

/// Runs fn(0..count-1), fanning out across workers when count is large
/// enough. Callers own determinism: write results into per-index slots and
/// merge in index order afterwards.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace lca
