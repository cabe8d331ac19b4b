#pragma once

namespace sigw {

// Execution policy for the data-parallel kernels (Monte Carlo trials,
// mimicry-surface rows, parameter sweeps). Parallel uses OpenMP when the
// build enables it and is required to produce bit-identical results to
// Serial: every kernel writes per-item slots and reduces in index order.
enum class Exec { Serial, Parallel };

}  // namespace sigw
