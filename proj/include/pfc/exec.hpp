#pragma once

namespace pfc {

/// Execution policy for the assembly kernels. Serial is the reference
/// implementation; Parallel uses OpenMP with static scheduling so results
/// are reproducible run-to-run for a fixed thread count.
enum class ExecPolicy { Serial, Parallel };

int max_threads();

}  // namespace pfc
