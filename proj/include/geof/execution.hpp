// Execution policy for the data-parallel kernels (exact-EoF grid scan,
// oracle feasibility scan, ensemble sweep). Every kernel has a serial
// reference path producing bit-identical results; parallel runs only
// change wall time, never output.
#pragma once

namespace geof {

enum class Execution { serial, parallel };

/// Worker count for Execution::parallel. Honors the GAUSS_EOF_THREADS
/// environment variable when set to a positive integer; otherwise the
/// OpenMP default. Always 1 when built without OpenMP.
int max_threads();

}  // namespace geof
