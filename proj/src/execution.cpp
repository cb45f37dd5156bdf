#include "geof/execution.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace geof {

int max_threads() {
#ifdef _OPENMP
  if (const char* env = std::getenv("GAUSS_EOF_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return v;
    } catch (...) {
    }
  }
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace geof
