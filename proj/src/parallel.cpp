#include "mpec/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mpec {

int max_threads() {
  int cap = 0;
  if (const char* env = std::getenv("MPEC_SMOOTH_THREADS")) {
    try {
      cap = std::stoi(env);
    } catch (const std::exception&) {
      cap = 0;
    }
  }
#ifdef _OPENMP
  const int available = omp_get_max_threads();
  return cap > 0 ? std::min(cap, available) : available;
#else
  (void)cap;
  return 1;
#endif
}

}  // namespace mpec
