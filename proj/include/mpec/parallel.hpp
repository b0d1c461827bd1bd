#pragma once

namespace mpec {

/// Thread cap for OpenMP regions: MPEC_SMOOTH_THREADS when set to a positive
/// integer, otherwise the OpenMP default. Always 1 without OpenMP.
int max_threads();

}  // namespace mpec
