#pragma once

#include <vector>

#include "mpec/bench.hpp"

namespace mpec::bench::detail {

std::vector<BenchEntry> builtin_entries();

}  // namespace mpec::bench::detail
