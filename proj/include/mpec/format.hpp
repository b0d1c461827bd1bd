#pragma once

#include <string>

namespace mpec {

/// Shortest decimal form that reads back to the same double, using at most
/// 10 significant digits (values needing more are rounded to 10).
std::string format_number(double value);

}  // namespace mpec
