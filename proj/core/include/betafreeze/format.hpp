#pragma once

#include <string>

namespace betafreeze {

// Shortest %.17g rendering: '.' decimal point, no separators, round-trips
// 64-bit doubles exactly.
std::string to_string_17g(double v);

}  // namespace betafreeze
