#pragma once

namespace betafreeze {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace betafreeze
