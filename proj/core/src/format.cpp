#include "betafreeze/format.hpp"

#include <cstdio>

namespace betafreeze {

std::string to_string_17g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace betafreeze
