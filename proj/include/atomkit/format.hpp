#pragma once

#include <string>

namespace atomkit {

// Shortest locale-independent text with 17 significant digits ("%.17g" semantics).
std::string fmt17(double x);

}  // namespace atomkit
