#pragma once

#include <string>
#include <vector>

#include "quiverhom/textio.hpp"

namespace qh {

// Shipped fixtures, keyed by shape:
//   a3          linear quiver 1 -> 2 -> 3, no relations
//   zigzag4     1 -> 2 -> 3 <- 4 with the length-two path killed
//   star5       five vertices around a center, two in, two out, one
//               composable length-two path killed
//   loop        one loop x with x*x = 0
//   cycle2      cyclic two-vertex quiver with radical square zero
//   semisimple3 three vertices, no arrows
std::vector<std::string> fixture_names();
std::string fixture_text(const std::string& name);
Algebra fixture_algebra(const std::string& name, u32 p = 0);

}  // namespace qh
