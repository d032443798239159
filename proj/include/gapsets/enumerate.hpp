#pragma once

#include "gapsets/multigraph.hpp"

#include <vector>

namespace gapsets {

// Connected cubic multigraphs on n vertices up to isomorphism, n even, 2 <= n <= 12.
std::vector<Multigraph> enumerate_cubic_multigraphs(int n, bool allow_loops, bool allow_multi);

}  // namespace gapsets
