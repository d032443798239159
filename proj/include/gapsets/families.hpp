#pragma once

#include "gapsets/multigraph.hpp"
#include "gapsets/periodic.hpp"

#include <random>
#include <vector>

namespace gapsets {

Multigraph k4();
Multigraph cube();
Multigraph prism3();
Multigraph b1();
Multigraph b2();

PeriodicGraph wbar_a();
PeriodicGraph wbar_b();
Multigraph w_a(int n);
Multigraph w_b(int n);

// Reflection of W_b(2n) through the middle of cell pairs (0,1): x_k -> s(x)_{1-k}.
std::vector<int> sigma_o(int cells);
// Reflection of W_a(2n) through bar h: fixes the bar edges in cells h and h + n.
std::vector<int> sigma_p(int cells, int h);

Multigraph p_b(int n);
Multigraph p_a(int n);

// Uniform-ish simple connected cubic graph from the configuration model with rejection.
Multigraph random_cubic_graph(int n, std::mt19937_64& rng);

}  // namespace gapsets
