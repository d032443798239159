#pragma once

#include "gapsets/multigraph.hpp"

#include <vector>

namespace gapsets {

struct CanonicalForm {
  std::vector<int> key;    // n, then the upper triangle of the relabeled count matrix
  std::vector<int> order;  // order[i] = original vertex placed at position i
};

// Canonical labeling by color refinement and individualization, keeping the
// lexicographically smallest adjacency string over all leaves of the search tree.
CanonicalForm canonical_form(const Multigraph& g);
Multigraph canonical_relabel(const Multigraph& g);
bool isomorphic(const Multigraph& a, const Multigraph& b);

// Automorphisms as vertex permutations (p[v] = image of v); capped at max_count.
std::vector<std::vector<int>> automorphisms(const Multigraph& g, std::size_t max_count = 100000);

}  // namespace gapsets
