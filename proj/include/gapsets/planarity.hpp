#pragma once

#include "gapsets/multigraph.hpp"

#include <string>
#include <vector>

namespace gapsets {

struct PlanarityResult {
  bool planar = false;
  // Rotation system of the simple underlying graph when planar.
  std::vector<std::vector<int>> rotation;
  // Edges of a subdivided K33 or K5 when not planar.
  std::vector<Edge> kuratowski_edges;
  std::string kuratowski_kind;
};

// Boyer-Myrvold test on the simple underlying graph (loops and parallel edges dropped).
PlanarityResult is_planar(const Multigraph& g);

// Independent path: Demoucron-Malgrange-Pertuiset face embedding per biconnected block,
// with the witness obtained by deleting edges while the graph stays non-planar.
PlanarityResult is_planar_fallback(const Multigraph& g);
bool dmp_planar(int n, const std::vector<Edge>& simple_edges);

// Kuratowski type ("K33" or "K5") of a subdivided edge set; empty otherwise.
std::string classify_kuratowski(const std::vector<Edge>& edges);

// Faces of a rotation system as vertex cycles.
std::vector<std::vector<int>> trace_faces(const std::vector<std::vector<int>>& rotation);
// Euler characteristic check V - E + F = 2 on every component with an edge.
bool verify_embedding(const Multigraph& g, const std::vector<std::vector<int>>& rotation);

std::vector<Edge> simple_edges(const Multigraph& g);

}  // namespace gapsets
