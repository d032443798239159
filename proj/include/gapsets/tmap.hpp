#pragma once

#include "gapsets/multigraph.hpp"

#include <optional>

namespace gapsets {

// Subdivide every edge, then take the line graph: each vertex becomes a triangle.
Multigraph tmap(const Multigraph& g);
Multigraph tmap_iterate(const Multigraph& g, int k);

// f^{-1}(sigma) together with n/2 zeros and n/2 copies of -2, sorted.
Spectrum tmap_spectrum_predict(const Spectrum& sigma);

// Z with tmap(Z) isomorphic to g, or nullopt when g is not in the image.
std::optional<Multigraph> tmap_inverse(const Multigraph& g);

}  // namespace gapsets
