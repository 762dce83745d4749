#pragma once

#include <string>

#include "ctqw/decomposition.hpp"
#include "ctqw/graph.hpp"

namespace ctqw {

// Named graph families exposed on the command line:
//   star-p3       N-fold star power of the 3-vertex path (rooted at an end)
//   star-c4       N-fold star power of the 4-cycle
//   star-lattice  N rays; infinite object, realized as a truncation
//   path / cycle  plain path and cycle, n = vertex count
//   k2            the two-vertex complete graph
bool known_family(const std::string& family);

/// True for families whose spectral data describe an infinite graph
/// (finite instances are truncations).
bool family_is_infinite(const std::string& family);

RootedGraph family_graph(const std::string& family, int n, int ray_length);

/// Sequence pair for the family: decomposition-derived for finite families,
/// the closed unit-tail pair for the star lattice.
JacobiSequences family_sequences(const std::string& family, int n);

}  // namespace ctqw
