#pragma once

#include "pdcross/multigraph.hpp"

namespace pdcross::testing {

/// Independent planarity test (Demoucron-style iterative face embedding over
/// biconnected blocks). Shares no code with the extension oracle.
bool planar_demoucron(const Multigraph& g);

/// Exhaustive rotation-system enumeration: true iff some rotation system of
/// the (connected) graph satisfies Euler's formula. Usable only for tiny
/// graphs; guards with PreconditionError above the hard-coded size cap.
bool genus0_by_rotations(const Multigraph& g);

/// Exhaustive-identification crossing-number oracle for unweighted graphs:
/// smallest q <= max_q such that some set of q pairwise crossings planarises
/// the graph, or -1. Enumerates crossing configurations directly and tests
/// each with planar_demoucron.
int classical_crossing_oracle(const Multigraph& g, int max_q);

}  // namespace pdcross::testing
