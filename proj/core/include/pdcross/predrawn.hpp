#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pdcross/multigraph.hpp"
#include "pdcross/plane_drawing.hpp"

namespace pdcross {

/// A graph together with a fixed combinatorial drawing of its predrawn
/// subgraph. The graph is kept planarised: predrawn-predrawn crossings of the
/// original input are frozen as degree-4 vertices listed in the registry, and
/// the predrawn edges are the resulting pieces.
struct PredrawnGraph {
  Multigraph graph;
  PlaneDrawing predrawn;
  CrossingRegistry registry;

  std::set<VertexId> predrawn_vertex_set() const { return predrawn.drawn_vertices(); }
  std::set<EdgeId> predrawn_edge_set() const { return predrawn.drawn_edges(); }

  /// Weighted cost of the frozen crossings, cr(H).
  long long predrawn_crossing_cost() const;
};

/// All PredrawnGraph invariants: the drawing covers exactly the predrawn
/// elements and validates, registry vertices have degree 4 with alternating
/// halves, piece chains are consistent.
ValidationReport validate_predrawn(const PredrawnGraph& p);

/// A drawing of a graph given as a plane drawing of its planarisation plus
/// the list of crossings. A crossing-free witness has plan_graph equal to the
/// drawn graph itself.
struct CrossingRecord {
  VertexId vertex;
  EdgeId edge_a;
  EdgeId edge_b;
  long long cost = 1;  // w(edge_a) * w(edge_b)
};

struct DrawingWitness {
  Multigraph plan_graph;
  PlaneDrawing drawing;
  std::vector<CrossingRecord> crossings;

  long long total_cost() const;
};

ValidationReport validate_witness(const DrawingWitness& w);

/// Recover the graph the witness draws (pieces recombined into full edges).
Multigraph original_graph(const DrawingWitness& w);

/// Wrap a crossing-free plane drawing of g as a witness.
DrawingWitness witness_for_plane_drawing(const Multigraph& g, const PlaneDrawing& d);

struct Planarisation {
  Multigraph graph;
  CrossingRegistry registry;
};

/// Freeze the witness's crossings into registry form. Rejects invalid
/// witnesses with diagnostics.
Planarisation planarise(const DrawingWitness& w);

struct ElementSubset {
  std::set<VertexId> vertices;
  std::set<EdgeId> edges;  // original-edge ids
};

/// Drawing of the subgraph induced by S: other elements deleted, crossings
/// that lost an edge smoothed away, pieces renumbered.
DrawingWitness restrict_witness(const DrawingWitness& w, const ElementSubset& s);

/// True iff the witness spends at most k beyond cr(H), restricts to a drawing
/// equivalent to the predrawn one, and never crosses an uncrossable edge.
bool is_conforming(const DrawingWitness& w, const PredrawnGraph& p, long long k);

struct SubdividedEdge {
  EdgeId first, second;
  VertexId mid;
};

/// Subdivide a predrawn edge once, splicing the drawing. The fresh vertex id
/// is chosen automatically unless given.
SubdividedEdge subdivide_predrawn_edge(PredrawnGraph& p, const EdgeId& f,
                                       const VertexId& mid_hint = "");

}  // namespace pdcross
