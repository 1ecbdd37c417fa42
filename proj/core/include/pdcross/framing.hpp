#pragma once

#include <array>

#include "pdcross/extension.hpp"

namespace pdcross {

/// The frame construction: the predrawn drawing is made connected with
/// connector edges, every drawn edge becomes three internally disjoint paths
/// of length three (its framing triplet), every drawn vertex gets a cycle
/// through its path-neighbours in rotation order (its framing cycle), and the
/// result is unioned with the instance graph.
struct Framing {
  struct ConnectorEdge {
    EdgeId id;
    VertexId u, v;
    bool from_g = false;  // a real instance edge used as a connector
  };

  Multigraph graph;  // F = frame plus the instance graph
  std::set<EdgeId> frame_edges;
  std::map<VertexId, std::vector<EdgeId>> framing_cycles;
  std::map<EdgeId, std::array<std::vector<EdgeId>, 3>> framing_triplets;
  std::vector<ConnectorEdge> connector_edges;
  PredrawnGraph source;
  /// Plane drawing of the frame built during construction; its validity is
  /// the frame's planarity certificate.
  PlaneDrawing frame_drawing;
  Multigraph frame_graph;  // just the frame edges and their vertices
  /// Connector vertices of an extended framing base (empty for ordinary).
  std::vector<VertexId> connector_vertices;
};

/// Deterministic framing: connector edges prefer instance edges joining
/// components (smallest id first), then the face-fan rule with the smallest
/// eligible vertex.
Framing build_framing(const PredrawnGraph& p, const ExtensionOptions& opts = {});

/// Exhaustive extended framings up to framing isomorphism: every base with at
/// most 2c-2 connector vertices in rich faces or subdividing their boundary
/// edges, crossed with every connector-edge insertion. Connected predrawn
/// parts yield exactly the ordinary framings.
std::vector<Framing> enumerate_extended_framings(const PredrawnGraph& p,
                                                 const ExtensionOptions& opts = {});

struct FrameReport {
  bool applicable = true;  // every predrawn component has >= 3 vertices
  bool planar = false;
  bool three_connected = false;
  std::vector<VertexId> separator;  // witness when not 3-connected
};

FrameReport check_frame_invariants(const Framing& f);

/// Framing topological minor: a topological-minor embedding of f1.graph into
/// f2.graph where instance edges ride instance paths (predrawn on predrawn),
/// framing cycles land inside the corresponding framing cycles, and each
/// triplet embeds into the triplets-plus-cycles corridor along its edge's
/// image path, one strand passing through all vertices of that path.
std::optional<EmbeddingWitness> framing_topological_minor(const Framing& f1, const Framing& f2,
                                                          const ExtensionOptions& opts = {});

/// Width of a greedy min-degree elimination order; an upper bound on the true
/// treewidth.
int treewidth_upper_bound(const Multigraph& g);

/// pdg v1 serialization with frame/triplet/fcycle marker lines.
std::string serialize_framing(const Framing& f);

bool framings_isomorphic(const Framing& a, const Framing& b, const ExtensionOptions& opts = {});

}  // namespace pdcross
