#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pdcross/multigraph.hpp"

namespace pdcross {

/// One end of an edge: `end` is 0 at the edge's declared u, 1 at v.
struct EdgeEnd {
  EdgeId edge;
  int end = 0;
  auto operator<=>(const EdgeEnd&) const = default;
};

/// Directed edge; forward means from end 0 to end 1.
struct DirEdge {
  EdgeId edge;
  bool forward = true;
  auto operator<=>(const DirEdge&) const = default;
  DirEdge reversed() const { return {edge, !forward}; }
};

enum class FaceSide { Left, Right };

/// Names a face as a directed edge-side in final-plane terms.
struct FaceRef {
  EdgeId edge;
  bool forward = true;
  FaceSide side = FaceSide::Left;
  auto operator<=>(const FaceRef&) const = default;
  /// The dart whose left face this reference denotes.
  DirEdge as_left_dart() const {
    return side == FaceSide::Left ? DirEdge{edge, forward} : DirEdge{edge, !forward};
  }
};

/// Places `component` (named by any contained vertex, canonicalized to the
/// smallest) inside the referenced face of an already-placed component.
/// `mirrored` places it as its mirror image: the outward side of the
/// component flips (rotations alone cannot orient a cycle).
struct ContainmentRecord {
  VertexId component;
  FaceRef host_face;
  bool mirrored = false;
};

/// Combinatorial drawing: clockwise rotations per drawn vertex, an outer-face
/// designation, and a containment forest for disconnected drawings. Every
/// vertex with a rotation entry (possibly empty) counts as drawn.
struct PlaneDrawing {
  std::map<VertexId, std::vector<EdgeEnd>> rotations;
  std::optional<FaceRef> outer_face;
  std::vector<ContainmentRecord> containment;

  std::set<VertexId> drawn_vertices() const;
  std::set<EdgeId> drawn_edges() const;
  bool operator==(const PlaneDrawing& o) const;
};

/// Reverse all rotations and face-reference sides: the image of the drawing
/// under an orientation-reversing homeomorphism of the plane.
PlaneDrawing reflect(const PlaneDrawing& d);

struct Violation {
  std::string rule;
  std::string element;
  std::string detail;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
  void fail(std::string rule, std::string element, std::string detail = "") {
    ok = false;
    violations.push_back({std::move(rule), std::move(element), std::move(detail)});
  }
};

/// Face-traced, mirror-resolved view of a PlaneDrawing. Faces are orbits of
/// the walk that turns to the rotation successor at each arrival; regions are
/// unions of faces identified by the containment data (the faces of the plane
/// arrangement of all components together).
class ResolvedDrawing {
 public:
  static ResolvedDrawing resolve(const Multigraph& g, const PlaneDrawing& d);

  const Multigraph& graph() const { return *graph_; }
  const std::map<VertexId, std::vector<EdgeEnd>>& rotations() const { return rot_; }

  int num_faces() const { return static_cast<int>(faces_.size()); }
  const std::vector<DirEdge>& face_walk(int f) const { return faces_[f]; }
  int face_of(const DirEdge& d) const;
  int face_of(const FaceRef& r) const { return face_of(r.as_left_dart()); }
  DirEdge canonical_dart(int face) const;

  /// Region nodes: faces 0..F-1, then one virtual node per isolated drawn
  /// vertex (a vertex with an empty rotation).
  int num_nodes() const { return static_cast<int>(faces_.size() + isolated_.size()); }
  int node_of_isolated(const VertexId& v) const;
  const std::vector<VertexId>& isolated_vertices() const { return isolated_; }
  int region_of(int node) const;
  int outer_region() const { return outer_region_; }

  /// All region nodes incident to the vertex (faces at its corners, or its
  /// virtual node when isolated).
  std::vector<int> nodes_at_vertex(const VertexId& v) const;

  const std::map<VertexId, VertexId>& component_of() const { return comp_; }
  VertexId component_of_edge(const EdgeId& e) const;
  /// Smallest region node (face) owned by the component, or its virtual node.
  int outward_node(const VertexId& comp) const;

  /// Canonical signature of a region: the minimal canonical dart over its
  /// faces, or "v:<id>" for all-virtual regions.
  std::string region_signature(int region) const;

 private:
  int outward_node_impl(const VertexId& comp, const PlaneDrawing& d);

  const Multigraph* graph_ = nullptr;
  std::map<VertexId, std::vector<EdgeEnd>> rot_;
  std::map<VertexId, bool> outward_flip_;  // components placed mirrored
  std::map<VertexId, VertexId> comp_;
  std::vector<std::vector<DirEdge>> faces_;
  std::map<DirEdge, int> face_of_;
  std::vector<VertexId> isolated_;
  std::map<VertexId, int> isolated_index_;
  std::vector<int> region_;  // node -> region id (dense)
  int outer_region_ = -1;
};

/// Checks all PlaneDrawing invariants: edge-end coverage, per-component Euler
/// realizability, containment forest shape, resolvable face references.
ValidationReport validate_drawing(const Multigraph& g, const PlaneDrawing& d);

struct EquivalenceWitness {
  bool mirrored = false;
};

/// True iff the drawings agree up to one global reflection: equal effective
/// rotations, corresponding outer faces, and corresponding containment
/// regions. Both drawings must draw the same subgraph of g.
bool drawings_equivalent(const Multigraph& g, const PlaneDrawing& a, const PlaneDrawing& b,
                         EquivalenceWitness* witness = nullptr);

/// Equivalence of drawings of different graphs under an explicit isomorphism
/// (vertex map and edge map, images in b's graph).
bool drawings_equivalent_mapped(const Multigraph& ga, const PlaneDrawing& a,
                                const Multigraph& gb, const PlaneDrawing& b,
                                const std::map<VertexId, VertexId>& vmap,
                                const std::map<EdgeId, EdgeId>& emap,
                                EquivalenceWitness* witness = nullptr);

/// Rebuilds outer-face and containment records from a region assignment:
/// `class_of_node` maps every region node of `resolved` to an arrangement
/// class, `outer_class` names the unbounded one. Rotations are taken from
/// `resolved`. Components touching the outer class become roots.
PlaneDrawing assemble_drawing(const ResolvedDrawing& resolved,
                              const std::vector<int>& class_of_node, int outer_class);

}  // namespace pdcross
