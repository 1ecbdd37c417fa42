#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pdcross/common.hpp"

namespace pdcross {

using VertexId = std::string;
using EdgeId = std::string;

struct Edge {
  EdgeId id;
  VertexId u, v;
  bool predrawn = false;
  bool uncrossable = false;
  int weight = 1;

  const VertexId& end(int which) const { return which == 0 ? u : v; }
  const VertexId& other(const VertexId& x) const { return x == u ? v : u; }
  bool incident(const VertexId& x) const { return x == u || x == v; }
  int end_index(const VertexId& x) const { return x == u ? 0 : 1; }
};

/// Undirected multigraph with string identifiers. Parallel edges are allowed,
/// self-loops are rejected. Weights are positive; weight 1 is the default.
class Multigraph {
 public:
  Multigraph() = default;

  void add_vertex(const VertexId& v);
  void add_edge(Edge e);
  void remove_edge(const EdgeId& e);
  void remove_vertex(const VertexId& v);  // removes incident edges too

  bool has_vertex(const VertexId& v) const { return vertex_set_.count(v) != 0; }
  bool has_edge(const EdgeId& e) const { return edge_index_.count(e) != 0; }

  const Edge& edge(const EdgeId& e) const;
  Edge& edge_mut(const EdgeId& e);

  const std::set<VertexId>& vertices() const { return vertex_set_; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::size_t num_vertices() const { return vertex_set_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  std::vector<EdgeId> incident_edges(const VertexId& v) const;
  std::vector<VertexId> neighbors(const VertexId& v) const;  // deduplicated, sorted
  int degree(const VertexId& v) const;

  /// Component representative (lexicographically smallest vertex) per vertex.
  std::map<VertexId, VertexId> component_index() const;
  std::vector<std::set<VertexId>> components() const;
  bool connected() const;

  Multigraph induced(const std::set<VertexId>& vs) const;
  /// Subgraph with the given edges plus their endpoints and any extra vertices.
  Multigraph edge_subgraph(const std::set<EdgeId>& es,
                           const std::set<VertexId>& extra_vertices = {}) const;

  std::vector<EdgeId> predrawn_edges() const;
  std::set<VertexId> predrawn_vertices() const;  // endpoints of predrawn edges

  bool operator==(const Multigraph& o) const;

 private:
  std::set<VertexId> vertex_set_;
  std::vector<Edge> edges_;
  std::map<EdgeId, std::size_t> edge_index_;
};

/// Pieces of a planarised edge are named `<orig>#<segment>`; segment k runs
/// from the k-th crossing (or end 0) toward end 1. A plain id is its own
/// original.
EdgeId piece_id(const EdgeId& orig, int segment);
std::optional<std::pair<EdgeId, int>> parse_piece(const EdgeId& id);
EdgeId original_of(const EdgeId& id);

/// Registry entry for one frozen crossing: the vertex subdivides edgeA at its
/// posA-th crossing (1-based from end 0) and edgeB at posB. The 0/1 labels on
/// the four half-edges are implied: pieces of edgeA carry 0, pieces of edgeB
/// carry 1.
struct CrossingInfo {
  EdgeId edge_a;
  int pos_a = 0;
  EdgeId edge_b;
  int pos_b = 0;
};
using CrossingRegistry = std::map<VertexId, CrossingInfo>;

/// Auxiliary-vertex registry produced by surgery_subdivide: vertex -> (original
/// edge, 1-based ordinal along the edge from end 0).
struct AuxInfo {
  EdgeId edge;
  int ordinal = 0;
};
using AuxRegistry = std::map<VertexId, AuxInfo>;

/// Replace each planned edge by a path with the requested number of new,
/// ordered auxiliary vertices. Flags and weights are inherited by every path
/// edge. Subdividing an uncrossable edge is an error.
std::pair<Multigraph, AuxRegistry> surgery_subdivide(const Multigraph& g,
                                                     const std::map<EdgeId, int>& plan);

/// Merge each pair of auxiliary vertices into one degree-4 vertex. Pairs must
/// be disjoint, registered, and never join two predrawn edges.
Multigraph surgery_identify(const Multigraph& g, const AuxRegistry& reg,
                            const std::vector<std::pair<VertexId, VertexId>>& pairs);

}  // namespace pdcross
