#pragma once

#include <string>
#include <vector>

#include "pdcross/io.hpp"
#include "pdcross/predrawn.hpp"

namespace pdcross::testing {

// Vertices "1".."n", edge ids "<u>-<v>".
Multigraph complete_graph(int n);
Multigraph complete_bipartite(int a, int b);
// Vertices "r<i>c<j>", edges "h..."/"v..." between grid neighbours.
Multigraph grid_graph(int rows, int cols);

inline EdgeId k_edge(int i, int j) {
  return std::to_string(std::min(i, j)) + "-" + std::to_string(std::max(i, j));
}

/// Plane cycle on the given vertices; edge ids "<v_i>-<v_{i+1}>" in list
/// order. Rotation at each vertex lists (previous edge, next edge); the face
/// left of the first edge traversed forward is the one swept when walking the
/// vertex order.
struct CycleSpec {
  Multigraph graph;
  PlaneDrawing drawing;
  std::vector<EdgeId> edge_ids;
};
CycleSpec plane_cycle(const std::vector<VertexId>& vs, bool predrawn = false,
                      const std::string& id_prefix = "");

PredrawnGraph load_instance(const std::string& relative_path);
std::string data_path(const std::string& relative_path);

}  // namespace pdcross::testing
