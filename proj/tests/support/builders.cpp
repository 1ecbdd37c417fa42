#include "support/builders.hpp"

#include <cstdlib>

namespace pdcross::testing {

Multigraph complete_graph(int n) {
  Multigraph g;
  for (int i = 1; i <= n; ++i) g.add_vertex(std::to_string(i));
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      g.add_edge(Edge{k_edge(i, j), std::to_string(i), std::to_string(j)});
    }
  }
  return g;
}

Multigraph complete_bipartite(int a, int b) {
  Multigraph g;
  for (int i = 1; i <= a; ++i) g.add_vertex("a" + std::to_string(i));
  for (int j = 1; j <= b; ++j) g.add_vertex("b" + std::to_string(j));
  for (int i = 1; i <= a; ++i) {
    for (int j = 1; j <= b; ++j) {
      g.add_edge(Edge{"a" + std::to_string(i) + "b" + std::to_string(j), "a" + std::to_string(i),
                      "b" + std::to_string(j)});
    }
  }
  return g;
}

Multigraph grid_graph(int rows, int cols) {
  Multigraph g;
  auto name = [](int r, int c) { return "r" + std::to_string(r) + "c" + std::to_string(c); };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) g.add_vertex(name(r, c));
  }
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) g.add_edge(Edge{"h" + name(r, c), name(r, c), name(r, c + 1)});
      if (r + 1 < rows) g.add_edge(Edge{"v" + name(r, c), name(r, c), name(r + 1, c)});
    }
  }
  return g;
}

CycleSpec plane_cycle(const std::vector<VertexId>& vs, bool predrawn,
                      const std::string& id_prefix) {
  CycleSpec spec;
  for (const VertexId& v : vs) spec.graph.add_vertex(v);
  int n = static_cast<int>(vs.size());
  for (int i = 0; i < n; ++i) {
    Edge e;
    e.id = id_prefix + vs[static_cast<std::size_t>(i)] + "-" +
           vs[static_cast<std::size_t>((i + 1) % n)];
    e.u = vs[static_cast<std::size_t>(i)];
    e.v = vs[static_cast<std::size_t>((i + 1) % n)];
    e.predrawn = predrawn;
    spec.graph.add_edge(e);
    spec.edge_ids.push_back(e.id);
  }
  for (int i = 0; i < n; ++i) {
    EdgeId prev = spec.edge_ids[static_cast<std::size_t>((i + n - 1) % n)];
    EdgeId next = spec.edge_ids[static_cast<std::size_t>(i)];
    spec.drawing.rotations[vs[static_cast<std::size_t>(i)]] = {EdgeEnd{prev, 1},
                                                               EdgeEnd{next, 0}};
  }
  spec.drawing.outer_face = FaceRef{spec.edge_ids[0], true, FaceSide::Right};
  return spec;
}

std::string data_path(const std::string& relative_path) {
  const char* base = std::getenv("PDCROSS_DATA");
  if (!base) base = "data";
  return std::string(base) + "/" + relative_path;
}

PredrawnGraph load_instance(const std::string& relative_path) {
  return predrawn_from_file(load_pdg(data_path(relative_path)));
}

}  // namespace pdcross::testing
