#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "pdcross/predrawn.hpp"

namespace pdcross {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void merge(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

DrawingWitness restrict_witness(const DrawingWitness& w, const ElementSubset& s) {
  Multigraph orig = original_graph(w);
  for (const VertexId& v : s.vertices) {
    if (!orig.has_vertex(v)) throw PreconditionError("restrict: unknown vertex " + v);
  }
  for (const EdgeId& e : s.edges) {
    if (!orig.has_edge(e)) throw PreconditionError("restrict: unknown edge " + e);
    const Edge& ed = orig.edge(e);
    if (!s.vertices.count(ed.u) || !s.vertices.count(ed.v)) {
      throw PreconditionError("restrict: subset does not induce a subgraph at " + e);
    }
  }

  // Chains of pieces per original edge, in segment order.
  std::map<EdgeId, std::vector<EdgeId>> chain;
  for (const Edge& e : w.plan_graph.edges()) {
    auto p = parse_piece(e.id);
    EdgeId o = p ? p->first : e.id;
    chain[o].push_back(e.id);
  }
  for (auto& [o, pieces] : chain) {
    std::sort(pieces.begin(), pieces.end(), [](const EdgeId& a, const EdgeId& b) {
      auto pa = parse_piece(a), pb = parse_piece(b);
      return (pa ? pa->second : 0) < (pb ? pb->second : 0);
    });
  }

  std::set<VertexId> surviving_crossings;
  std::vector<CrossingRecord> out_crossings;
  for (const CrossingRecord& rec : w.crossings) {
    if (s.edges.count(rec.edge_a) && s.edges.count(rec.edge_b)) {
      surviving_crossings.insert(rec.vertex);
      out_crossings.push_back(rec);
    }
  }

  // Final graph: regroup each surviving original edge between its surviving
  // crossings; everything else is deleted.
  Multigraph fin;
  for (const VertexId& v : s.vertices) fin.add_vertex(v);
  for (const VertexId& v : surviving_crossings) fin.add_vertex(v);
  std::map<EdgeId, EdgeId> relabel;          // old piece -> new edge id
  std::map<EdgeId, EdgeId> first_old_piece;  // new edge id -> first old piece
  for (const EdgeId& o : s.edges) {
    const auto& pieces = chain.at(o);
    int group = 0;
    std::vector<std::pair<EdgeId, std::vector<EdgeId>>> groups;
    std::vector<EdgeId> cur;
    for (const EdgeId& pc : pieces) {
      cur.push_back(pc);
      const Edge& pe = w.plan_graph.edge(pc);
      if (surviving_crossings.count(pe.v)) {
        groups.push_back({EdgeId{}, cur});
        cur.clear();
        ++group;
      }
    }
    groups.push_back({EdgeId{}, cur});
    bool split = groups.size() > 1;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      EdgeId nid = split ? piece_id(o, static_cast<int>(gi)) : o;
      const auto& members = groups[gi].second;
      Edge ne = w.plan_graph.edge(members.front());
      ne.id = nid;
      ne.u = w.plan_graph.edge(members.front()).u;
      ne.v = w.plan_graph.edge(members.back()).v;
      fin.add_edge(ne);
      first_old_piece[nid] = members.front();
      for (const EdgeId& m : members) relabel[m] = nid;
    }
  }

  // Final rotations: filter and relabel the old ones.
  PlaneDrawing fd;
  for (const VertexId& v : fin.vertices()) {
    std::vector<EdgeEnd> rot;
    for (const EdgeEnd& ee : w.drawing.rotations.at(v)) {
      auto it = relabel.find(ee.edge);
      if (it == relabel.end()) continue;
      const Edge& ne = fin.edge(it->second);
      rot.push_back(EdgeEnd{it->second, ne.u == v ? 0 : 1});
    }
    fd.rotations[v] = std::move(rot);
  }

  // Region classes of the restricted arrangement: the original regions merged
  // across every deleted element.
  ResolvedDrawing ro = ResolvedDrawing::resolve(w.plan_graph, w.drawing);
  UnionFind uf(ro.num_nodes());
  std::map<int, int> region_rep;
  for (int n = 0; n < ro.num_nodes(); ++n) {
    auto it = region_rep.find(ro.region_of(n));
    if (it == region_rep.end()) {
      region_rep[ro.region_of(n)] = n;
    } else {
      uf.merge(n, it->second);
    }
  }
  for (const Edge& e : w.plan_graph.edges()) {
    if (relabel.count(e.id)) continue;  // survives
    uf.merge(ro.face_of(DirEdge{e.id, true}), ro.face_of(DirEdge{e.id, false}));
  }

  if (fin.num_edges() == 0) {
    // All-isolated restriction: no outer face, flat arrangement.
    DrawingWitness out{fin, fd, out_crossings};
    return out;
  }
  fd.outer_face = FaceRef{fin.edges().front().id, true, FaceSide::Left};
  ResolvedDrawing rf = ResolvedDrawing::resolve(fin, fd);

  std::vector<int> class_of(static_cast<std::size_t>(rf.num_nodes()), -1);
  for (int f = 0; f < rf.num_faces(); ++f) {
    DirEdge d = rf.face_walk(f).front();
    DirEdge old_dart{first_old_piece.at(d.edge), d.forward};
    class_of[static_cast<std::size_t>(f)] = uf.find(ro.face_of(old_dart));
  }
  for (const VertexId& v : rf.isolated_vertices()) {
    const auto& old_rot = w.drawing.rotations.at(v);
    int node;
    if (old_rot.empty()) {
      node = ro.node_of_isolated(v);
    } else {
      const EdgeEnd& ee = old_rot.front();
      node = ro.face_of(DirEdge{ee.edge, ee.end == 1});
    }
    class_of[static_cast<std::size_t>(rf.node_of_isolated(v))] = uf.find(node);
  }
  int outer_class;
  {
    int rep_node = -1;
    for (int n = 0; n < ro.num_nodes(); ++n) {
      if (ro.region_of(n) == ro.outer_region()) {
        rep_node = n;
        break;
      }
    }
    outer_class = rep_node >= 0 ? uf.find(rep_node) : -1;
  }

  PlaneDrawing assembled = assemble_drawing(rf, class_of, outer_class);
  return DrawingWitness{fin, assembled, out_crossings};
}

bool is_conforming(const DrawingWitness& w, const PredrawnGraph& p, long long k) {
  // The witness must draw the instance graph structurally; predrawn and
  // uncrossable markings are instance-side constraints, not drawing content.
  Multigraph orig = original_graph(w);
  bool same = orig.vertices() == p.graph.vertices() && orig.num_edges() == p.graph.num_edges();
  if (same) {
    for (const Edge& e : orig.edges()) {
      if (!p.graph.has_edge(e.id)) {
        same = false;
        break;
      }
      const Edge& f = p.graph.edge(e.id);
      bool ends = (e.u == f.u && e.v == f.v) || (e.u == f.v && e.v == f.u);
      if (!ends || e.weight != f.weight) {
        same = false;
        break;
      }
    }
  }
  if (!same) {
    throw PreconditionError("is_conforming: witness does not draw the instance graph");
  }
  if (w.total_cost() > k) return false;
  for (const CrossingRecord& rec : w.crossings) {
    if (p.graph.edge(rec.edge_a).uncrossable || p.graph.edge(rec.edge_b).uncrossable) {
      return false;
    }
  }
  ElementSubset s{p.predrawn_vertex_set(), p.predrawn_edge_set()};
  DrawingWitness r = restrict_witness(w, s);
  if (!r.crossings.empty()) return false;  // fresh predrawn-predrawn crossings
  if (r.plan_graph.vertices() != p.predrawn.drawn_vertices() ||
      [&] {
        std::set<EdgeId> have;
        for (const Edge& e : r.plan_graph.edges()) have.insert(e.id);
        return have != p.predrawn.drawn_edges();
      }()) {
    return false;
  }
  return drawings_equivalent(r.plan_graph, r.drawing, p.predrawn);
}

}  // namespace pdcross
