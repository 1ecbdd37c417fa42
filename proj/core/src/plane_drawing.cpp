#include "pdcross/plane_drawing.hpp"

#include <algorithm>
#include <functional>
#include <queue>

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

std::vector<EdgeEnd> canonical_cycle(std::vector<EdgeEnd> rot) {
  if (rot.empty()) return rot;
  std::size_t best = 0;
  for (std::size_t i = 1; i < rot.size(); ++i) {
    std::vector<EdgeEnd> a(rot.begin() + static_cast<long>(i), rot.end());
    a.insert(a.end(), rot.begin(), rot.begin() + static_cast<long>(i));
    std::vector<EdgeEnd> b(rot.begin() + static_cast<long>(best), rot.end());
    b.insert(b.end(), rot.begin(), rot.begin() + static_cast<long>(best));
    if (a < b) best = i;
  }
  std::rotate(rot.begin(), rot.begin() + static_cast<long>(best), rot.end());
  return rot;
}

}  // namespace

std::set<VertexId> PlaneDrawing::drawn_vertices() const {
  std::set<VertexId> out;
  for (const auto& [v, r] : rotations) out.insert(v);
  return out;
}

std::set<EdgeId> PlaneDrawing::drawn_edges() const {
  std::set<EdgeId> out;
  for (const auto& [v, r] : rotations) {
    for (const EdgeEnd& ee : r) out.insert(ee.edge);
  }
  return out;
}

bool PlaneDrawing::operator==(const PlaneDrawing& o) const {
  auto rec_key = [](const ContainmentRecord& r) {
    return std::tuple(r.component, r.host_face, r.mirrored);
  };
  if (containment.size() != o.containment.size()) return false;
  std::vector<std::tuple<VertexId, FaceRef, bool>> a, b;
  for (const auto& r : containment) a.push_back(rec_key(r));
  for (const auto& r : o.containment) b.push_back(rec_key(r));
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return rotations == o.rotations && outer_face == o.outer_face && a == b;
}

PlaneDrawing reflect(const PlaneDrawing& d) {
  PlaneDrawing out = d;
  for (auto& [v, rot] : out.rotations) std::reverse(rot.begin(), rot.end());
  auto flip = [](FaceRef r) {
    r.side = r.side == FaceSide::Left ? FaceSide::Right : FaceSide::Left;
    return r;
  };
  if (out.outer_face) out.outer_face = flip(*out.outer_face);
  for (auto& rec : out.containment) {
    rec.host_face = flip(rec.host_face);
    rec.mirrored = !rec.mirrored;  // outward sides flip with the plane
  }
  return out;
}

ResolvedDrawing ResolvedDrawing::resolve(const Multigraph& g, const PlaneDrawing& d) {
  ResolvedDrawing r;
  r.graph_ = &g;

  // Components of the drawn subgraph.
  std::set<EdgeId> drawn_edges = d.drawn_edges();
  std::set<VertexId> drawn_vertices = d.drawn_vertices();
  for (const EdgeId& e : drawn_edges) {
    if (!g.has_edge(e)) throw PreconditionError("drawing references unknown edge " + e);
  }
  {
    Multigraph sub = g.edge_subgraph(drawn_edges, drawn_vertices);
    r.comp_ = sub.component_index();
  }

  // Containment forest; the mirrored flag selects the component's outward
  // side rather than transforming its rotations (a cycle's rotations cannot
  // express orientation, its outward face can).
  std::map<VertexId, VertexId> parent;
  for (const ContainmentRecord& rec : d.containment) {
    auto it = r.comp_.find(rec.component);
    if (it == r.comp_.end()) {
      throw PreconditionError("containment references undrawn component " + rec.component);
    }
    VertexId child = it->second;
    if (!g.has_edge(rec.host_face.edge)) {
      throw PreconditionError("containment host edge unknown: " + rec.host_face.edge);
    }
    const Edge& he = g.edge(rec.host_face.edge);
    auto host_it = r.comp_.find(he.u);
    if (host_it == r.comp_.end() || !drawn_edges.count(he.id)) {
      throw PreconditionError("containment host edge not drawn: " + he.id);
    }
    VertexId host = host_it->second;
    if (host == child) throw PreconditionError("component contained in itself: " + child);
    if (parent.count(child)) throw PreconditionError("duplicate containment for " + child);
    parent[child] = host;
    r.outward_flip_[child] = rec.mirrored;
  }

  for (const auto& [v, rot] : d.rotations) {
    if (!r.comp_.count(v)) throw PreconditionError("rotation for unknown vertex " + v);
    r.rot_[v] = rot;
  }

  // Face tracing. position map: edge end -> (vertex, index in rotation).
  std::map<EdgeEnd, std::pair<VertexId, int>> pos;
  for (const auto& [v, rot] : r.rot_) {
    for (std::size_t i = 0; i < rot.size(); ++i) {
      if (!pos.emplace(rot[i], std::pair(v, static_cast<int>(i))).second) {
        throw PreconditionError("duplicate edge-end in rotations: " + rot[i].edge);
      }
    }
  }
  auto next_dart = [&](const DirEdge& de) -> DirEdge {
    const Edge& e = g.edge(de.edge);
    EdgeEnd arrival{de.edge, de.forward ? 1 : 0};
    auto it = pos.find(arrival);
    if (it == pos.end()) throw PreconditionError("edge-end missing from rotations: " + de.edge);
    const VertexId& w = it->second.first;
    if (e.end(arrival.end) != w) throw PreconditionError("edge-end at wrong vertex: " + de.edge);
    const auto& rot = r.rot_.at(w);
    const EdgeEnd& nxt = rot[(static_cast<std::size_t>(it->second.second) + 1) % rot.size()];
    return DirEdge{nxt.edge, nxt.end == 0};
  };
  std::vector<DirEdge> all_darts;
  for (const EdgeId& e : drawn_edges) {
    all_darts.push_back({e, true});
    all_darts.push_back({e, false});
  }
  std::sort(all_darts.begin(), all_darts.end());
  for (const DirEdge& start : all_darts) {
    if (r.face_of_.count(start)) continue;
    int id = static_cast<int>(r.faces_.size());
    std::vector<DirEdge> walk;
    DirEdge cur = start;
    do {
      r.face_of_[cur] = id;
      walk.push_back(cur);
      cur = next_dart(cur);
      if (walk.size() > 4 * all_darts.size() + 4) {
        throw PreconditionError("face tracing does not close up");
      }
    } while (!(cur == start));
    r.faces_.push_back(std::move(walk));
  }

  // Isolated drawn vertices get virtual region nodes.
  for (const auto& [v, rot] : r.rot_) {
    if (rot.empty()) {
      r.isolated_index_[v] = static_cast<int>(r.faces_.size() + r.isolated_.size());
      r.isolated_.push_back(v);
    }
  }

  // Region structure: merge host faces with child outward nodes; side-by-side
  // roots all share the outer region.
  UnionFind uf(r.num_nodes());
  for (const ContainmentRecord& rec : d.containment) {
    VertexId child = r.comp_.at(rec.component);
    int host_node = r.face_of(rec.host_face);
    uf.merge(host_node, r.outward_node_impl(child, d));
  }
  std::set<VertexId> comps;
  for (const auto& [v, c] : r.comp_) comps.insert(c);
  int outer_node = -1;
  if (d.outer_face) {
    if (!drawn_edges.count(d.outer_face->edge)) {
      throw PreconditionError("outer face references undrawn edge " + d.outer_face->edge);
    }
    outer_node = r.face_of(*d.outer_face);
  }
  for (const VertexId& c : comps) {
    if (parent.count(c)) continue;  // not a root
    int node = r.outward_node_impl(c, d);
    if (outer_node < 0) {
      outer_node = node;
    } else {
      uf.merge(outer_node, node);
    }
  }

  // Dense region ids in node order.
  r.region_.assign(static_cast<std::size_t>(r.num_nodes()), -1);
  std::map<int, int> region_id;
  for (int n = 0; n < r.num_nodes(); ++n) {
    int root = uf.find(n);
    auto it = region_id.emplace(root, static_cast<int>(region_id.size())).first;
    r.region_[static_cast<std::size_t>(n)] = it->second;
  }
  r.outer_region_ = outer_node >= 0 ? r.region_[static_cast<std::size_t>(outer_node)] : -1;
  return r;
}

int ResolvedDrawing::face_of(const DirEdge& d) const {
  auto it = face_of_.find(d);
  if (it == face_of_.end()) throw PreconditionError("no face for dart on edge " + d.edge);
  return it->second;
}

DirEdge ResolvedDrawing::canonical_dart(int face) const {
  const auto& walk = faces_.at(static_cast<std::size_t>(face));
  return *std::min_element(walk.begin(), walk.end());
}

int ResolvedDrawing::node_of_isolated(const VertexId& v) const {
  auto it = isolated_index_.find(v);
  if (it == isolated_index_.end()) throw PreconditionError("not an isolated drawn vertex: " + v);
  return it->second;
}

int ResolvedDrawing::region_of(int node) const {
  return region_.at(static_cast<std::size_t>(node));
}

std::vector<int> ResolvedDrawing::nodes_at_vertex(const VertexId& v) const {
  auto it = rot_.find(v);
  if (it == rot_.end()) throw PreconditionError("vertex not drawn: " + v);
  if (it->second.empty()) return {isolated_index_.at(v)};
  std::set<int> out;
  for (const EdgeEnd& ee : it->second) {
    // The corner after this end belongs to the face arriving through it.
    out.insert(face_of(DirEdge{ee.edge, ee.end == 1}));
  }
  return {out.begin(), out.end()};
}

VertexId ResolvedDrawing::component_of_edge(const EdgeId& e) const {
  return comp_.at(graph_->edge(e).u);
}

int ResolvedDrawing::outward_node(const VertexId& comp) const {
  // The face left of the smallest drawn edge's forward dart, or of its
  // reverse dart when the component is placed mirrored; a lone vertex uses
  // its virtual node.
  std::optional<EdgeId> best;
  for (const auto& [de, f] : face_of_) {
    if (component_of_edge(de.edge) == comp) {
      if (!best || de.edge < *best) best = de.edge;
    }
  }
  if (!best) return isolated_index_.at(comp);
  bool flip = false;
  auto it = outward_flip_.find(comp);
  if (it != outward_flip_.end()) flip = it->second;
  return face_of(DirEdge{*best, !flip});
}

int ResolvedDrawing::outward_node_impl(const VertexId& comp, const PlaneDrawing& d) {
  // Within resolve(): same as outward_node, but the outer-owning root uses the
  // designated outer face instead of the convention.
  if (d.outer_face && comp_.count(graph_->edge(d.outer_face->edge).u) &&
      comp_.at(graph_->edge(d.outer_face->edge).u) == comp) {
    return face_of(*d.outer_face);
  }
  return outward_node(comp);
}

std::string ResolvedDrawing::region_signature(int region) const {
  std::optional<DirEdge> best;
  for (int f = 0; f < static_cast<int>(faces_.size()); ++f) {
    if (region_of(f) != region) continue;
    DirEdge c = canonical_dart(f);
    if (!best || c < *best) best = c;
  }
  if (best) return best->edge + (best->forward ? "+" : "-");
  for (const VertexId& v : isolated_) {
    if (region_of(isolated_index_.at(v)) == region) return "v:" + v;
  }
  return "<empty>";
}

ValidationReport validate_drawing(const Multigraph& g, const PlaneDrawing& d) {
  ValidationReport rep;

  // Structural checks on rotations.
  std::map<EdgeEnd, int> seen;
  for (const auto& [v, rot] : d.rotations) {
    if (!g.has_vertex(v)) {
      rep.fail("unknown vertex", v);
      continue;
    }
    for (const EdgeEnd& ee : rot) {
      if (!g.has_edge(ee.edge) || (ee.end != 0 && ee.end != 1)) {
        rep.fail("unknown edge-end", ee.edge);
        continue;
      }
      if (g.edge(ee.edge).end(ee.end) != v) {
        rep.fail("edge-end at wrong vertex", ee.edge,
                 "end " + std::to_string(ee.end) + " listed at " + v);
      }
      if (++seen[ee] > 1) rep.fail("duplicate edge-end", ee.edge);
    }
  }
  for (const EdgeId& e : d.drawn_edges()) {
    if (!g.has_edge(e)) continue;
    for (int end = 0; end < 2; ++end) {
      if (!seen.count(EdgeEnd{e, end})) {
        rep.fail("missing edge-end", e, "end " + std::to_string(end));
      }
    }
  }
  if (!d.drawn_edges().empty() && !d.outer_face) {
    rep.fail("missing outer face", "");
  }
  if (d.outer_face && !d.drawn_edges().count(d.outer_face->edge)) {
    rep.fail("outer face references undrawn edge", d.outer_face->edge);
  }
  if (!rep.ok) return rep;

  // Containment forest shape.
  Multigraph sub = g.edge_subgraph(d.drawn_edges(), d.drawn_vertices());
  auto comp = sub.component_index();
  std::map<VertexId, VertexId> parent;
  for (const ContainmentRecord& rec : d.containment) {
    if (!comp.count(rec.component)) {
      rep.fail("containment names undrawn component", rec.component);
      continue;
    }
    VertexId child = comp.at(rec.component);
    if (!d.drawn_edges().count(rec.host_face.edge)) {
      rep.fail("containment host edge not drawn", rec.host_face.edge);
      continue;
    }
    VertexId host = comp.at(g.edge(rec.host_face.edge).u);
    if (host == child) {
      rep.fail("component contained in own face", child);
      continue;
    }
    if (parent.count(child)) {
      rep.fail("duplicate containment record", child);
      continue;
    }
    parent[child] = host;
  }
  for (const auto& [child, host] : parent) {
    VertexId cur = host;
    std::set<VertexId> path{child};
    while (parent.count(cur)) {
      if (!path.insert(cur).second) break;
      cur = parent.at(cur);
    }
    if (path.count(cur)) rep.fail("containment not a forest", child);
  }
  if (d.outer_face) {
    VertexId oc = comp.at(g.edge(d.outer_face->edge).u);
    if (parent.count(oc)) rep.fail("outer face not in root arrangement", oc);
  }
  if (!rep.ok) return rep;

  // Euler realizability per component, via full resolution.
  try {
    ResolvedDrawing res = ResolvedDrawing::resolve(g, d);
    std::map<VertexId, int> vcount, ecount, fcount;
    for (const auto& [v, c] : res.component_of()) vcount[c]++;
    for (const EdgeId& e : d.drawn_edges()) ecount[res.component_of_edge(e)]++;
    for (int f = 0; f < res.num_faces(); ++f) {
      fcount[res.component_of_edge(res.face_walk(f).front().edge)]++;
    }
    for (const auto& [c, v] : vcount) {
      int e = ecount.count(c) ? ecount[c] : 0;
      int fc = fcount.count(c) ? fcount[c] : 0;
      if (e == 0) continue;  // lone vertex: one implicit face
      if (v - e + fc != 2) {
        rep.fail("component not planar (Euler check)", c,
                 "v=" + std::to_string(v) + " e=" + std::to_string(e) +
                     " f=" + std::to_string(fc));
      }
    }
  } catch (const PreconditionError& err) {
    rep.fail("resolution failed", "", err.what());
  }
  return rep;
}

namespace {

struct NormalForm {
  std::map<VertexId, std::vector<EdgeEnd>> rot;
  std::string outer;
  std::map<VertexId, std::string> placement;  // component -> host region signature
  bool operator==(const NormalForm&) const = default;
};

NormalForm normal_form(const Multigraph& g, const PlaneDrawing& d) {
  ResolvedDrawing res = ResolvedDrawing::resolve(g, d);
  NormalForm nf;
  for (const auto& [v, rot] : res.rotations()) nf.rot[v] = canonical_cycle(rot);
  nf.outer = res.outer_region() >= 0 ? res.region_signature(res.outer_region()) : "<none>";
  std::map<VertexId, int> host_region;
  for (const ContainmentRecord& rec : d.containment) {
    host_region[res.component_of().at(rec.component)] =
        res.region_of(res.face_of(rec.host_face));
  }
  std::set<VertexId> comps;
  for (const auto& [v, c] : res.component_of()) comps.insert(c);
  for (const VertexId& c : comps) {
    auto it = host_region.find(c);
    int region = it != host_region.end() ? it->second : res.outer_region();
    nf.placement[c] = region >= 0 ? res.region_signature(region) : "<none>";
  }
  return nf;
}

}  // namespace

bool drawings_equivalent(const Multigraph& g, const PlaneDrawing& a, const PlaneDrawing& b,
                         EquivalenceWitness* witness) {
  if (a.drawn_vertices() != b.drawn_vertices() || a.drawn_edges() != b.drawn_edges()) {
    throw PreconditionError("graph mismatch: drawings cover different subgraphs");
  }
  NormalForm na = normal_form(g, a);
  if (na == normal_form(g, b)) {
    if (witness) witness->mirrored = false;
    return true;
  }
  if (na == normal_form(g, reflect(b))) {
    if (witness) witness->mirrored = true;
    return true;
  }
  return false;
}

bool drawings_equivalent_mapped(const Multigraph& ga, const PlaneDrawing& a,
                                const Multigraph& gb, const PlaneDrawing& b,
                                const std::map<VertexId, VertexId>& vmap,
                                const std::map<EdgeId, EdgeId>& emap,
                                EquivalenceWitness* witness) {
  PlaneDrawing mapped;
  std::map<EdgeId, bool> flip;  // image edge stored with opposite end order
  for (const EdgeId& e : a.drawn_edges()) {
    auto eit = emap.find(e);
    if (eit == emap.end()) throw PreconditionError("edge map incomplete at " + e);
    const Edge& src = ga.edge(e);
    const Edge& dst = gb.edge(eit->second);
    auto u_img = vmap.at(src.u);
    if (u_img == dst.u) {
      flip[eit->second] = false;
    } else if (u_img == dst.v) {
      flip[eit->second] = true;
    } else {
      throw PreconditionError("vertex/edge maps inconsistent at " + e);
    }
  }
  for (const auto& [v, rot] : a.rotations) {
    std::vector<EdgeEnd> img;
    for (const EdgeEnd& ee : rot) {
      EdgeId ie = emap.at(ee.edge);
      int end = flip.at(ie) ? 1 - ee.end : ee.end;
      img.push_back(EdgeEnd{ie, end});
    }
    mapped.rotations[vmap.at(v)] = std::move(img);
  }
  auto map_ref = [&](FaceRef r) {
    EdgeId ie = emap.at(r.edge);
    if (flip.at(ie)) r.forward = !r.forward;
    r.edge = ie;
    return r;
  };
  if (a.outer_face) mapped.outer_face = map_ref(*a.outer_face);
  for (ContainmentRecord rec : a.containment) {
    rec.component = vmap.at(rec.component);
    rec.host_face = map_ref(rec.host_face);
    mapped.containment.push_back(rec);
  }
  return drawings_equivalent(gb, mapped, b, witness);
}

PlaneDrawing assemble_drawing(const ResolvedDrawing& resolved,
                              const std::vector<int>& class_of_node, int outer_class) {
  PlaneDrawing out;
  out.rotations = resolved.rotations();

  // Group components by the classes their nodes touch.
  std::set<VertexId> comps;
  for (const auto& [v, c] : resolved.component_of()) comps.insert(c);
  std::map<VertexId, std::vector<std::pair<int, int>>> comp_nodes;  // comp -> (node, class)
  for (int f = 0; f < resolved.num_faces(); ++f) {
    VertexId c = resolved.component_of_edge(resolved.face_walk(f).front().edge);
    comp_nodes[c].push_back({f, class_of_node.at(static_cast<std::size_t>(f))});
  }
  for (const VertexId& v : resolved.isolated_vertices()) {
    int n = resolved.node_of_isolated(v);
    comp_nodes[resolved.component_of().at(v)].push_back(
        {n, class_of_node.at(static_cast<std::size_t>(n))});
  }

  auto canonical_ref = [&](int face) {
    DirEdge de = resolved.canonical_dart(face);
    return FaceRef{de.edge, de.forward, FaceSide::Left};
  };

  // Peel: roots sit in the outer class; every other component is anchored to
  // the best face an already-placed component exposes on a shared class.
  std::set<VertexId> placed;
  std::map<int, FaceRef> class_anchor;
  auto expose = [&](const VertexId& c) {
    for (const auto& [node, cls] : comp_nodes.at(c)) {
      if (node >= resolved.num_faces()) continue;  // virtual nodes cannot anchor
      FaceRef ref = canonical_ref(node);
      auto it = class_anchor.find(cls);
      if (it == class_anchor.end() || ref < it->second) class_anchor[cls] = ref;
    }
  };
  for (const VertexId& c : comps) {
    bool is_root = false;
    for (const auto& [node, cls] : comp_nodes.at(c)) {
      if (cls == outer_class) is_root = true;
    }
    if (is_root) {
      placed.insert(c);
      expose(c);
    }
  }
  {
    std::optional<DirEdge> best;
    for (int f = 0; f < resolved.num_faces(); ++f) {
      if (class_of_node.at(static_cast<std::size_t>(f)) != outer_class) continue;
      DirEdge cdart = resolved.canonical_dart(f);
      if (!best || cdart < *best) best = cdart;
    }
    if (best) out.outer_face = FaceRef{best->edge, best->forward, FaceSide::Left};
  }

  bool progress = true;
  while (progress && placed.size() < comps.size()) {
    progress = false;
    for (const VertexId& c : comps) {
      if (placed.count(c)) continue;
      std::optional<FaceRef> anchor;
      for (const auto& [node, cls] : comp_nodes.at(c)) {
        if (cls == outer_class) continue;
        auto it = class_anchor.find(cls);
        if (it != class_anchor.end() && (!anchor || it->second < *anchor)) anchor = it->second;
      }
      if (!anchor) continue;
      out.containment.push_back(ContainmentRecord{c, *anchor, false});
      placed.insert(c);
      expose(c);
      progress = true;
    }
  }
  if (placed.size() != comps.size()) {
    throw InternalError("assemble_drawing: arrangement is not connected through regions");
  }
  return out;
}

}  // namespace pdcross
