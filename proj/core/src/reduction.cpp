#include "pdcross/reduction.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

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

std::vector<VertexId> cycle_route(const Multigraph& g, const std::vector<EdgeId>& cycle) {
  std::map<VertexId, std::vector<VertexId>> adj;
  for (const EdgeId& e : cycle) {
    const Edge& ed = g.edge(e);
    adj[ed.u].push_back(ed.v);
    adj[ed.v].push_back(ed.u);
  }
  VertexId start = adj.begin()->first;
  for (const auto& [v, ns] : adj) {
    if (v < start) start = v;
  }
  if (adj.at(start).size() != 2) throw PreconditionError("cycle edge list is not a cycle");
  std::vector<VertexId> route{start};
  VertexId prev = start;
  VertexId cur = std::min(adj.at(start)[0], adj.at(start)[1]);
  while (cur != start) {
    route.push_back(cur);
    const auto& ns = adj.at(cur);
    if (ns.size() != 2) throw PreconditionError("cycle edge list is not a cycle");
    VertexId nxt = ns[0] == prev ? ns[1] : ns[0];
    prev = cur;
    cur = nxt;
  }
  return route;
}

/// Contract a connected set of drawn vertices to one point: the replacement
/// vertex's rotation concatenates, per blob component, the leaving darts in
/// order along the component's outward boundary; interior faces merge into
/// the surrounding region. Leaving darts attached inside interior faces make
/// the contraction ill-defined and fail loudly.
PlaneDrawing contract_blob(const Multigraph& g, const PlaneDrawing& d,
                           const std::set<VertexId>& blob, const Multigraph& contracted_graph,
                           const VertexId& replacement) {
  ResolvedDrawing res = ResolvedDrawing::resolve(g, d);

  std::set<VertexId> drawn_blob;
  for (const VertexId& v : blob) {
    if (d.rotations.count(v)) drawn_blob.insert(v);
  }
  std::set<EdgeId> blob_edges;
  for (const EdgeId& e : d.drawn_edges()) {
    if (drawn_blob.count(g.edge(e).u) && drawn_blob.count(g.edge(e).v)) blob_edges.insert(e);
  }

  // Region classes after dissolving everything outside the blob: classes
  // correspond to the blob's own faces, everything outside falls into one of
  // them (the outward one, per component).
  UnionFind uf(res.num_nodes() + 1);
  int outer_node = res.num_nodes();  // virtual node for the outer region
  std::map<int, int> region_rep;
  for (int n = 0; n < res.num_nodes(); ++n) {
    auto it = region_rep.find(res.region_of(n));
    if (it == region_rep.end()) {
      region_rep[res.region_of(n)] = n;
    } else {
      uf.merge(n, it->second);
    }
  }
  if (res.outer_region() >= 0) uf.merge(outer_node, region_rep.at(res.outer_region()));
  for (const EdgeId& e : d.drawn_edges()) {
    if (blob_edges.count(e)) continue;
    uf.merge(res.face_of(DirEdge{e, true}), res.face_of(DirEdge{e, false}));
  }

  // Blob-only rotations and the blob-face tracing.
  std::map<VertexId, std::vector<EdgeEnd>> blob_rot;
  for (const VertexId& v : drawn_blob) {
    std::vector<EdgeEnd> r;
    for (const EdgeEnd& ee : res.rotations().at(v)) {
      if (blob_edges.count(ee.edge)) r.push_back(ee);
    }
    blob_rot[v] = std::move(r);
  }
  std::map<EdgeEnd, std::pair<VertexId, int>> pos;
  for (const auto& [v, r] : blob_rot) {
    for (std::size_t i = 0; i < r.size(); ++i) pos[r[i]] = {v, static_cast<int>(i)};
  }

  Multigraph blob_sub = g.edge_subgraph(blob_edges, drawn_blob);
  std::vector<EdgeEnd> merged_rotation;
  for (const auto& comp : blob_sub.components()) {
    std::set<EdgeId> comp_edges;
    for (const EdgeId& e : blob_edges) {
      if (comp.count(g.edge(e).u)) comp_edges.insert(e);
    }
    if (comp_edges.empty()) {
      // a lone blob vertex: its leaving darts keep their own cyclic order
      const VertexId& v = *comp.begin();
      for (const EdgeEnd& ee : res.rotations().at(v)) merged_rotation.push_back(ee);
      continue;
    }
    // trace blob faces of this component; the outward one carries the class
    // of the surrounding region
    std::map<DirEdge, int> face_of;
    std::vector<std::vector<DirEdge>> walks;
    for (const EdgeId& e : comp_edges) {
      for (DirEdge start : {DirEdge{e, true}, DirEdge{e, false}}) {
        if (face_of.count(start)) continue;
        int id = static_cast<int>(walks.size());
        walks.emplace_back();
        DirEdge cur = start;
        do {
          face_of[cur] = id;
          walks.back().push_back(cur);
          const Edge& ed = g.edge(cur.edge);
          VertexId at = cur.forward ? ed.v : ed.u;
          EdgeEnd arr{cur.edge, cur.forward ? 1 : 0};
          const auto& r = blob_rot.at(at);
          auto [pv, pi] = pos.at(arr);
          const EdgeEnd& nxt = r[(static_cast<std::size_t>(pi) + 1) % r.size()];
          cur = DirEdge{nxt.edge, nxt.end == 0};
        } while (!(cur == start));
      }
    }
    // outward walk: its darts' original left faces share the surrounding class
    int surrounding = -1;
    for (const VertexId& v : g.vertices()) {
      if (drawn_blob.count(v) || !res.component_of().count(v)) continue;
      for (int node : res.nodes_at_vertex(v)) surrounding = uf.find(node);
      if (surrounding >= 0) break;
    }
    if (surrounding < 0) surrounding = uf.find(outer_node);
    std::optional<int> outward;
    for (std::size_t wi = 0; wi < walks.size(); ++wi) {
      int cls = uf.find(res.face_of(walks[wi].front()));
      if (cls == surrounding) outward = static_cast<int>(wi);
    }
    if (!outward) {
      // blob fills its whole component and nothing else exists: any face works
      outward = 0;
    }
    // walk the outward boundary; after each arrival, collect leaving darts up
    // to the next blob dart
    std::set<std::pair<EdgeId, int>> emitted;
    for (const DirEdge& de : walks[static_cast<std::size_t>(*outward)]) {
      const Edge& ed = g.edge(de.edge);
      VertexId at = de.forward ? ed.v : ed.u;
      const auto& full = res.rotations().at(at);
      EdgeEnd arr{de.edge, de.forward ? 1 : 0};
      auto it = std::find(full.begin(), full.end(), arr);
      std::size_t start = static_cast<std::size_t>(it - full.begin());
      for (std::size_t off = 1; off < full.size(); ++off) {
        const EdgeEnd& ee = full[(start + off) % full.size()];
        if (blob_edges.count(ee.edge)) break;
        if (emitted.insert({ee.edge, ee.end}).second) merged_rotation.push_back(ee);
      }
    }
    // every leaving dart must sit on the outward boundary
    for (const VertexId& v : comp) {
      for (const EdgeEnd& ee : res.rotations().at(v)) {
        if (!blob_edges.count(ee.edge) && !emitted.count({ee.edge, ee.end})) {
          throw InternalError(
              "contract_region: attachment inside the contracted region's interior face");
        }
      }
    }
  }

  // Contracted drawing: same rotations elsewhere, the merged one at the
  // replacement; edge ids and end slots survive the graph rewiring.
  PlaneDrawing nd;
  for (const auto& [v, rot] : res.rotations()) {
    if (drawn_blob.count(v)) continue;
    nd.rotations[v] = rot;
  }
  nd.rotations[replacement] = merged_rotation;

  if (contracted_graph.edges().empty() || nd.drawn_edges().empty()) {
    return nd;
  }
  PlaneDrawing temp = nd;
  temp.outer_face = FaceRef{*nd.drawn_edges().begin(), true, FaceSide::Left};
  temp.containment.clear();
  ResolvedDrawing rc = ResolvedDrawing::resolve(contracted_graph, temp);

  // interior blob faces dissolve into the surrounding class
  {
    std::optional<int> keep;
    for (const EdgeId& e : blob_edges) {
      int a = res.face_of(DirEdge{e, true});
      if (!keep) keep = uf.find(a);
      uf.merge(a, *keep);
      uf.merge(res.face_of(DirEdge{e, false}), *keep);
    }
    if (keep) {
      // join with whatever surrounds the blob
      for (const VertexId& v : g.vertices()) {
        if (drawn_blob.count(v) || !res.component_of().count(v)) continue;
        uf.merge(*keep, res.nodes_at_vertex(v).front());
        break;
      }
      uf.merge(*keep, outer_node);
    }
  }

  std::vector<int> class_of(static_cast<std::size_t>(rc.num_nodes()), -1);
  for (int f = 0; f < rc.num_faces(); ++f) {
    DirEdge de = rc.face_walk(f).front();
    class_of[static_cast<std::size_t>(f)] = uf.find(res.face_of(de));
  }
  for (const VertexId& v : rc.isolated_vertices()) {
    int node;
    if (v == replacement) {
      node = outer_node;  // fully swallowed component: sits in the open
      // if the blob had faces they all merged with the surrounding class
      if (!blob_edges.empty()) {
        node = res.face_of(DirEdge{*blob_edges.begin(), true});
      }
    } else if (!res.rotations().at(v).empty()) {
      const EdgeEnd& ee = res.rotations().at(v).front();
      node = res.face_of(DirEdge{ee.edge, ee.end == 1});
    } else {
      node = res.node_of_isolated(v);
    }
    class_of[static_cast<std::size_t>(rc.node_of_isolated(v))] = uf.find(node);
  }
  int outer_class = uf.find(outer_node);
  return assemble_drawing(rc, class_of, outer_class);
}

}  // namespace

std::pair<PredrawnGraph, std::map<VertexId, VertexId>> contract_region(
    const PredrawnGraph& p, const std::set<VertexId>& region, const std::vector<EdgeId>& cycle) {
  Multigraph induced = p.graph.induced(region);
  if (!induced.connected()) throw PreconditionError("contract_region: region not connected");

  VertexId v_i = "vI";
  for (int i = 0; p.graph.has_vertex(v_i); ++i) v_i = "vI~" + std::to_string(i);

  // graph-level contraction first: ids and end slots survive
  Multigraph ng;
  for (const VertexId& v : p.graph.vertices()) {
    if (!region.count(v)) ng.add_vertex(v);
  }
  ng.add_vertex(v_i);
  for (Edge e : p.graph.edges()) {
    bool iu = region.count(e.u) != 0, iv = region.count(e.v) != 0;
    if (iu && iv) continue;
    if (iu) e.u = v_i;
    if (iv) e.v = v_i;
    ng.add_edge(e);
  }
  for (const EdgeId& e : cycle) ng.edge_mut(e).uncrossable = true;
  for (const EdgeId& e : ng.incident_edges(v_i)) ng.edge_mut(e).uncrossable = true;

  PredrawnGraph q;
  q.graph = ng;
  q.registry = p.registry;
  bool touches_h = false;
  for (const VertexId& v : region) {
    if (p.predrawn.rotations.count(v)) touches_h = true;
  }
  if (touches_h) {
    // predrawn-level contraction of the region's drawn part
    Multigraph hg = p.graph.edge_subgraph(p.predrawn_edge_set(), p.predrawn_vertex_set());
    Multigraph hc;  // contracted predrawn subgraph, for region resolution
    for (const VertexId& v : hg.vertices()) {
      if (!region.count(v)) hc.add_vertex(v);
    }
    hc.add_vertex(v_i);
    for (Edge e : hg.edges()) {
      bool iu = region.count(e.u) != 0, iv = region.count(e.v) != 0;
      if (iu && iv) continue;
      if (iu) e.u = v_i;
      if (iv) e.v = v_i;
      hc.add_edge(e);
    }
    q.predrawn = contract_blob(hg, p.predrawn, region, hc, v_i);
  } else {
    q.predrawn = p.predrawn;
  }

  std::map<VertexId, VertexId> cmap;
  for (const VertexId& v : region) cmap[v] = v_i;
  ValidationReport rep = validate_predrawn(q);
  if (!rep.ok) {
    std::string what = "contract_region: reduced instance invalid:";
    for (const Violation& v : rep.violations) what += " [" + v.rule + " " + v.element + "]";
    throw InternalError(what);
  }
  return {q, cmap};
}

namespace {

/// The flippability gadget: subdivide a cycle edge with four vertices, pin
/// the triangle-and-apex template on the middle piece, run pendants into the
/// region, and drop a detached reference triangle beside the drawing.
struct Gadget {
  PredrawnGraph probe;
  std::set<VertexId> core;
  VertexId v1, v2, v3, v4, t, i1, i2;
  bool e_predrawn = false;
  std::vector<VertexId> t_corners;
};

Gadget build_gadget(const PredrawnGraph& d, const std::vector<EdgeId>& cycle,
                    const std::set<VertexId>& region) {
  Gadget gd;
  gd.core = d.graph.vertices();
  std::optional<EdgeId> e;
  for (const EdgeId& c : cycle) {
    bool pre = d.graph.edge(c).predrawn;
    bool better = !e || (pre && !d.graph.edge(*e).predrawn) ||
                  (pre == d.graph.edge(*e).predrawn && c < *e);
    if (better) e = c;
  }
  if (!e) throw PreconditionError("is_flippable: empty cycle");
  gd.e_predrawn = d.graph.edge(*e).predrawn;

  std::vector<VertexId> route = cycle_route(d.graph, cycle);
  std::size_t n = route.size();
  // orient e along the route: x = route[xi] is the v1 side
  VertexId eu = d.graph.edge(*e).u, ev = d.graph.edge(*e).v;
  std::size_t xi = 0;
  bool route_forward = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (route[i] == eu && route[(i + 1) % n] == ev) {
      xi = i;
      route_forward = true;
      break;
    }
    if (route[i] == ev && route[(i + 1) % n] == eu) {
      xi = i;
      route_forward = false;
      break;
    }
  }
  VertexId x = route[xi];

  gd.probe = d;
  EdgeId cur = *e;
  VertexId cx = x;
  std::vector<VertexId> vs;
  for (int k = 1; k <= 4; ++k) {
    VertexId mid = "flip~v" + std::to_string(k);
    const Edge before = gd.probe.graph.edge(cur);
    SubdividedEdge se = subdivide_predrawn_edge(gd.probe, cur, mid);
    vs.push_back(mid);
    cur = before.u == cx ? se.second : se.first;
    cx = mid;
  }
  gd.v1 = vs[0];
  gd.v2 = vs[1];
  gd.v3 = vs[2];
  gd.v4 = vs[3];

  // n1 from the first attachment scanning backward from the v1 end, n2
  // scanning forward from the far end
  auto first_attachment = [&](bool toward_far) -> VertexId {
    for (std::size_t k = 0; k < n; ++k) {
      VertexId c = toward_far ? route[(xi + 1 + k) % n] : route[(xi + n - k) % n];
      std::optional<VertexId> best;
      for (const VertexId& nb : d.graph.neighbors(c)) {
        if (region.count(nb) && (!best || nb < *best)) best = nb;
      }
      if (best) return *best;
    }
    throw PreconditionError("is_flippable: region has no attachment on the cycle");
  };
  VertexId n1 = first_attachment(!route_forward);
  VertexId n2 = first_attachment(route_forward);

  gd.t = "flip~t";
  gd.i1 = "flip~i1";
  gd.i2 = "flip~i2";
  gd.t_corners = {"flip~T1", "flip~T2", "flip~T3"};
  for (const VertexId& v : {gd.t, gd.i1, gd.i2}) gd.probe.graph.add_vertex(v);
  for (const VertexId& v : gd.t_corners) gd.probe.graph.add_vertex(v);
  auto add_edge = [&](const EdgeId& id, const VertexId& u, const VertexId& v, bool pre) {
    Edge ne{id, u, v};
    ne.predrawn = pre;
    gd.probe.graph.add_edge(ne);
  };
  add_edge("flip~tv2", gd.t, gd.v2, true);
  add_edge("flip~tv3", gd.t, gd.v3, true);
  add_edge("flip~v2i1", gd.v2, gd.i1, true);
  add_edge("flip~v3i2", gd.v3, gd.i2, false);
  add_edge("flip~i1n1", gd.i1, n1, false);
  add_edge("flip~i2n2", gd.i2, n2, false);
  add_edge("flip~Ta", gd.t_corners[0], gd.t_corners[1], true);
  add_edge("flip~Tb", gd.t_corners[1], gd.t_corners[2], true);
  add_edge("flip~Tc", gd.t_corners[2], gd.t_corners[0], true);
  return gd;
}

EdgeId piece_between(const Multigraph& g, const VertexId& a, const VertexId& b) {
  for (const EdgeId& e : g.incident_edges(a)) {
    if (g.edge(e).other(a) == b) return e;
  }
  throw InternalError("gadget pieces missing");
}

PredrawnGraph typed_probe(const Gadget& gd, int type) {
  PredrawnGraph p = gd.probe;
  EdgeId e_v1v2 = piece_between(p.graph, gd.v1, gd.v2);
  EdgeId e_v2v3 = piece_between(p.graph, gd.v2, gd.v3);
  EdgeId e_v3v4 = piece_between(p.graph, gd.v3, gd.v4);
  if (!gd.e_predrawn) {
    for (const EdgeId& e : {e_v1v2, e_v2v3, e_v3v4}) p.graph.edge_mut(e).predrawn = true;
  }
  auto end_at = [&](const EdgeId& e, const VertexId& v) {
    return EdgeEnd{e, p.graph.edge(e).u == v ? 0 : 1};
  };
  std::vector<EdgeEnd> r2 = {end_at(e_v1v2, gd.v2), end_at("flip~tv2", gd.v2),
                             end_at(e_v2v3, gd.v2), end_at("flip~v2i1", gd.v2)};
  std::vector<EdgeEnd> r3 = {end_at(e_v2v3, gd.v3), end_at("flip~tv3", gd.v3),
                             end_at(e_v3v4, gd.v3)};
  std::vector<EdgeEnd> rt = {end_at("flip~tv3", gd.t), end_at("flip~tv2", gd.t)};
  if (type == 2) {
    std::reverse(r2.begin(), r2.end());
    std::reverse(r3.begin(), r3.end());
    std::reverse(rt.begin(), rt.end());
  }
  p.predrawn.rotations[gd.v2] = r2;
  p.predrawn.rotations[gd.v3] = r3;
  p.predrawn.rotations[gd.t] = rt;
  p.predrawn.rotations[gd.i1] = {end_at("flip~v2i1", gd.i1)};
  if (!gd.e_predrawn) {
    p.predrawn.rotations[gd.v1] = {end_at(e_v1v2, gd.v1)};
    p.predrawn.rotations[gd.v4] = {end_at(e_v3v4, gd.v4)};
  }
  p.predrawn.rotations[gd.t_corners[0]] = {end_at("flip~Tc", gd.t_corners[0]),
                                           end_at("flip~Ta", gd.t_corners[0])};
  p.predrawn.rotations[gd.t_corners[1]] = {end_at("flip~Ta", gd.t_corners[1]),
                                           end_at("flip~Tb", gd.t_corners[1])};
  p.predrawn.rotations[gd.t_corners[2]] = {end_at("flip~Tb", gd.t_corners[2]),
                                           end_at("flip~Tc", gd.t_corners[2])};
  if (!p.predrawn.outer_face) {
    p.predrawn.outer_face = FaceRef{"flip~Ta", true, FaceSide::Right};
  }
  return p;
}

}  // namespace

Flippability is_flippable(const PredrawnGraph& d, const std::vector<EdgeId>& cycle,
                          const std::set<VertexId>& region, const ExtensionOptions& opts) {
  Gadget gd = build_gadget(d, cycle, region);
  Flippability out;
  ExtensionOptions o = opts;
  o.budget.max_vertices =
      std::max<int>(o.budget.max_vertices, static_cast<int>(gd.probe.graph.num_vertices()));

  for (int type : {1, 2}) {
    PredrawnGraph probe = typed_probe(gd, type);
    std::vector<PredrawnGraph> placements;
    if (gd.e_predrawn || d.predrawn.rotations.empty()) {
      placements.push_back(probe);
    } else {
      ResolvedDrawing res = ResolvedDrawing::resolve(d.graph, d.predrawn);
      std::map<int, FaceRef> anchor;
      for (int f = 0; f < res.num_faces(); ++f) {
        int r = res.region_of(f);
        DirEdge de = res.canonical_dart(f);
        FaceRef ref{de.edge, de.forward, FaceSide::Left};
        auto it = anchor.find(r);
        if (it == anchor.end() || ref < it->second) anchor[r] = ref;
      }
      for (const auto& [r, ref] : anchor) {
        PredrawnGraph placed = probe;
        placed.predrawn.containment.push_back({gd.v1, ref, false});
        placements.push_back(placed);
      }
      if (placements.empty()) placements.push_back(probe);
    }
    for (PredrawnGraph& placed : placements) {
      if (!validate_predrawn(placed).ok) continue;
      auto drawing = extend_planar(placed, o);
      if (!drawing) continue;
      DrawingWitness w = witness_for_plane_drawing(placed.graph, *drawing);
      ElementSubset core;
      core.vertices = gd.core;
      for (const Edge& e : d.graph.edges()) core.edges.insert(e.id);
      DrawingWitness r = restrict_witness(w, core);
      if (type == 1) {
        out.type1 = true;
        out.type1_drawing = r.drawing;
      } else {
        out.type2 = true;
        out.type2_drawing = r.drawing;
      }
      break;
    }
  }
  out.flippable = out.type1 && out.type2;
  return out;
}

namespace {

PredrawnGraph region_cycle_subinstance(const PredrawnGraph& p, const std::set<VertexId>& region,
                                       const std::vector<EdgeId>& cycle) {
  std::set<VertexId> keep = region;
  for (const EdgeId& e : cycle) {
    keep.insert(p.graph.edge(e).u);
    keep.insert(p.graph.edge(e).v);
  }
  std::set<EdgeId> edges;
  for (const Edge& e : p.graph.edges()) {
    if ((keep.count(e.u) && keep.count(e.v)) || e.predrawn) edges.insert(e.id);
  }
  std::set<VertexId> vertices = keep;
  for (const VertexId& v : p.predrawn.drawn_vertices()) vertices.insert(v);
  PredrawnGraph out;
  out.graph = p.graph.edge_subgraph(edges, vertices);
  out.predrawn = p.predrawn;
  out.registry = p.registry;
  return out;
}

}  // namespace

ReductionOutcome apply_reduction(const PredrawnGraph& p, const std::set<VertexId>& region,
                                 const std::vector<EdgeId>& cycle, const ExtensionOptions& opts) {
  PredrawnGraph d = region_cycle_subinstance(p, region, cycle);
  ExtensionOptions o = opts;
  o.budget.max_vertices =
      std::max<int>(o.budget.max_vertices, static_cast<int>(d.graph.num_vertices()) + 12);

  auto wa = extend_planar(d, o);
  if (!wa) {
    return ReductionOutcome{false, std::nullopt};
  }

  Flippability before = is_flippable(d, cycle, region, o);

  auto [contracted, cmap] = contract_region(p, region, cycle);
  VertexId v_i = cmap.begin()->second;

  ReductionStep step;
  step.region = region;
  step.cycle = cycle;
  step.original = p;
  step.contraction = cmap;
  step.contracted_vertex = v_i;

  if (before.flippable) {
    step.kind = ReductionCase::ContractC;
    step.reduced = contracted;
    return ReductionOutcome{true, step};
  }

  PredrawnGraph d_after = region_cycle_subinstance(contracted, {v_i}, cycle);
  Flippability after = is_flippable(d_after, cycle, {v_i}, o);
  if (!after.flippable) {
    step.kind = ReductionCase::ContractD;
    step.reduced = contracted;
    return ReductionOutcome{true, step};
  }

  // Case e: the case-a witness, contracted, gives the cyclic order of the
  // region's attachments; try corner assignments until the probes pin the
  // cycle again. When the witness realizes the mirror image of the predrawn
  // drawing, use its reflection so the orders line up.
  PlaneDrawing wa_drawing = *wa;
  if (!d.predrawn.rotations.empty()) {
    DrawingWitness w_tmp = witness_for_plane_drawing(d.graph, wa_drawing);
    ElementSubset hs{d.predrawn.drawn_vertices(), d.predrawn.drawn_edges()};
    DrawingWitness rh = restrict_witness(w_tmp, hs);
    EquivalenceWitness eqw;
    if (!drawings_equivalent(rh.plan_graph, rh.drawing, d.predrawn, &eqw)) {
      throw InternalError("apply_reduction: case-a witness does not restrict to the drawing");
    }
    if (eqw.mirrored) wa_drawing = reflect(wa_drawing);
  }

  Multigraph d_contracted_graph;
  {
    for (const VertexId& v : d.graph.vertices()) {
      if (!region.count(v)) d_contracted_graph.add_vertex(v);
    }
    d_contracted_graph.add_vertex(v_i);
    for (Edge e : d.graph.edges()) {
      bool iu = region.count(e.u) != 0, iv = region.count(e.v) != 0;
      if (iu && iv) continue;
      if (iu) e.u = v_i;
      if (iv) e.v = v_i;
      d_contracted_graph.add_edge(e);
    }
  }
  PlaneDrawing contracted_wa =
      contract_blob(d.graph, wa_drawing, region, d_contracted_graph, v_i);
  std::vector<EdgeEnd> sigma = contracted_wa.rotations.at(v_i);
  std::vector<VertexId> neighbours;
  for (const EdgeEnd& ee : sigma) {
    neighbours.push_back(d_contracted_graph.edge(ee.edge).other(v_i));
  }

  std::vector<VertexId> nset;
  for (const VertexId& v : neighbours) {
    if (std::find(nset.begin(), nset.end(), v) == nset.end()) nset.push_back(v);
  }
  std::sort(nset.begin(), nset.end());
  if (nset.size() < 3) {
    throw InternalError("apply_reduction: case e with fewer than three attachments");
  }

  int n = static_cast<int>(sigma.size());
  for (const VertexId& u1 : nset) {
    for (const VertexId& u2 : nset) {
      for (const VertexId& u3 : nset) {
        if (u1 == u2 || u2 == u3 || u1 == u3) continue;
        auto pos_of = [&](const VertexId& u) {
          for (std::size_t i = 0; i < neighbours.size(); ++i) {
            if (neighbours[i] == u) return static_cast<int>(i);
          }
          return -1;
        };
        int p1 = pos_of(u1), p2 = pos_of(u2), p3 = pos_of(u3);
        auto corner_of = [&](int posn) {
          auto in_arc = [&](int from, int to) {
            for (int k = from; k != to; k = (k + 1) % n) {
              if (k == posn) return true;
            }
            return false;
          };
          if (in_arc(p3, p1)) return 0;
          if (in_arc(p1, p2)) return 1;
          return 2;
        };

        PredrawnGraph cand = contracted;
        std::vector<VertexId> corners = {"tI~1", "tI~2", "tI~3"};
        for (const VertexId& c : corners) cand.graph.add_vertex(c);
        std::array<std::vector<EdgeEnd>, 3> corner_rot;
        for (int i = 0; i < n; ++i) {
          const EdgeEnd& ee = sigma[static_cast<std::size_t>(i)];
          int c = corner_of(i);
          Edge& ed = cand.graph.edge_mut(ee.edge);
          if (ed.u == v_i) {
            ed.u = corners[static_cast<std::size_t>(c)];
          } else {
            ed.v = corners[static_cast<std::size_t>(c)];
          }
          corner_rot[static_cast<std::size_t>(c)].push_back(ee);
        }
        cand.graph.remove_vertex(v_i);
        for (auto [id, a, b] : {std::tuple{"tI~a", 0, 1}, {"tI~b", 1, 2}, {"tI~c", 2, 0}}) {
          Edge t{id, corners[static_cast<std::size_t>(a)], corners[static_cast<std::size_t>(b)]};
          t.predrawn = true;
          t.uncrossable = true;
          cand.graph.add_edge(t);
        }
        for (const VertexId& c : corners) {
          for (const EdgeId& e : cand.graph.incident_edges(c)) {
            cand.graph.edge_mut(e).uncrossable = true;
          }
        }

        bool v_i_predrawn = cand.predrawn.rotations.count(v_i) != 0;
        std::vector<EdgeEnd> h_rot_vi;
        if (v_i_predrawn) {
          h_rot_vi = cand.predrawn.rotations.at(v_i);
          cand.predrawn.rotations.erase(v_i);
        }
        auto corner_end = [&](const EdgeId& id, const VertexId& at) {
          return EdgeEnd{id, cand.graph.edge(id).u == at ? 0 : 1};
        };
        for (int c = 0; c < 3; ++c) {
          std::vector<EdgeEnd> rot;
          EdgeId prev_side = c == 0 ? "tI~c" : (c == 1 ? "tI~a" : "tI~b");
          EdgeId next_side = c == 0 ? "tI~a" : (c == 1 ? "tI~b" : "tI~c");
          rot.push_back(corner_end(prev_side, corners[static_cast<std::size_t>(c)]));
          for (const EdgeEnd& ee : corner_rot[static_cast<std::size_t>(c)]) {
            if (std::find(h_rot_vi.begin(), h_rot_vi.end(), ee) != h_rot_vi.end()) {
              rot.push_back(ee);
            }
          }
          rot.push_back(corner_end(next_side, corners[static_cast<std::size_t>(c)]));
          cand.predrawn.rotations[corners[static_cast<std::size_t>(c)]] = rot;
        }
        if (!v_i_predrawn) {
          ResolvedDrawing rc = ResolvedDrawing::resolve(d_contracted_graph, contracted_wa);
          std::optional<FaceRef> host;
          for (int node : rc.nodes_at_vertex(v_i)) {
            if (node >= rc.num_faces()) continue;
            for (const DirEdge& de : rc.face_walk(node)) {
              if (cand.predrawn.drawn_edges().count(de.edge)) {
                host = FaceRef{de.edge, de.forward, FaceSide::Left};
                break;
              }
            }
            if (host) break;
          }
          if (host) cand.predrawn.containment.push_back({corners[0], *host, false});
        }
        if (!validate_predrawn(cand).ok) continue;

        PredrawnGraph d_cand =
            region_cycle_subinstance(cand, {corners[0], corners[1], corners[2]}, cycle);
        Flippability probe;
        try {
          probe = is_flippable(d_cand, cycle, {corners[0], corners[1], corners[2]}, o);
        } catch (const PreconditionError&) {
          continue;
        }
        if (!probe.flippable) {
          step.kind = ReductionCase::TriangleE;
          step.reduced = cand;
          step.triangle = corners;
          step.triple = {u1, u2, u3};
          for (auto& [from, to] : step.contraction) to = corners[0];
          return ReductionOutcome{true, step};
        }
      }
    }
  }
  throw InternalError(
      "apply_reduction: case e found no orienting triple; the region/cycle pair is not valid");
}

DrawingWitness lift_drawing(const ReductionStep& step, const DrawingWitness& reduced_witness,
                            const ExtensionOptions& opts) {
  const PredrawnGraph& p = step.original;
  std::set<VertexId> replaced;
  if (step.kind == ReductionCase::TriangleE) {
    replaced.insert(step.triangle.begin(), step.triangle.end());
  } else {
    replaced.insert(step.contracted_vertex);
  }

  Multigraph reduced_orig = original_graph(reduced_witness);
  ElementSubset frozen;
  for (const VertexId& v : reduced_orig.vertices()) {
    if (!replaced.count(v)) frozen.vertices.insert(v);
  }
  std::set<EdgeId> rewired;
  for (const Edge& e : reduced_orig.edges()) {
    bool ru = replaced.count(e.u) != 0, rv = replaced.count(e.v) != 0;
    if (ru || rv) {
      if (p.graph.has_edge(e.id)) rewired.insert(e.id);  // triangle edges vanish
    } else {
      frozen.edges.insert(e.id);
    }
  }
  DrawingWitness frozen_w = restrict_witness(reduced_witness, frozen);

  PredrawnGraph lift;
  lift.graph = frozen_w.plan_graph;
  for (const Edge& e : frozen_w.plan_graph.edges()) lift.graph.edge_mut(e.id).predrawn = true;
  lift.predrawn = frozen_w.drawing;

  for (const VertexId& v : step.region) lift.graph.add_vertex(v);
  std::set<VertexId> region_h;
  for (const Edge& e : p.graph.edges()) {
    if (step.region.count(e.u) && step.region.count(e.v)) lift.graph.add_edge(e);
  }
  for (const VertexId& v : step.region) {
    auto it = p.predrawn.rotations.find(v);
    if (it != p.predrawn.rotations.end()) {
      lift.predrawn.rotations[v] = it->second;
      region_h.insert(v);
    }
  }

  std::vector<std::pair<VertexId, EdgeId>> pinned;  // (stub vertex, original id)
  for (const EdgeId& id : rewired) {
    const Edge& oe = p.graph.edge(id);
    Edge ne = oe;
    lift.graph.add_edge(ne);
    bool u_in_region = step.region.count(oe.u) != 0;
    VertexId anchor = u_in_region ? oe.v : oe.u;
    if (oe.predrawn) {
      VertexId mid = "lift~" + id;
      SubdividedEdge se = subdivide_predrawn_edge(lift, id, mid);
      EdgeId outer_piece = u_in_region ? se.second : se.first;
      EdgeId inner_piece = u_in_region ? se.first : se.second;
      lift.graph.edge_mut(inner_piece).predrawn = false;
      lift.graph.edge_mut(outer_piece).predrawn = true;
      // splice the stub into the frozen rotation where the reduced witness
      // had the edge: right before its surviving successor dart
      const auto& red_rot = reduced_witness.drawing.rotations.at(anchor);
      auto& rot = lift.predrawn.rotations.at(anchor);
      std::size_t at = red_rot.size();
      for (std::size_t i = 0; i < red_rot.size(); ++i) {
        if (original_of(red_rot[i].edge) == id) at = i;
      }
      if (at == red_rot.size()) {
        throw InternalError("lift_drawing: pinned edge missing in the reduced rotation");
      }
      EdgeEnd stub{outer_piece, lift.graph.edge(outer_piece).u == anchor ? 0 : 1};
      bool inserted = false;
      for (std::size_t off = 1; off <= red_rot.size() && !inserted; ++off) {
        EdgeId succ = red_rot[(at + off) % red_rot.size()].edge;
        for (std::size_t j = 0; j < rot.size(); ++j) {
          if (original_of(rot[j].edge) == original_of(succ)) {
            rot.insert(rot.begin() + static_cast<long>(j), stub);
            inserted = true;
            break;
          }
        }
      }
      if (!inserted) rot.push_back(stub);
      lift.predrawn.rotations[mid] = {
          EdgeEnd{outer_piece, lift.graph.edge(outer_piece).u == mid ? 0 : 1}};
      pinned.push_back({mid, id});
    } else {
      lift.graph.edge_mut(id).predrawn = false;
    }
  }

  if (!region_h.empty()) {
    ResolvedDrawing rres =
        ResolvedDrawing::resolve(reduced_witness.plan_graph, reduced_witness.drawing);
    std::optional<FaceRef> host;
    for (const VertexId& rv : replaced) {
      if (!rres.component_of().count(rv)) continue;
      for (int node : rres.nodes_at_vertex(rv)) {
        if (node >= rres.num_faces()) continue;
        for (const DirEdge& de : rres.face_walk(node)) {
          if (lift.predrawn.drawn_edges().count(de.edge)) {
            host = FaceRef{de.edge, de.forward, FaceSide::Left};
            break;
          }
        }
        if (host) break;
      }
      if (host) break;
    }
    std::set<VertexId> anchored;
    for (const ContainmentRecord& rec : p.predrawn.containment) {
      if (region_h.count(rec.component) &&
          lift.predrawn.drawn_edges().count(rec.host_face.edge)) {
        lift.predrawn.containment.push_back(rec);
        anchored.insert(rec.component);
      }
    }
    if (host) {
      std::set<EdgeId> rhe;
      for (const Edge& e : lift.graph.edges()) {
        if (e.predrawn && step.region.count(e.u) && step.region.count(e.v)) rhe.insert(e.id);
      }
      Multigraph hr = lift.graph.edge_subgraph(rhe, region_h);
      for (const auto& comp : hr.components()) {
        bool has = false;
        for (const VertexId& v : comp) {
          if (anchored.count(v)) has = true;
        }
        if (!has) lift.predrawn.containment.push_back({*comp.begin(), *host, false});
      }
    }
  }

  ValidationReport rep = validate_predrawn(lift);
  if (!rep.ok) {
    std::string what = "lift_drawing: lift instance invalid:";
    for (const Violation& v : rep.violations) what += " [" + v.rule + " " + v.element + "]";
    throw InternalError(what);
  }
  ExtensionOptions o = opts;
  o.budget.max_vertices =
      std::max<int>(o.budget.max_vertices, static_cast<int>(lift.graph.num_vertices()));
  auto drawing = extend_planar(lift, o);
  if (!drawing) {
    throw InternalError("lift_drawing: the guaranteed replacement drawing does not exist");
  }

  DrawingWitness out;
  out.plan_graph = lift.graph;
  out.drawing = *drawing;
  for (const auto& [mid, orig_id] : pinned) {
    std::vector<EdgeId> inc = out.plan_graph.incident_edges(mid);
    if (inc.size() != 2) throw InternalError("lift_drawing: stub vertex degree changed");
    const Edge ea = out.plan_graph.edge(inc[0]);
    const Edge eb = out.plan_graph.edge(inc[1]);
    Edge merged = ea;
    merged.id = orig_id;
    merged.u = ea.other(mid);
    merged.v = eb.other(mid);
    out.plan_graph.remove_edge(inc[0]);
    out.plan_graph.remove_edge(inc[1]);
    out.plan_graph.remove_vertex(mid);
    out.plan_graph.add_edge(merged);
    auto fix_rot = [&](const VertexId& at, const EdgeId& old_piece) {
      auto it = out.drawing.rotations.find(at);
      if (it == out.drawing.rotations.end()) return;
      for (EdgeEnd& ee : it->second) {
        if (ee.edge == old_piece) ee = EdgeEnd{merged.id, merged.u == at ? 0 : 1};
      }
    };
    fix_rot(merged.u, inc[0]);
    fix_rot(merged.u, inc[1]);
    fix_rot(merged.v, inc[0]);
    fix_rot(merged.v, inc[1]);
    out.drawing.rotations.erase(mid);
    auto fix_ref = [&](FaceRef& ref) {
      if (ref.edge == inc[0] || ref.edge == inc[1]) ref.edge = merged.id;
    };
    if (out.drawing.outer_face) fix_ref(*out.drawing.outer_face);
    for (auto& recd : out.drawing.containment) fix_ref(recd.host_face);
  }
  out.crossings = reduced_witness.crossings;
  for (const Edge& e : out.plan_graph.edges()) {
    EdgeId orig = original_of(e.id);
    if (step.original.graph.has_edge(orig)) {
      Edge& me = out.plan_graph.edge_mut(e.id);
      const Edge& oe = step.original.graph.edge(orig);
      me.predrawn = oe.predrawn;
      me.uncrossable = oe.uncrossable;
      me.weight = oe.weight;
    }
  }
  return out;
}

std::optional<std::pair<std::set<VertexId>, std::vector<EdgeId>>> find_candidate_region(
    const PredrawnGraph& p, const ExtensionOptions& opts) {
  const Multigraph& g = p.graph;
  std::int64_t budget = 0;
  std::vector<VertexId> vs(g.vertices().begin(), g.vertices().end());
  std::optional<std::pair<std::set<VertexId>, std::vector<EdgeId>>> found;
  auto edge_between = [&](const VertexId& a, const VertexId& b) -> EdgeId {
    std::optional<EdgeId> best;
    for (const EdgeId& e : g.incident_edges(a)) {
      if (g.edge(e).other(a) == b && (!best || e < *best)) best = e;
    }
    return *best;
  };
  for (const VertexId& start : vs) {
    if (found) break;
    std::vector<VertexId> path{start};
    std::set<VertexId> on_path{start};
    std::function<void(const VertexId&)> dfs = [&](const VertexId& cur) {
      if (found) return;
      if (++budget > opts.budget.max_candidates) {
        throw BudgetExceededError("find_candidate_region: cycle budget");
      }
      for (const VertexId& nxt : g.neighbors(cur)) {
        if (found) return;
        if (nxt == start && path.size() >= 4) {
          if (path[1] > path.back()) continue;
          std::set<VertexId> cyc(path.begin(), path.end());
          std::set<VertexId> rest_vs;
          for (const VertexId& v : g.vertices()) {
            if (!cyc.count(v)) rest_vs.insert(v);
          }
          Multigraph rest = g.induced(rest_vs);
          for (const auto& comp : rest.components()) {
            if (comp.size() < 6) continue;
            bool attached_ok = true;
            for (const VertexId& v : comp) {
              for (const VertexId& nb : g.neighbors(v)) {
                if (!comp.count(nb) && !cyc.count(nb)) attached_ok = false;
              }
            }
            if (!attached_ok) continue;
            std::vector<EdgeId> cyc_edges;
            for (std::size_t i = 0; i < path.size(); ++i) {
              cyc_edges.push_back(edge_between(path[i], path[(i + 1) % path.size()]));
            }
            found = {comp, cyc_edges};
            return;
          }
          continue;
        }
        if (nxt <= start || on_path.count(nxt)) continue;
        path.push_back(nxt);
        on_path.insert(nxt);
        dfs(nxt);
        path.pop_back();
        on_path.erase(nxt);
      }
    };
    dfs(start);
  }
  return found;
}

std::string serialize_reduction_step(const ReductionStep& step) {
  std::ostringstream out;
  out << "reduce case=";
  switch (step.kind) {
    case ReductionCase::InfeasibleA:
      out << "a";
      break;
    case ReductionCase::ContractC:
      out << "c";
      break;
    case ReductionCase::ContractD:
      out << "d";
      break;
    case ReductionCase::TriangleE:
      out << "e";
      break;
  }
  out << " I=";
  bool first = true;
  for (const VertexId& v : step.region) {
    out << (first ? "" : ",") << v;
    first = false;
  }
  out << " C=";
  first = true;
  for (const EdgeId& e : step.cycle) {
    out << (first ? "" : ",") << e;
    first = false;
  }
  if (step.kind == ReductionCase::TriangleE) {
    out << " triple=" << step.triple[0] << "," << step.triple[1] << "," << step.triple[2];
  } else if (!step.contracted_vertex.empty()) {
    out << " vI=" << step.contracted_vertex;
  }
  return out.str();
}

}  // namespace pdcross
