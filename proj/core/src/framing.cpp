#include "pdcross/framing.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "pdcross/io.hpp"

namespace pdcross {

namespace {

Multigraph predrawn_subgraph(const PredrawnGraph& p) {
  return p.graph.edge_subgraph(p.predrawn_edge_set(), p.predrawn_vertex_set());
}

// Drawing-under-construction for Step 1.
struct DState {
  Multigraph graph;      // current D; every edge counts as drawn
  PlaneDrawing drawing;  // full drawing of D
  std::vector<Framing::ConnectorEdge> connectors;
};

DState initial_dstate(const PredrawnGraph& p) {
  DState s;
  Multigraph h = predrawn_subgraph(p);
  for (const VertexId& v : h.vertices()) s.graph.add_vertex(v);
  for (Edge e : h.edges()) {
    e.predrawn = true;
    s.graph.add_edge(e);
  }
  s.drawing = p.predrawn;
  return s;
}

PredrawnGraph dstate_plus_edges(const DState& s, const std::vector<Edge>& extra) {
  PredrawnGraph q;
  q.graph = s.graph;
  for (Edge e : extra) {
    e.predrawn = false;
    q.graph.add_edge(e);
  }
  q.predrawn = s.drawing;
  return q;
}

DState absorb(const DState& s, const std::vector<Edge>& extra, const PlaneDrawing& extended,
              bool from_g) {
  DState out;
  out.graph = s.graph;
  out.connectors = s.connectors;
  for (Edge e : extra) {
    e.predrawn = true;
    out.graph.add_edge(e);
    out.connectors.push_back(Framing::ConnectorEdge{e.id, e.u, e.v, from_g});
  }
  out.drawing = extended;
  return out;
}

/// Canonical Step 1: instance edges joining components first (smallest id),
/// then the face-fan rule at the smallest eligible vertex.
DState run_step1_canonical(const PredrawnGraph& p, DState s, const ExtensionOptions& opts) {
  int fresh = 0;
  while (!s.graph.connected()) {
    auto comp = s.graph.component_index();
    bool advanced = false;
    for (const Edge& e : p.graph.edges()) {
      if (s.graph.has_edge(e.id)) continue;
      if (!s.graph.has_vertex(e.u) || !s.graph.has_vertex(e.v)) continue;
      if (comp.at(e.u) == comp.at(e.v)) continue;
      PredrawnGraph q = dstate_plus_edges(s, {e});
      ExtensionOptions o = opts;
      o.budget.max_vertices =
          std::max<int>(o.budget.max_vertices, static_cast<int>(q.graph.num_vertices()));
      if (auto d = extend_planar(q, o)) {
        s = absorb(s, {e}, *d, true);
        advanced = true;
        break;
      }
    }
    if (advanced) continue;

    // Fan rule: a region incident to more than one component hosts a star
    // from its smallest vertex to one vertex of every other component there.
    ResolvedDrawing res = ResolvedDrawing::resolve(s.graph, s.drawing);
    std::map<int, std::map<VertexId, VertexId>> region_comps;
    auto note = [&](int region, const VertexId& v) {
      VertexId c = res.component_of().at(v);
      auto& slot = region_comps[region];
      auto it = slot.find(c);
      if (it == slot.end() || v < it->second) slot[c] = v;
    };
    for (int f = 0; f < res.num_faces(); ++f) {
      for (const DirEdge& de : res.face_walk(f)) {
        const Edge& e = s.graph.edge(de.edge);
        note(res.region_of(f), e.u);
        note(res.region_of(f), e.v);
      }
    }
    for (const VertexId& v : res.isolated_vertices()) {
      note(res.region_of(res.node_of_isolated(v)), v);
    }
    std::optional<int> best_region;
    for (const auto& [region, comps] : region_comps) {
      if (comps.size() < 2) continue;
      if (!best_region || res.region_signature(region) < res.region_signature(*best_region)) {
        best_region = region;
      }
    }
    if (!best_region) {
      throw InternalError("build_framing: disconnected drawing with no shared region");
    }
    const auto& comps = region_comps.at(*best_region);
    VertexId v;
    {
      std::optional<VertexId> smallest;
      for (const auto& [c, m] : comps) {
        if (!smallest || m < *smallest) smallest = m;
      }
      v = *smallest;
    }
    std::vector<Edge> star;
    for (const auto& [c, m] : comps) {
      if (c == res.component_of().at(v)) continue;
      Edge e;
      e.id = "cn~" + std::to_string(fresh++);
      e.u = v;
      e.v = m;
      star.push_back(e);
    }
    PredrawnGraph q = dstate_plus_edges(s, star);
    ExtensionOptions o = opts;
    o.budget.max_vertices =
        std::max<int>(o.budget.max_vertices, static_cast<int>(q.graph.num_vertices()));
    auto d = extend_planar(q, o);
    if (!d) throw InternalError("build_framing: fan star not insertable");
    s = absorb(s, star, *d, false);
  }
  return s;
}

/// Every Step-1 run, for extended framings: single synthetic connector edges
/// between components, all planar insertions of each, until connected.
void run_step1_all(const DState& s, const ExtensionOptions& opts,
                   std::vector<DState>& out, std::int64_t cap) {
  if (s.graph.connected()) {
    // drop runs equal to an already-collected one (same connector set and an
    // equivalent drawing)
    for (const DState& seen : out) {
      if (!(seen.graph == s.graph)) continue;
      if (drawings_equivalent(s.graph, seen.drawing, s.drawing)) return;
    }
    out.push_back(s);
    if (static_cast<std::int64_t>(out.size()) > cap) {
      throw BudgetExceededError("enumerate_extended_framings: step-1 budget");
    }
    return;
  }
  auto comp = s.graph.component_index();
  VertexId anchor_comp = comp.begin()->second;
  for (const VertexId& u : s.graph.vertices()) {
    if (comp.at(u) != anchor_comp) continue;
    for (const VertexId& w : s.graph.vertices()) {
      if (comp.at(w) == anchor_comp) continue;
      Edge e;
      e.id = "cn:" + u + ":" + w;  // canonical per endpoint pair
      e.u = u;
      e.v = w;
      PredrawnGraph q = dstate_plus_edges(s, {e});
      ExtensionOptions o = opts;
      o.budget.max_vertices =
          std::max<int>(o.budget.max_vertices, static_cast<int>(q.graph.num_vertices()));
      std::vector<DState> next_states;
      for (const PlaneDrawing& d : all_planar_extensions(q, 64, o)) {
        DState ns = absorb(s, {e}, d, false);
        bool dup = false;
        for (const DState& seen : next_states) {
          if (drawings_equivalent(ns.graph, seen.drawing, ns.drawing)) {
            dup = true;
            break;
          }
        }
        if (!dup) next_states.push_back(std::move(ns));
      }
      for (const DState& ns : next_states) run_step1_all(ns, opts, out, cap);
    }
  }
}

VertexId strand_vertex(const EdgeId& f, int j, int k) {
  return f + "~t" + std::to_string(j) + "_" + std::to_string(k);
}
EdgeId strand_edge(const EdgeId& f, int j, int k) {
  return f + "~s" + std::to_string(j) + "_" + std::to_string(k);
}
EdgeId cycle_edge_id(const VertexId& v, int k) {
  return "fc~" + v + "~" + std::to_string(k);
}

/// Steps 2-4: strands, framing cycles, union with the instance graph.
Framing frame_from_dstate(const PredrawnGraph& source, const DState& s) {
  Framing fr;
  fr.source = source;
  fr.connector_edges = s.connectors;

  ResolvedDrawing res = ResolvedDrawing::resolve(s.graph, s.drawing);
  const auto& rot = res.rotations();

  Multigraph frame;
  PlaneDrawing fd;
  for (const VertexId& v : s.graph.vertices()) frame.add_vertex(v);

  for (const Edge& f : s.graph.edges()) {
    std::array<std::vector<EdgeId>, 3> triplet;
    for (int j = 0; j < 3; ++j) {
      VertexId a = strand_vertex(f.id, j, 1);
      VertexId b = strand_vertex(f.id, j, 2);
      frame.add_vertex(a);
      frame.add_vertex(b);
      Edge e0{strand_edge(f.id, j, 0), f.u, a};
      Edge e1{strand_edge(f.id, j, 1), a, b};
      Edge e2{strand_edge(f.id, j, 2), b, f.v};
      frame.add_edge(e0);
      frame.add_edge(e1);
      frame.add_edge(e2);
      triplet[static_cast<std::size_t>(j)] = {e0.id, e1.id, e2.id};
    }
    fr.framing_triplets[f.id] = triplet;
  }

  // Path-neighbour fans around D-vertices, in drawing order. At f.u the three
  // strands sit clockwise 0,1,2; seen from f.v they arrive reversed.
  std::map<VertexId, std::vector<std::pair<EdgeId, VertexId>>> fan;
  for (const VertexId& v : s.graph.vertices()) {
    std::vector<std::pair<EdgeId, VertexId>> list;
    auto rit = rot.find(v);
    if (rit != rot.end()) {
      for (const EdgeEnd& ee : rit->second) {
        bool at_u = ee.end == 0;
        for (int idx = 0; idx < 3; ++idx) {
          int j = at_u ? idx : 2 - idx;
          list.push_back({strand_edge(ee.edge, j, at_u ? 0 : 2),
                          strand_vertex(ee.edge, j, at_u ? 1 : 2)});
        }
      }
    }
    fan[v] = std::move(list);
  }

  for (const VertexId& v : s.graph.vertices()) {
    const auto& list = fan.at(v);
    int d = static_cast<int>(list.size());
    std::vector<EdgeId> cyc;
    if (d >= 2) {
      for (int k = 0; k < d; ++k) {
        EdgeId ce = cycle_edge_id(v, k);
        frame.add_edge(Edge{ce, list[static_cast<std::size_t>(k)].second,
                            list[static_cast<std::size_t>((k + 1) % d)].second});
        cyc.push_back(ce);
      }
    }
    fr.framing_cycles[v] = cyc;

    std::vector<EdgeEnd> vr;
    for (const auto& [se, n] : list) {
      vr.push_back(EdgeEnd{se, frame.edge(se).u == v ? 0 : 1});
    }
    fd.rotations[v] = std::move(vr);

    // First-layer internals: clockwise [toward v, previous cycle edge, away,
    // next cycle edge].
    for (int k = 0; k < d; ++k) {
      const auto& [se, n] = list[static_cast<std::size_t>(k)];
      EdgeId away;
      for (const EdgeId& cand : frame.incident_edges(n)) {
        if (cand != se && cand.find("~s") != std::string::npos) away = cand;
      }
      std::vector<EdgeEnd> nr;
      nr.push_back(EdgeEnd{se, frame.edge(se).u == n ? 0 : 1});
      if (d >= 2) {
        EdgeId c_prev = cycle_edge_id(v, (k + d - 1) % d);
        nr.push_back(EdgeEnd{c_prev, frame.edge(c_prev).u == n ? 0 : 1});
      }
      nr.push_back(EdgeEnd{away, frame.edge(away).u == n ? 0 : 1});
      if (d >= 2) {
        EdgeId c_next = cycle_edge_id(v, k);
        nr.push_back(EdgeEnd{c_next, frame.edge(c_next).u == n ? 0 : 1});
      }
      fd.rotations[n] = std::move(nr);
    }
  }

  if (s.drawing.outer_face && !s.graph.edges().empty()) {
    DirEdge od = s.drawing.outer_face->as_left_dart();
    if (od.forward) {
      fd.outer_face = FaceRef{strand_edge(od.edge, 0, 0), true, FaceSide::Left};
    } else {
      fd.outer_face = FaceRef{strand_edge(od.edge, 2, 2), false, FaceSide::Left};
    }
  }

  if (!frame.edges().empty()) {
    ValidationReport rep = validate_drawing(frame, fd);
    if (!rep.ok) {
      std::string what = "frame drawing failed validation:";
      for (const Violation& v : rep.violations) what += " [" + v.rule + " " + v.element + "]";
      throw InternalError(what);
    }
  }
  fr.frame_graph = frame;
  fr.frame_drawing = fd;
  for (const Edge& e : frame.edges()) fr.frame_edges.insert(e.id);

  fr.graph = frame;
  for (const VertexId& v : source.graph.vertices()) {
    if (!fr.graph.has_vertex(v)) fr.graph.add_vertex(v);
  }
  for (const Edge& e : source.graph.edges()) fr.graph.add_edge(e);
  return fr;
}

}  // namespace

namespace {

// Cheap isomorphism invariant used to dodge full matcher runs during dedup.
std::string framing_fingerprint(const Framing& f) {
  std::multiset<std::pair<int, int>> profile;
  for (const VertexId& v : f.graph.vertices()) {
    int frame_deg = 0;
    for (const EdgeId& e : f.graph.incident_edges(v)) {
      if (f.frame_edges.count(e)) ++frame_deg;
    }
    profile.insert({f.graph.degree(v), frame_deg});
  }
  std::string out = std::to_string(f.graph.num_edges()) + "/" +
                    std::to_string(f.connector_edges.size()) + "/" +
                    std::to_string(f.connector_vertices.size()) + ":";
  for (const auto& [d, fd] : profile) {
    out += std::to_string(d) + "." + std::to_string(fd) + ",";
  }
  return out;
}

}  // namespace

Framing build_framing(const PredrawnGraph& p, const ExtensionOptions& opts) {
  DState s = run_step1_canonical(p, initial_dstate(p), opts);
  return frame_from_dstate(p, s);
}

std::vector<Framing> enumerate_extended_framings(const PredrawnGraph& p,
                                                 const ExtensionOptions& opts) {
  Multigraph h = predrawn_subgraph(p);
  int c = static_cast<int>(h.components().size());
  std::vector<PredrawnGraph> bases;

  std::function<void(const PredrawnGraph&, int)> place = [&](const PredrawnGraph& base,
                                                             int remaining) {
    bases.push_back(base);
    if (remaining == 0) return;
    if (static_cast<std::int64_t>(bases.size()) > opts.budget.max_candidates) {
      throw BudgetExceededError("enumerate_extended_framings: base budget");
    }
    Multigraph hb = predrawn_subgraph(base);
    if (hb.vertices().empty()) return;
    ResolvedDrawing res = ResolvedDrawing::resolve(base.graph, base.predrawn);
    std::map<int, std::set<VertexId>> comps_of_region;
    for (int f = 0; f < res.num_faces(); ++f) {
      for (const DirEdge& de : res.face_walk(f)) {
        comps_of_region[res.region_of(f)].insert(res.component_of_edge(de.edge));
      }
    }
    for (const VertexId& v : res.isolated_vertices()) {
      comps_of_region[res.region_of(res.node_of_isolated(v))].insert(res.component_of().at(v));
    }
    std::set<int> rich;
    for (const auto& [region, comps] : comps_of_region) {
      if (comps.size() >= 2) rich.insert(region);
    }
    VertexId cv = "cv~" + std::to_string(bases.size());
    for (int region : rich) {
      std::optional<FaceRef> anchor;
      for (int f = 0; f < res.num_faces(); ++f) {
        if (res.region_of(f) != region) continue;
        DirEdge de = res.canonical_dart(f);
        FaceRef ref{de.edge, de.forward, FaceSide::Left};
        if (!anchor || ref < *anchor) anchor = ref;
      }
      if (!anchor) continue;  // an all-virtual region cannot anchor a record
      PredrawnGraph b = base;
      b.graph.add_vertex(cv);
      b.predrawn.rotations[cv] = {};
      b.predrawn.containment.push_back({cv, *anchor, false});
      place(b, remaining - 1);
    }
    for (const EdgeId& e : base.predrawn_edge_set()) {
      bool bounds_rich = rich.count(res.region_of(res.face_of(DirEdge{e, true}))) ||
                         rich.count(res.region_of(res.face_of(DirEdge{e, false})));
      if (!bounds_rich) continue;
      PredrawnGraph b = base;
      subdivide_predrawn_edge(b, e, cv);
      place(b, remaining - 1);
    }
  };
  place(p, c > 1 ? 2 * c - 2 : 0);

  std::vector<Framing> out;
  std::vector<std::string> fingerprints;
  for (const PredrawnGraph& base : bases) {
    // The auxiliary framing runs Step 1 on the predrawn part alone; only
    // synthetic connector edges arise, and the instance joins in Step 4.
    std::vector<DState> runs;
    run_step1_all(initial_dstate(base), opts, runs, opts.budget.max_candidates);
    for (const DState& s : runs) {
      Framing fr = frame_from_dstate(base, s);
      for (const VertexId& v : base.graph.vertices()) {
        if (!p.graph.has_vertex(v)) fr.connector_vertices.push_back(v);
      }
      std::string fp = framing_fingerprint(fr);
      bool known = false;
      for (std::size_t i = 0; i < out.size(); ++i) {
        if (fingerprints[i] != fp) continue;
        if (framings_isomorphic(out[i], fr, opts)) {
          known = true;
          break;
        }
      }
      if (!known) {
        fingerprints.push_back(fp);
        out.push_back(std::move(fr));
      }
    }
  }
  return out;
}

FrameReport check_frame_invariants(const Framing& f) {
  FrameReport rep;
  Multigraph h = predrawn_subgraph(f.source);
  for (const auto& comp : h.components()) {
    if (comp.size() < 3) rep.applicable = false;
  }
  if (h.vertices().empty()) rep.applicable = false;
  rep.planar = f.frame_graph.edges().empty() ||
               validate_drawing(f.frame_graph, f.frame_drawing).ok;

  const Multigraph& g = f.frame_graph;
  rep.three_connected = g.connected();
  if (g.num_vertices() >= 4 && rep.three_connected) {
    std::vector<VertexId> vs(g.vertices().begin(), g.vertices().end());
    for (std::size_t i = 0; i < vs.size() && rep.three_connected; ++i) {
      for (std::size_t j = i + 1; j < vs.size() && rep.three_connected; ++j) {
        Multigraph cut = g;
        cut.remove_vertex(vs[i]);
        cut.remove_vertex(vs[j]);
        if (!cut.connected()) {
          rep.three_connected = false;
          rep.separator = {vs[i], vs[j]};
        }
      }
    }
  }
  return rep;
}

int treewidth_upper_bound(const Multigraph& g) {
  std::map<VertexId, std::set<VertexId>> adj;
  for (const VertexId& v : g.vertices()) adj[v] = {};
  for (const Edge& e : g.edges()) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  int width = 0;
  while (!adj.empty()) {
    VertexId best;
    std::size_t best_deg = SIZE_MAX;
    for (const auto& [v, ns] : adj) {
      if (ns.size() < best_deg) {
        best = v;
        best_deg = ns.size();
      }
    }
    width = std::max(width, static_cast<int>(best_deg));
    std::set<VertexId> ns = adj.at(best);
    for (const VertexId& a : ns) {
      adj.at(a).erase(best);
      for (const VertexId& b : ns) {
        if (a != b) adj.at(a).insert(b);
      }
    }
    adj.erase(best);
  }
  return width;
}

std::string serialize_framing(const Framing& f) {
  std::ostringstream out;
  out << serialize_pdg(f.graph, f.source.predrawn, f.source.registry);
  for (const EdgeId& e : f.frame_edges) out << "frame " << e << "\n";
  for (const auto& [fe, triplet] : f.framing_triplets) {
    out << "triplet " << fe;
    for (int j = 0; j < 3; ++j) {
      out << (j == 0 ? " " : " | ");
      for (std::size_t i = 0; i < triplet[static_cast<std::size_t>(j)].size(); ++i) {
        out << (i ? " " : "") << triplet[static_cast<std::size_t>(j)][i];
      }
    }
    out << "\n";
  }
  for (const auto& [v, cyc] : f.framing_cycles) {
    if (cyc.empty()) continue;
    out << "fcycle " << v;
    for (const EdgeId& e : cyc) out << " " << e;
    out << "\n";
  }
  return out.str();
}

bool framings_isomorphic(const Framing& a, const Framing& b, const ExtensionOptions& opts) {
  if (a.frame_edges.size() != b.frame_edges.size() ||
      a.framing_cycles.size() != b.framing_cycles.size() ||
      a.framing_triplets.size() != b.framing_triplets.size() ||
      a.connector_edges.size() != b.connector_edges.size() ||
      a.graph.num_vertices() != b.graph.num_vertices() ||
      a.graph.num_edges() != b.graph.num_edges()) {
    return false;
  }
  // Mark frame edges via a weight offset so the matcher must respect the
  // partition into frame and instance edges.
  auto tagged = [](const Framing& f) {
    PredrawnGraph t;
    t.graph = f.graph;
    for (const EdgeId& e : f.frame_edges) t.graph.edge_mut(e).weight += 1000;
    t.predrawn = f.source.predrawn;
    return t;
  };
  return ppdg_isomorphic(tagged(a), tagged(b), opts);
}

}  // namespace pdcross
