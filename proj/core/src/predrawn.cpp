#include "pdcross/predrawn.hpp"

#include <algorithm>

namespace pdcross {

namespace {

/// Pieces of each original edge, ordered by segment index. Plain edges map to
/// the one-element chain {0 -> id}.
std::map<EdgeId, std::map<int, EdgeId>> piece_chains(const Multigraph& g) {
  std::map<EdgeId, std::map<int, EdgeId>> chains;
  for (const Edge& e : g.edges()) {
    auto p = parse_piece(e.id);
    if (p) {
      if (!chains[p->first].emplace(p->second, e.id).second) {
        throw PreconditionError("duplicate piece segment: " + e.id);
      }
    } else {
      chains[e.id][0] = e.id;
    }
  }
  return chains;
}

void check_chain(const Multigraph& g, const EdgeId& orig, const std::map<int, EdgeId>& chain,
                 ValidationReport& rep) {
  int expect = 0;
  for (const auto& [seg, id] : chain) {
    if (seg != expect++) {
      rep.fail("piece chain has a gap", orig, "missing segment " + std::to_string(seg - 1));
      return;
    }
  }
  const Edge* prev = nullptr;
  for (const auto& [seg, id] : chain) {
    const Edge& e = g.edge(id);
    if (prev) {
      if (prev->v != e.u) {
        rep.fail("piece chain disconnected", orig, id);
        return;
      }
      if (prev->predrawn != e.predrawn || prev->weight != e.weight ||
          prev->uncrossable != e.uncrossable) {
        rep.fail("piece flags differ along chain", orig, id);
        return;
      }
    }
    prev = &e;
  }
}

}  // namespace

long long PredrawnGraph::predrawn_crossing_cost() const {
  long long total = 0;
  for (const auto& [x, info] : registry) {
    long long wa = graph.edge(piece_id(info.edge_a, 0)).weight;
    long long wb = graph.edge(piece_id(info.edge_b, 0)).weight;
    total += wa * wb;
  }
  return total;
}

ValidationReport validate_predrawn(const PredrawnGraph& p) {
  ValidationReport rep = validate_drawing(p.graph, p.predrawn);
  if (!rep.ok) return rep;

  std::set<EdgeId> drawn = p.predrawn.drawn_edges();
  for (const Edge& e : p.graph.edges()) {
    if (e.predrawn != (drawn.count(e.id) != 0)) {
      rep.fail("predrawn drawing does not cover exactly the predrawn edges", e.id);
    }
  }
  std::set<VertexId> h_ends = p.graph.predrawn_vertices();
  std::set<VertexId> keys = p.predrawn.drawn_vertices();
  for (const VertexId& v : h_ends) {
    if (!keys.count(v)) rep.fail("predrawn endpoint missing rotation", v);
  }

  auto chains = piece_chains(p.graph);
  for (const auto& [x, info] : p.registry) {
    if (!p.graph.has_vertex(x)) {
      rep.fail("registry names unknown vertex", x);
      continue;
    }
    if (p.graph.degree(x) != 4) {
      rep.fail("registry vertex degree != 4", x);
      continue;
    }
    std::vector<EdgeId> want = {piece_id(info.edge_a, info.pos_a - 1),
                                piece_id(info.edge_a, info.pos_a),
                                piece_id(info.edge_b, info.pos_b - 1),
                                piece_id(info.edge_b, info.pos_b)};
    for (const EdgeId& e : want) {
      if (!p.graph.has_edge(e) || !p.graph.edge(e).incident(x)) {
        rep.fail("registry pieces not incident", x, e);
      }
    }
    if (!rep.ok) continue;
    // Equal labels must sit opposite in the rotation: the crossing is
    // transversal, so the two halves of one original edge alternate with the
    // two halves of the other.
    auto rit = p.predrawn.rotations.find(x);
    if (rit == p.predrawn.rotations.end() || rit->second.size() != 4) {
      rep.fail("registry vertex rotation malformed", x);
      continue;
    }
    std::vector<int> label(4, -1);
    for (int i = 0; i < 4; ++i) {
      EdgeId orig = original_of(rit->second[static_cast<std::size_t>(i)].edge);
      label[static_cast<std::size_t>(i)] = orig == info.edge_a ? 0 : orig == info.edge_b ? 1 : -1;
    }
    if (std::count(label.begin(), label.end(), 0) != 2 ||
        std::count(label.begin(), label.end(), 1) != 2 || label[0] == label[1] ||
        label[1] == label[2]) {
      rep.fail("registry halves do not alternate", x);
    }
  }
  return rep;
}

long long DrawingWitness::total_cost() const {
  long long t = 0;
  for (const CrossingRecord& c : crossings) t += c.cost;
  return t;
}

ValidationReport validate_witness(const DrawingWitness& w) {
  ValidationReport rep = validate_drawing(w.plan_graph, w.drawing);
  if (!rep.ok) return rep;
  if (w.drawing.drawn_vertices() != w.plan_graph.vertices()) {
    rep.fail("witness drawing does not cover all vertices", "");
  }
  std::set<EdgeId> drawn = w.drawing.drawn_edges();
  for (const Edge& e : w.plan_graph.edges()) {
    if (!drawn.count(e.id)) rep.fail("witness drawing misses edge", e.id);
  }
  auto chains = piece_chains(w.plan_graph);
  for (const auto& [orig, chain] : chains) check_chain(w.plan_graph, orig, chain, rep);
  std::set<VertexId> crossing_vertices;
  for (const CrossingRecord& rec : w.crossings) {
    if (!w.plan_graph.has_vertex(rec.vertex)) {
      rep.fail("crossing at unknown vertex", rec.vertex);
      continue;
    }
    if (!crossing_vertices.insert(rec.vertex).second) {
      rep.fail("duplicate crossing record", rec.vertex);
      continue;
    }
    if (w.plan_graph.degree(rec.vertex) != 4) {
      rep.fail("crossing vertex degree != 4", rec.vertex);
      continue;
    }
    if (original_of(rec.edge_a) == original_of(rec.edge_b)) {
      rep.fail("crossing joins one original edge with itself", rec.vertex);
      continue;
    }
    std::set<EdgeId> origs;
    for (const EdgeId& e : w.plan_graph.incident_edges(rec.vertex)) {
      origs.insert(original_of(e));
    }
    if (origs != std::set<EdgeId>{rec.edge_a, rec.edge_b}) {
      rep.fail("crossing record edges do not match incidences", rec.vertex);
      continue;
    }
    long long wa = 0, wb = 0;
    for (const EdgeId& e : w.plan_graph.incident_edges(rec.vertex)) {
      if (original_of(e) == rec.edge_a) wa = w.plan_graph.edge(e).weight;
      if (original_of(e) == rec.edge_b) wb = w.plan_graph.edge(e).weight;
    }
    if (rec.cost != wa * wb) {
      rep.fail("crossing cost is not the weight product", rec.vertex);
    }
  }
  // Every degree-4 vertex that is a piece junction must be declared.
  for (const Edge& e : w.plan_graph.edges()) {
    auto p = parse_piece(e.id);
    if (!p) continue;
    for (const VertexId* end : {&e.u, &e.v}) {
      bool interior = false;
      // Interior piece junction: not an endpoint of the original chain.
      const auto& chain = chains.at(p->first);
      const Edge& first = w.plan_graph.edge(chain.begin()->second);
      const Edge& last = w.plan_graph.edge(chain.rbegin()->second);
      if (*end != first.u && *end != last.v) interior = true;
      if (interior && !crossing_vertices.count(*end)) {
        rep.fail("undeclared crossing vertex", *end, "on " + p->first);
      }
    }
  }
  return rep;
}

Multigraph original_graph(const DrawingWitness& w) {
  Multigraph out;
  auto chains = piece_chains(w.plan_graph);
  std::set<VertexId> crossing_vertices;
  for (const CrossingRecord& rec : w.crossings) crossing_vertices.insert(rec.vertex);
  for (const VertexId& v : w.plan_graph.vertices()) {
    if (!crossing_vertices.count(v)) out.add_vertex(v);
  }
  for (const auto& [orig, chain] : chains) {
    const Edge& first = w.plan_graph.edge(chain.begin()->second);
    const Edge& last = w.plan_graph.edge(chain.rbegin()->second);
    Edge e = first;
    e.id = orig;
    e.u = first.u;
    e.v = last.v;
    out.add_edge(e);
  }
  return out;
}

DrawingWitness witness_for_plane_drawing(const Multigraph& g, const PlaneDrawing& d) {
  return DrawingWitness{g, d, {}};
}

SubdividedEdge subdivide_predrawn_edge(PredrawnGraph& p, const EdgeId& f,
                                       const VertexId& mid_hint) {
  const Edge e = p.graph.edge(f);
  SubdividedEdge r;
  r.mid = mid_hint;
  if (r.mid.empty() || p.graph.has_vertex(r.mid)) {
    for (int i = 1;; ++i) {
      std::string cand = f + "~m" + std::to_string(i);
      if (!p.graph.has_vertex(cand)) {
        r.mid = cand;
        break;
      }
    }
  }
  auto fresh_edge = [&](const std::string& base) {
    for (int i = 1;; ++i) {
      std::string cand = base + "~" + std::to_string(i);
      if (!p.graph.has_edge(cand)) return cand;
    }
  };
  r.first = fresh_edge(f + "a");
  r.second = fresh_edge(f + "b");
  p.graph.add_vertex(r.mid);
  Edge e1 = e, e2 = e;
  e1.id = r.first;
  e1.v = r.mid;
  e2.id = r.second;
  e2.u = r.mid;
  p.graph.remove_edge(f);
  p.graph.add_edge(e1);
  p.graph.add_edge(e2);
  if (e.predrawn) {
    for (auto& [v, rot] : p.predrawn.rotations) {
      for (EdgeEnd& ee : rot) {
        if (ee.edge == f) ee = ee.end == 0 ? EdgeEnd{r.first, 0} : EdgeEnd{r.second, 1};
      }
    }
    p.predrawn.rotations[r.mid] = {EdgeEnd{r.first, 1}, EdgeEnd{r.second, 0}};
    auto rename_ref = [&](FaceRef& ref) {
      if (ref.edge == f) ref.edge = r.first;  // same side along the chain
    };
    if (p.predrawn.outer_face) rename_ref(*p.predrawn.outer_face);
    for (auto& rec : p.predrawn.containment) rename_ref(rec.host_face);
  }
  return r;
}

Planarisation planarise(const DrawingWitness& w) {
  ValidationReport rep = validate_witness(w);
  if (!rep.ok) {
    std::string what = "planarise: invalid witness:";
    for (const Violation& v : rep.violations) what += " [" + v.rule + " " + v.element + "]";
    throw PreconditionError(what);
  }
  Planarisation out;
  out.graph = w.plan_graph;
  auto chains = piece_chains(w.plan_graph);
  for (const CrossingRecord& rec : w.crossings) {
    CrossingInfo info;
    info.edge_a = rec.edge_a;
    info.edge_b = rec.edge_b;
    // Position of the vertex along each original edge, from the piece index.
    auto pos_on = [&](const EdgeId& orig) {
      for (const auto& [seg, id] : chains.at(orig)) {
        if (w.plan_graph.edge(id).v == rec.vertex) return seg + 1;
      }
      throw InternalError("planarise: crossing vertex not on " + orig);
    };
    info.pos_a = pos_on(rec.edge_a);
    info.pos_b = pos_on(rec.edge_b);
    out.registry[rec.vertex] = info;
  }
  return out;
}

}  // namespace pdcross
