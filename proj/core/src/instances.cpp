#include "pdcross/instances.hpp"

#include <algorithm>

namespace pdcross {

namespace {

void add_predrawn_triangle(PredrawnGraph& p, const std::string& a, const std::string& b,
                           const std::string& c, const std::string& prefix, bool clockwise) {
  for (const std::string& v : {a, b, c}) {
    if (!p.graph.has_vertex(v)) p.graph.add_vertex(v);
  }
  EdgeId e1 = prefix + "1", e2 = prefix + "2", e3 = prefix + "3";
  for (auto [id, u, v] : {std::tuple{e1, a, b}, {e2, b, c}, {e3, c, a}}) {
    Edge e{id, u, v};
    e.predrawn = true;
    p.graph.add_edge(e);
  }
  std::vector<EdgeEnd> ra = {{e3, 1}, {e1, 0}};
  std::vector<EdgeEnd> rb = {{e1, 1}, {e2, 0}};
  std::vector<EdgeEnd> rc = {{e2, 1}, {e3, 0}};
  if (!clockwise) {
    std::reverse(ra.begin(), ra.end());
    std::reverse(rb.begin(), rb.end());
    std::reverse(rc.begin(), rc.end());
  }
  p.predrawn.rotations[a] = ra;
  p.predrawn.rotations[b] = rb;
  p.predrawn.rotations[c] = rc;
}

// One gadget: concentric 4-cycles u1..u4 and v1..v4 with two spokes, the two
// weight-c edges, and four unit ties. The straight drawing nests the inner
// cycle the same way round; the flipped one reverses it.
struct GadgetBuild {
  Multigraph graph;
  PlaneDrawing straight;
  PlaneDrawing flipped_h;  // drawing of the core subgraph only, inner reversed
  std::set<EdgeId> core;   // G0 edges
};

std::string gv(const std::string& base, int copy) {
  return base + (copy > 1 ? "^" + std::to_string(copy) : "");
}

GadgetBuild build_gadget_graph(int c) {
  GadgetBuild gb;
  Multigraph& g = gb.graph;
  for (const char* v : {"u1", "u2", "u3", "u4", "v1", "v2", "v3", "v4"}) g.add_vertex(v);
  auto add = [&](const char* id, const char* u, const char* v, int w, bool core) {
    Edge e{id, u, v};
    e.weight = w;
    g.add_edge(e);
    if (core) gb.core.insert(id);
  };
  int heavy = 2 * c + 3;
  add("u1u2", "u1", "u2", heavy, true);
  add("u2u3", "u2", "u3", heavy, true);
  add("u3u4", "u3", "u4", heavy, true);
  add("u4u1", "u4", "u1", heavy, true);
  add("v1v2", "v1", "v2", heavy, true);
  add("v2v3", "v2", "v3", heavy, true);
  add("v3v4", "v3", "v4", heavy, true);
  add("v4v1", "v4", "v1", heavy, true);
  add("u2v2", "u2", "v2", 1, true);
  add("u4v4", "u4", "v4", 1, true);
  add("u1v1", "u1", "v1", c, false);
  add("u3v3", "u3", "v3", c, false);
  add("u1v4", "u1", "v4", 1, false);
  add("v4u3", "v4", "u3", 1, false);
  add("v3u2", "v3", "u2", 1, false);
  add("u2v1", "u2", "v1", 1, false);

  PlaneDrawing& s = gb.straight;
  s.rotations["u1"] = {{"u4u1", 1}, {"u1u2", 0}};
  s.rotations["u2"] = {{"u2v2", 0}, {"u2u3", 0}, {"u1u2", 1}};
  s.rotations["u3"] = {{"u3u4", 0}, {"u2u3", 1}};
  s.rotations["u4"] = {{"u3u4", 1}, {"u4v4", 0}, {"u4u1", 0}};
  s.rotations["v1"] = {{"v4v1", 1}, {"v1v2", 0}};
  s.rotations["v2"] = {{"v2v3", 0}, {"u2v2", 1}, {"v1v2", 1}};
  s.rotations["v3"] = {{"v3v4", 0}, {"v2v3", 1}};
  s.rotations["v4"] = {{"u4v4", 1}, {"v3v4", 1}, {"v4v1", 0}};
  s.outer_face = FaceRef{"u1u2", true, FaceSide::Right};

  gb.flipped_h = gb.straight;
  std::reverse(gb.flipped_h.rotations["v2"].begin(), gb.flipped_h.rotations["v2"].end());
  std::reverse(gb.flipped_h.rotations["v4"].begin(), gb.flipped_h.rotations["v4"].end());
  return gb;
}

}  // namespace

CriticalFamily gen_critical(const CriticalFamilyParams& params, const ExtensionOptions& opts) {
  if (params.c < 3) throw PreconditionError("gen_critical: c must be at least 3");
  if (params.copies < 1) throw PreconditionError("gen_critical: copies must be at least 1");
  CriticalFamily out;
  GadgetBuild gb = build_gadget_graph(params.c);
  out.gadget = gb.graph;

  // Reference witnesses for one gadget, both computed by the exact machinery:
  // the straight core extends with no crossings; with the core predrawn
  // flipped, the optimum is the minimum flipped drawing.
  {
    PredrawnGraph straight;
    straight.graph = gb.graph;
    for (const EdgeId& e : gb.core) straight.graph.edge_mut(e).predrawn = true;
    straight.predrawn = gb.straight;
    ExtensionOptions o = opts;
    o.budget.max_vertices = std::max(o.budget.max_vertices, 30);
    auto d = extend_planar(straight, o);
    if (!d) throw InternalError("gen_critical: straight gadget does not extend");
    Multigraph plain = gb.graph;
    out.straight = witness_for_plane_drawing(plain, *d);

    PredrawnGraph flipped;
    flipped.graph = gb.graph;
    for (const EdgeId& e : gb.core) flipped.graph.edge_mut(e).predrawn = true;
    flipped.predrawn = gb.flipped_h;
    SolveOptions so;
    so.max_q = 2 * params.c + 2;
    so.budget = o.budget;
    SolveResult r = solve_pdcr(flipped, so);
    if (r.status != SolveStatus::Optimal || !r.witness) {
      throw InternalError("gen_critical: flipped gadget optimum not found within 2c+2");
    }
    out.flipped = *r.witness;
    for (const Edge& e : out.flipped.plan_graph.edges()) {
      out.flipped.plan_graph.edge_mut(e.id).predrawn = false;
    }
  }

  // The stacked instance: copies identified along consecutive 4-cycles, plus
  // the two predrawn anchor triangles drawn in opposite orientation.
  PredrawnGraph& inst = out.instance;
  int m = params.copies;
  // vertex naming: copy j has u{i}^j except that u-cycle of copy j is the
  // v-cycle of copy j+1
  auto uname = [&](int i, int j) { return "u" + std::to_string(i) + "^" + std::to_string(j); };
  auto vname = [&](int i, int j) {
    return j == m ? "u" + std::to_string(i) + "^" + std::to_string(m + 1)
                  : uname(i, j + 1);  // identified cycles share vertices
  };
  // cycle rings 1..m+1: ring j = v-cycle of copy j; ring m+1 = u-cycle of copy m
  auto ring = [&](int i, int j) { return "r" + std::to_string(j) + "_" + std::to_string(i); };
  int heavy = 2 * params.c + 3;
  for (int j = 1; j <= m + 1; ++j) {
    for (int i = 1; i <= 4; ++i) inst.graph.add_vertex(ring(i, j));
  }
  for (int j = 1; j <= m + 1; ++j) {
    for (int i = 1; i <= 4; ++i) {
      Edge e{"c" + std::to_string(j) + "_" + std::to_string(i), ring(i, j),
             ring(i % 4 + 1, j)};
      e.weight = heavy;
      inst.graph.add_edge(e);
    }
  }
  auto tie = [&](const std::string& id, const std::string& a, const std::string& b, int w) {
    Edge e{id, a, b};
    e.weight = w;
    inst.graph.add_edge(e);
  };
  for (int j = 1; j <= m; ++j) {
    std::string tag = "g" + std::to_string(j) + "_";
    // copy j: inner ring j (v-side), outer ring j+1 (u-side)
    tie(tag + "u2v2", ring(2, j + 1), ring(2, j), 1);
    tie(tag + "u4v4", ring(4, j + 1), ring(4, j), 1);
    tie(tag + "u1v1", ring(1, j + 1), ring(1, j), params.c);
    tie(tag + "u3v3", ring(3, j + 1), ring(3, j), params.c);
    tie(tag + "u1v4", ring(1, j + 1), ring(4, j), 1);
    tie(tag + "v4u3", ring(4, j), ring(3, j + 1), 1);
    tie(tag + "v3u2", ring(3, j), ring(2, j + 1), 1);
    tie(tag + "u2v1", ring(2, j + 1), ring(1, j), 1);
  }
  // anchor triangles: T1 tied to the innermost ring, T2 to the outermost,
  // drawn in opposite orientation
  add_predrawn_triangle(inst, "a1", "a2", "a3", "T1_", true);
  add_predrawn_triangle(inst, "b1", "b2", "b3", "T2_", false);
  tie("t1_1", "a1", ring(1, 1), heavy);
  tie("t1_2", "a2", ring(2, 1), heavy);
  tie("t1_3", "a3", ring(4, 1), heavy);
  tie("t2_1", "b1", ring(3, m + 1), heavy);
  tie("t2_2", "b2", ring(2, m + 1), heavy);
  tie("t2_3", "b3", ring(4, m + 1), heavy);
  inst.predrawn.outer_face = FaceRef{"T1_1", true, FaceSide::Right};

  if (params.expand_parallel) {
    PredrawnGraph expanded;
    expanded.predrawn = inst.predrawn;
    for (const VertexId& v : inst.graph.vertices()) expanded.graph.add_vertex(v);
    for (const Edge& e : inst.graph.edges()) {
      if (e.weight == 1 || e.predrawn) {
        expanded.graph.add_edge(e);
        continue;
      }
      for (int k = 0; k < e.weight; ++k) {
        Edge pe = e;
        pe.id = e.id + "&" + std::to_string(k);
        pe.weight = 1;
        expanded.graph.add_edge(pe);
      }
    }
    out.instance = expanded;
  }
  return out;
}

namespace {

// The running example: a free 6-cycle carries an orientation-pinned predrawn
// triangle wired inside and a second one wired outside; the predrawn part
// fixes the triangles' relative orientation, and one choice cannot be drawn
// without crossings. The inner triangle with its connector vertices is the
// contractible region.
CorpusEntry running_example_impl(bool s_mirrored, bool conflicting) {
  CorpusEntry entry;
  entry.name = conflicting ? "fig3-instance" : "fig3-compatible";
  entry.note = conflicting
                   ? "reconstruction: orientation conflict through the free cycle"
                   : "reconstruction: the orientation-compatible variant";
  PredrawnGraph& p = entry.instance;
  std::vector<VertexId> cyc = {"c1", "c2", "c3", "c4", "c5", "c6"};
  for (const VertexId& v : cyc) p.graph.add_vertex(v);
  std::vector<EdgeId> cyc_edges;
  for (int i = 0; i < 6; ++i) {
    Edge e{"C" + std::to_string(i + 1), cyc[static_cast<std::size_t>(i)],
           cyc[static_cast<std::size_t>((i + 1) % 6)]};
    p.graph.add_edge(e);
    cyc_edges.push_back(e.id);
  }
  add_predrawn_triangle(p, "t1", "t2", "t3", "Ti_", true);
  add_predrawn_triangle(p, "s1", "s2", "s3", "So_", true);
  p.predrawn.outer_face = FaceRef{"Ti_1", true, FaceSide::Right};
  p.predrawn.containment.push_back(
      {"s1", FaceRef{"Ti_1", true, FaceSide::Right}, s_mirrored});

  for (auto [id, u, v] : {std::tuple{"ti1", "t1", "i1"}, {"ti2", "t2", "i2"},
                          {"ti3", "t3", "i3"}}) {
    p.graph.add_vertex(v);
    p.graph.add_edge(Edge{id, u, v});
  }
  for (auto [id, u, v] : {std::tuple{"ic1", "i1", "c1"}, {"ic3", "i2", "c3"},
                          {"ic5", "i3", "c5"}}) {
    p.graph.add_edge(Edge{id, u, v});
  }
  for (auto [id, u, v] : {std::tuple{"sc2", "s1", "c2"}, {"sc4", "s2", "c4"},
                          {"sc6", "s3", "c6"}}) {
    p.graph.add_edge(Edge{id, u, v});
  }
  entry.region = {"t1", "t2", "t3", "i1", "i2", "i3"};
  entry.cycle = cyc_edges;
  if (conflicting) {
    entry.expect["extendable"] = "none";
    entry.expect["qstar_at_0"] = "infeasible";
    entry.expect["middle_extendable"] = "some";
    entry.expect["contracted_extendable"] = "some";
    entry.expect["flip_before"] = "unflippable";
    entry.expect["flip_after"] = "flippable";
    entry.expect["reduction_case"] = "e";
    entry.expect["post_e_extendable"] = "none";
  } else {
    entry.expect["extendable"] = "some";
  }
  return entry;
}

CorpusEntry running_example(bool conflicting) {
  // the unmirrored placement of the outer triangle is the drawable one
  return running_example_impl(conflicting, conflicting);
}

CorpusEntry drawing_pair_example() {
  // two drawings with equal rotations: a floating segment inside one triangle
  // of a bowtie, or inside the other
  CorpusEntry entry;
  entry.name = "fig1-pair";
  entry.note = "reconstruction: same rotation system, different containment";
  PredrawnGraph& p = entry.instance;
  for (auto v : {"a", "b", "c", "d", "e", "p", "q"}) p.graph.add_vertex(v);
  auto add = [&](const char* id, const char* u, const char* v) {
    Edge e{id, u, v};
    e.predrawn = true;
    p.graph.add_edge(e);
  };
  add("ab", "a", "b");
  add("bc", "b", "c");
  add("ca", "c", "a");
  add("cd", "c", "d");
  add("de", "d", "e");
  add("ec", "e", "c");
  add("pq", "p", "q");
  PlaneDrawing& d1 = p.predrawn;
  d1.rotations["a"] = {{"ca", 1}, {"ab", 0}};
  d1.rotations["b"] = {{"ab", 1}, {"bc", 0}};
  d1.rotations["c"] = {{"ec", 1}, {"bc", 1}, {"ca", 0}, {"cd", 0}};
  d1.rotations["d"] = {{"de", 0}, {"cd", 1}};
  d1.rotations["e"] = {{"ec", 0}, {"de", 1}};
  d1.rotations["p"] = {{"pq", 0}};
  d1.rotations["q"] = {{"pq", 1}};
  d1.outer_face = FaceRef{"ab", true, FaceSide::Right};
  d1.containment.push_back({"p", FaceRef{"ab", true, FaceSide::Left}, false});
  PlaneDrawing d2 = d1;
  d2.containment.clear();
  d2.containment.push_back({"p", FaceRef{"cd", true, FaceSide::Right}, false});
  entry.second_drawing = d2;
  entry.expect["equivalent"] = "false";
  entry.expect["mirror_equivalent"] = "true";
  return entry;
}

CorpusEntry framing_example() {
  // predrawn triangle plus predrawn star joined by free edges; the canonical
  // connector is the c-f edge
  CorpusEntry entry;
  entry.name = "fig4-framing";
  entry.note = "reconstruction: two predrawn components, one connector edge";
  PredrawnGraph& p = entry.instance;
  for (auto v : {"a", "b", "c", "d", "e", "f", "g"}) p.graph.add_vertex(v);
  auto add = [&](const char* id, const char* u, const char* v, bool pre) {
    Edge e{id, u, v};
    e.predrawn = pre;
    p.graph.add_edge(e);
  };
  add("ab", "a", "b", true);
  add("bc", "b", "c", true);
  add("ca", "c", "a", true);
  add("dg", "d", "g", true);
  add("ge", "g", "e", true);
  add("gf", "g", "f", true);
  add("cf", "c", "f", false);
  add("da", "d", "a", false);
  add("af", "a", "f", false);
  add("fb", "f", "b", false);
  add("be", "b", "e", false);
  add("cg", "c", "g", false);
  p.predrawn.rotations["a"] = {{"ca", 1}, {"ab", 0}};
  p.predrawn.rotations["b"] = {{"ab", 1}, {"bc", 0}};
  p.predrawn.rotations["c"] = {{"bc", 1}, {"ca", 0}};
  p.predrawn.rotations["d"] = {{"dg", 0}};
  p.predrawn.rotations["e"] = {{"ge", 1}};
  p.predrawn.rotations["f"] = {{"gf", 1}};
  p.predrawn.rotations["g"] = {{"dg", 1}, {"ge", 0}, {"gf", 0}};
  p.predrawn.outer_face = FaceRef{"ab", true, FaceSide::Right};
  entry.expect["connector"] = "cf";
  entry.expect["frame_planar"] = "true";
  entry.expect["frame_3connected"] = "true";
  return entry;
}

CorpusEntry embedded_pattern_example() {
  // the 5-vertex pattern of the framing-minor illustration: predrawn triangle
  // plus a detached predrawn edge
  CorpusEntry entry;
  entry.name = "fig9-pattern";
  entry.note = "reconstruction: pattern side of the framing-minor picture";
  PredrawnGraph& p = entry.instance;
  for (auto v : {"a", "b", "c", "f", "g"}) p.graph.add_vertex(v);
  auto add = [&](const char* id, const char* u, const char* v) {
    Edge e{id, u, v};
    e.predrawn = true;
    p.graph.add_edge(e);
  };
  add("ab", "a", "b");
  add("bc", "b", "c");
  add("ca", "c", "a");
  add("gf", "g", "f");
  p.predrawn.rotations["a"] = {{"ca", 1}, {"ab", 0}};
  p.predrawn.rotations["b"] = {{"ab", 1}, {"bc", 0}};
  p.predrawn.rotations["c"] = {{"bc", 1}, {"ca", 0}};
  p.predrawn.rotations["f"] = {{"gf", 1}};
  p.predrawn.rotations["g"] = {{"gf", 0}};
  p.predrawn.outer_face = FaceRef{"ab", true, FaceSide::Right};
  entry.expect["pd_subgraph_of_fig4"] = "true";
  return entry;
}

CorpusEntry classic(const std::string& name, Multigraph g, const std::string& qstar) {
  CorpusEntry entry;
  entry.name = name;
  entry.instance.graph = std::move(g);
  entry.expect["qstar"] = qstar;
  return entry;
}

}  // namespace

std::vector<CorpusEntry> gen_examples() {
  std::vector<CorpusEntry> out;
  out.push_back(drawing_pair_example());
  out.push_back(running_example(true));
  out.push_back(running_example(false));
  out.push_back(framing_example());
  out.push_back(embedded_pattern_example());

  {
    Multigraph k5;
    for (int i = 1; i <= 5; ++i) k5.add_vertex(std::to_string(i));
    for (int i = 1; i <= 5; ++i) {
      for (int j = i + 1; j <= 5; ++j) {
        k5.add_edge(Edge{std::to_string(i) + "-" + std::to_string(j), std::to_string(i),
                         std::to_string(j)});
      }
    }
    out.push_back(classic("k5", k5, "1"));
  }
  {
    Multigraph k33;
    for (int i = 1; i <= 3; ++i) {
      k33.add_vertex("a" + std::to_string(i));
      k33.add_vertex("b" + std::to_string(i));
    }
    for (int i = 1; i <= 3; ++i) {
      for (int j = 1; j <= 3; ++j) {
        k33.add_edge(Edge{"m" + std::to_string(i) + std::to_string(j), "a" + std::to_string(i),
                          "b" + std::to_string(j)});
      }
    }
    out.push_back(classic("k33", k33, "1"));
  }
  {
    Multigraph k6;
    for (int i = 1; i <= 6; ++i) k6.add_vertex(std::to_string(i));
    for (int i = 1; i <= 6; ++i) {
      for (int j = i + 1; j <= 6; ++j) {
        k6.add_edge(Edge{std::to_string(i) + "-" + std::to_string(j), std::to_string(i),
                         std::to_string(j)});
      }
    }
    out.push_back(classic("k6", k6, "3"));
  }
  {
    // planar grid with nothing predrawn
    Multigraph grid;
    auto name = [](int r, int c) { return "g" + std::to_string(r) + "_" + std::to_string(c); };
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) grid.add_vertex(name(r, c));
    }
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        if (c + 1 < 4) grid.add_edge(Edge{"h" + name(r, c), name(r, c), name(r, c + 1)});
        if (r + 1 < 4) grid.add_edge(Edge{"v" + name(r, c), name(r, c), name(r + 1, c)});
      }
    }
    CorpusEntry e = classic("grid4", grid, "0");
    out.push_back(e);
  }
  return out;
}

}  // namespace pdcross
