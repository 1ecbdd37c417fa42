#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pdcross/framing.hpp"
#include "pdcross/io.hpp"
#include "support/builders.hpp"

using namespace pdcross;
using namespace pdcross::testing;

namespace {

PredrawnGraph triangle_instance() {
  PredrawnGraph p;
  auto spec = plane_cycle({"a", "b", "c"}, true);
  p.graph = spec.graph;
  p.predrawn = spec.drawing;
  return p;
}

// The running two-component example: predrawn triangle a,b,c plus a predrawn
// star d-g, g-e, g-f, with free edges tying them together (c-f is the
// canonical connector).
PredrawnGraph two_component_instance() {
  PredrawnGraph p;
  Multigraph& g = p.graph;
  for (auto v : {"a", "b", "c", "d", "e", "f", "g"}) g.add_vertex(v);
  auto add = [&](const char* id, const char* u, const char* v, bool pre) {
    Edge e{id, u, v};
    e.predrawn = pre;
    g.add_edge(e);
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
  return p;
}

}  // namespace

TEST_CASE("triangle framing: three triplets, three cycles, rigid frame") {
  PredrawnGraph p = triangle_instance();
  Framing f = build_framing(p);
  CHECK(f.framing_triplets.size() == 3);
  CHECK(f.framing_cycles.size() == 3);
  for (const auto& [v, cyc] : f.framing_cycles) CHECK(cyc.size() == 6);
  CHECK(f.connector_edges.empty());
  FrameReport rep = check_frame_invariants(f);
  CHECK(rep.applicable);
  CHECK(rep.planar);
  CHECK(rep.three_connected);
  // F contains G with original ids intact
  for (const Edge& e : p.graph.edges()) CHECK(f.graph.has_edge(e.id));
  // triplet and cycle counts per spec invariants
  CHECK(f.framing_cycles.size() == p.predrawn_vertex_set().size());
}

TEST_CASE("two-component example: one connector, per-vertex cycles") {
  PredrawnGraph p = two_component_instance();
  REQUIRE(validate_predrawn(p).ok);
  Framing f = build_framing(p);
  REQUIRE(f.connector_edges.size() == 1);
  CHECK(f.connector_edges[0].from_g);
  CHECK(f.connector_edges[0].id == "cf");
  CHECK(f.framing_triplets.size() == 7);  // 6 predrawn edges + connector
  CHECK(f.framing_cycles.size() == 7);
  FrameReport rep = check_frame_invariants(f);
  CHECK(rep.planar);
  CHECK(rep.three_connected);
  // connector edge remains in F as an instance edge (it came from G)
  CHECK(f.graph.has_edge("cf"));
}

TEST_CASE("three separated components get at least two connectors") {
  PredrawnGraph p;
  Multigraph& g = p.graph;
  auto tri = [&](const char* prefix) {
    std::string a = std::string(prefix) + "1", b = std::string(prefix) + "2",
                c = std::string(prefix) + "3";
    g.add_vertex(a);
    g.add_vertex(b);
    g.add_vertex(c);
    for (auto [id, u, v] : {std::tuple{prefix + std::string("a"), a, b},
                            {prefix + std::string("b"), b, c},
                            {prefix + std::string("c"), c, a}}) {
      Edge e{id, u, v};
      e.predrawn = true;
      g.add_edge(e);
    }
    p.predrawn.rotations[a] = {{prefix + std::string("c"), 1}, {prefix + std::string("a"), 0}};
    p.predrawn.rotations[b] = {{prefix + std::string("a"), 1}, {prefix + std::string("b"), 0}};
    p.predrawn.rotations[c] = {{prefix + std::string("b"), 1}, {prefix + std::string("c"), 0}};
  };
  tri("x");
  tri("y");
  tri("z");
  p.predrawn.outer_face = FaceRef{"xa", true, FaceSide::Right};
  REQUIRE(validate_predrawn(p).ok);
  Framing f = build_framing(p);
  CHECK(f.connector_edges.size() >= 2);
  for (const auto& c : f.connector_edges) CHECK(!c.from_g);
  CHECK(check_frame_invariants(f).planar);
}

TEST_CASE("degenerate frames report not applicable") {
  PredrawnGraph p;
  p.graph.add_vertex("a");
  p.graph.add_vertex("b");
  Edge e{"ab", "a", "b"};
  e.predrawn = true;
  p.graph.add_edge(e);
  p.predrawn.rotations["a"] = {{"ab", 0}};
  p.predrawn.rotations["b"] = {{"ab", 1}};
  p.predrawn.outer_face = FaceRef{"ab", true, FaceSide::Left};
  Framing f = build_framing(p);
  FrameReport rep = check_frame_invariants(f);
  CHECK(!rep.applicable);
  CHECK(rep.planar);
}

TEST_CASE("deleting a strand path breaks 3-connectivity") {
  PredrawnGraph p = triangle_instance();
  Framing f = build_framing(p);
  // remove one whole strand of some triplet from the frame graph
  const auto& triplet = f.framing_triplets.begin()->second;
  for (const EdgeId& e : triplet[0]) f.frame_graph.remove_edge(e);
  FrameReport rep = check_frame_invariants(f);
  CHECK(!rep.three_connected);
  CHECK(rep.separator.size() == 2);
}

TEST_CASE("treewidth upper bound") {
  // a tree
  Multigraph t;
  for (auto v : {"a", "b", "c", "d"}) t.add_vertex(v);
  t.add_edge(Edge{"ab", "a", "b"});
  t.add_edge(Edge{"ac", "a", "c"});
  t.add_edge(Edge{"cd", "c", "d"});
  CHECK(treewidth_upper_bound(t) == 1);
  CHECK(treewidth_upper_bound(grid_graph(4, 4)) >= 4);
  CHECK(treewidth_upper_bound(complete_graph(6)) == 5);
}

TEST_CASE("connected predrawn part yields exactly the ordinary framing") {
  PredrawnGraph p = triangle_instance();
  auto all = enumerate_extended_framings(p);
  REQUIRE(all.size() == 1);
  CHECK(all[0].connector_vertices.empty());
  CHECK(framings_isomorphic(all[0], build_framing(p)));
}

TEST_CASE("extended framings of two predrawn triangles joined by an edge") {
  PredrawnGraph p;
  Multigraph& g = p.graph;
  auto tri = [&](const char* prefix) {
    std::string a = std::string(prefix) + "1", b = std::string(prefix) + "2",
                c = std::string(prefix) + "3";
    g.add_vertex(a);
    g.add_vertex(b);
    g.add_vertex(c);
    for (auto [id, u, v] : {std::tuple{prefix + std::string("a"), a, b},
                            {prefix + std::string("b"), b, c},
                            {prefix + std::string("c"), c, a}}) {
      Edge e{id, u, v};
      e.predrawn = true;
      g.add_edge(e);
    }
    p.predrawn.rotations[a] = {{prefix + std::string("c"), 1}, {prefix + std::string("a"), 0}};
    p.predrawn.rotations[b] = {{prefix + std::string("a"), 1}, {prefix + std::string("b"), 0}};
    p.predrawn.rotations[c] = {{prefix + std::string("b"), 1}, {prefix + std::string("c"), 0}};
  };
  tri("x");
  tri("y");
  g.add_edge(Edge{"join", "x1", "y1"});
  p.predrawn.outer_face = FaceRef{"xa", true, FaceSide::Right};
  REQUIRE(validate_predrawn(p).ok);
  ExtensionOptions opts;
  opts.budget.max_candidates = 4000;
  auto all = enumerate_extended_framings(p, opts);
  CHECK(all.size() >= 2);
  int with_cv = 0;
  for (const Framing& f : all) {
    if (!f.connector_vertices.empty()) ++with_cv;
    CHECK(!f.framing_triplets.empty());
  }
  CHECK(with_cv > 0);  // members with 1 and 2 connector vertices exist
  MESSAGE("extended framings: ", all.size(), " (", with_cv, " with connector vertices)");
}

TEST_CASE("framing topological minor: reflexive") {
  PredrawnGraph p = two_component_instance();
  Framing f = build_framing(p);
  auto w = framing_topological_minor(f, f);
  REQUIRE(w.has_value());
  for (const auto& [v, img] : w->vertex_map) {
    if (p.graph.has_vertex(v)) CHECK(v == img);
  }
}

TEST_CASE("framing minor rejects larger patterns") {
  PredrawnGraph small = triangle_instance();
  PredrawnGraph big = two_component_instance();
  Framing fs = build_framing(small);
  Framing fb = build_framing(big);
  CHECK(!framing_topological_minor(fb, fs).has_value());
  CHECK(framing_topological_minor(fs, fb).has_value());  // triangle embeds
}
