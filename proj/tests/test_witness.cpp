#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pdcross/io.hpp"
#include "pdcross/predrawn.hpp"
#include "support/builders.hpp"

using namespace pdcross;
using namespace pdcross::testing;

namespace {

// K5 drawn with one crossing: triangle 1,2,3 with 4 inside, 5 below, and the
// edge 5-4 crossing 1-2 at x. 3-5 routes around the right side.
DrawingWitness k5_witness() {
  Multigraph k5 = complete_graph(5);
  Multigraph g;
  for (const VertexId& v : k5.vertices()) g.add_vertex(v);
  g.add_vertex("x");
  for (const Edge& e : k5.edges()) {
    if (e.id == "1-2" || e.id == "4-5") continue;
    g.add_edge(e);
  }
  for (auto [id, u, v] : {std::tuple{"1-2#0", "1", "x"},
                          {"1-2#1", "x", "2"},
                          {"4-5#0", "4", "x"},
                          {"4-5#1", "x", "5"}}) {
    g.add_edge(Edge{id, u, v});
  }
  PlaneDrawing d;
  d.rotations["1"] = {{"1-3", 0}, {"1-4", 0}, {"1-2#0", 0}, {"1-5", 0}};
  d.rotations["2"] = {{"2-5", 0}, {"1-2#1", 1}, {"2-4", 0}, {"2-3", 0}};
  d.rotations["3"] = {{"3-5", 0}, {"2-3", 1}, {"3-4", 0}, {"1-3", 1}};
  d.rotations["4"] = {{"3-4", 1}, {"2-4", 1}, {"4-5#0", 0}, {"1-4", 1}};
  d.rotations["5"] = {{"4-5#1", 1}, {"2-5", 1}, {"3-5", 1}, {"1-5", 1}};
  d.rotations["x"] = {{"4-5#0", 1}, {"1-2#1", 0}, {"4-5#1", 0}, {"1-2#0", 1}};
  d.outer_face = FaceRef{"1-5", true, FaceSide::Right};
  DrawingWitness w;
  w.plan_graph = g;
  w.drawing = d;
  w.crossings.push_back(CrossingRecord{"x", "1-2", "4-5", 1});
  return w;
}

PredrawnGraph k5_instance() {
  PredrawnGraph p;
  p.graph = complete_graph(5);
  return p;
}

}  // namespace

TEST_CASE("the K5 witness validates") {
  DrawingWitness w = k5_witness();
  auto rep = validate_witness(w);
  for (const auto& v : rep.violations) {
    CAPTURE(v.rule);
    CAPTURE(v.element);
    CHECK(false);
  }
  CHECK(rep.ok);
  CHECK(w.plan_graph.num_vertices() == 6);
  CHECK(w.plan_graph.num_edges() == 12);
  CHECK(original_graph(w) == complete_graph(5));
}

TEST_CASE("planarise") {
  SUBCASE("zero crossings is the identity") {
    auto spec = plane_cycle({"a", "b", "c"});
    DrawingWitness w = witness_for_plane_drawing(spec.graph, spec.drawing);
    Planarisation pl = planarise(w);
    CHECK(pl.graph == spec.graph);
    CHECK(pl.registry.empty());
  }
  SUBCASE("one crossing records ordered positions and labels") {
    DrawingWitness w = k5_witness();
    Planarisation pl = planarise(w);
    REQUIRE(pl.registry.count("x"));
    CHECK(pl.registry.at("x").edge_a == "1-2");
    CHECK(pl.registry.at("x").pos_a == 1);
    CHECK(pl.registry.at("x").edge_b == "4-5");
    CHECK(pl.registry.at("x").pos_b == 1);
  }
  SUBCASE("invalid witness is rejected") {
    DrawingWitness w = k5_witness();
    w.crossings.clear();  // x becomes an undeclared junction
    CHECK_THROWS_AS(planarise(w), PreconditionError);
  }
}

TEST_CASE("restrict") {
  DrawingWitness w = k5_witness();
  SUBCASE("restrict to the full set is equivalent to the input") {
    Multigraph k5 = complete_graph(5);
    ElementSubset all;
    for (const VertexId& v : k5.vertices()) all.vertices.insert(v);
    for (const Edge& e : k5.edges()) all.edges.insert(e.id);
    DrawingWitness r = restrict_witness(w, all);
    CHECK(r.plan_graph == w.plan_graph);
    CHECK(r.crossings.size() == 1);
    CHECK(drawings_equivalent(r.plan_graph, r.drawing, w.drawing));
  }
  SUBCASE("restrict to four pairwise-noncrossing edges is crossing-free") {
    ElementSubset s;
    s.vertices = {"1", "2", "3", "5"};
    s.edges = {"1-3", "2-3", "1-5", "2-5"};
    DrawingWitness r = restrict_witness(w, s);
    CHECK(r.crossings.empty());
    CHECK(r.plan_graph.num_edges() == 4);
    CHECK(validate_witness(r).ok);
  }
  SUBCASE("restriction smooths a crossing that lost one edge") {
    ElementSubset s;
    s.vertices = {"1", "2", "3", "4"};
    s.edges = {"1-2", "1-3", "2-3", "1-4", "2-4", "3-4"};
    DrawingWitness r = restrict_witness(w, s);
    CHECK(r.crossings.empty());
    CHECK(r.plan_graph.has_edge("1-2"));  // pieces recombined
    CHECK(!r.plan_graph.has_vertex("x"));
    CHECK(validate_witness(r).ok);
  }
  SUBCASE("non-subgraph subsets are rejected") {
    ElementSubset s;
    s.vertices = {"1"};
    s.edges = {"1-2"};
    CHECK_THROWS_AS(restrict_witness(w, s), PreconditionError);
  }
}

TEST_CASE("is_conforming") {
  DrawingWitness w = k5_witness();
  PredrawnGraph p = k5_instance();
  CHECK(is_conforming(w, p, 1));
  CHECK(!is_conforming(w, p, 0));
  SUBCASE("uncrossable edge crossed") {
    PredrawnGraph q = p;
    q.graph.edge_mut("1-2").uncrossable = true;
    CHECK(!is_conforming(w, q, 5));
  }
  SUBCASE("restriction to a predrawn triangle must match its drawing") {
    PredrawnGraph q = k5_instance();
    for (auto e : {"1-3", "2-3", "1-2"}) q.graph.edge_mut(e).uncrossable = false;
    for (auto e : {"1-3", "2-3"}) q.graph.edge_mut(e).predrawn = true;
    // predraw the 1,3,2 triangle without 1-2: a predrawn path
    q.predrawn.rotations["1"] = {{"1-3", 0}};
    q.predrawn.rotations["3"] = {{"2-3", 1}, {"1-3", 1}};
    q.predrawn.rotations["2"] = {{"2-3", 0}};
    q.predrawn.outer_face = FaceRef{"1-3", true, FaceSide::Left};
    CHECK(validate_predrawn(q).ok);
    CHECK(is_conforming(w, q, 1));
  }
}
