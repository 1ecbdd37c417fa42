#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pdcross/io.hpp"
#include "support/builders.hpp"

using namespace pdcross;
using namespace pdcross::testing;

TEST_CASE("parse a plain instance") {
  std::string text = R"(# a triangle with one free chord
v a
v b
v c
v d
e ab a b H
e bc b c H
e ca c a H
e ad a d
rot a ca.1 ab.0
rot b ab.1 bc.0
rot c bc.1 ca.0
outer ab fwd right
)";
  PdgFile f = parse_pdg(text);
  CHECK(f.graph.num_vertices() == 4);
  CHECK(f.graph.num_edges() == 4);
  CHECK(f.graph.edge("ab").predrawn);
  CHECK(!f.graph.edge("ad").predrawn);
  CHECK(f.drawing.rotations.size() == 3);
  REQUIRE(f.drawing.outer_face.has_value());
  CHECK(f.drawing.outer_face->side == FaceSide::Right);
}

TEST_CASE("cross lines planarise at parse time") {
  std::string text = R"(v a
v b
v c
v d
v x
e e1 a b H
e e2 c d H
cross x e1 1 e2 1
rot a e1#0.0
rot b e1#1.1
rot c e2#0.0
rot d e2#1.1
rot x e1#1.0 e2#1.0 e1#0.1 e2#0.1
outer e1#0 fwd left
)";
  PdgFile f = parse_pdg(text);
  CHECK(f.graph.num_edges() == 4);
  CHECK(f.graph.has_edge("e1#0"));
  CHECK(f.graph.edge("e1#0").predrawn);
  CHECK(f.graph.edge("e1#1").v == "b");
  CHECK(f.graph.edge("e1#0").v == "x");
  REQUIRE(f.registry.count("x"));
  CHECK(f.registry.at("x").edge_a == "e1");
  PredrawnGraph p = predrawn_from_file(f);
  CHECK(validate_predrawn(p).ok);
  CHECK(p.predrawn_crossing_cost() == 1);
}

TEST_CASE("strictness") {
  CHECK_THROWS_AS(parse_pdg("frobnicate a b\n"), ParseError);
  CHECK_THROWS_AS(parse_pdg("v a\nv b\ne e a b\nrot a e.2\n"), ParseError);
  CHECK_THROWS_AS(parse_pdg("v a\nv b\ne e a b Q\n"), ParseError);
  CHECK_THROWS_AS(parse_pdg("outer e fwd middle\n"), ParseError);
}

TEST_CASE("round trip") {
  std::string text = R"(v a
v b
v c
v d
v x
e e1 a b H w=3
e e2 c d H
e free a c
cross x e1 1 e2 1
rot a e1#0.0
rot b e1#1.1
rot c e2#0.0
rot d e2#1.1
rot x e1#1.0 e2#1.0 e1#0.1 e2#0.1
outer e1#0 fwd left
)";
  PdgFile f = parse_pdg(text);
  std::string out = serialize_pdg(f.graph, f.drawing, f.registry);
  PdgFile f2 = parse_pdg(out);
  CHECK(f.graph == f2.graph);
  CHECK(f.drawing == f2.drawing);
  CHECK(f.registry.size() == f2.registry.size());
}
