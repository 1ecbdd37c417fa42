#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pdcross/multigraph.hpp"
#include "support/builders.hpp"

using namespace pdcross;
using namespace pdcross::testing;

TEST_CASE("basic construction and invariants") {
  Multigraph g;
  g.add_vertex("a");
  g.add_vertex("b");
  g.add_edge(Edge{"e1", "a", "b"});
  CHECK(g.num_vertices() == 2);
  CHECK(g.degree("a") == 1);
  CHECK_THROWS_AS(g.add_edge(Edge{"e1", "a", "b"}), PreconditionError);  // duplicate id
  CHECK_THROWS_AS(g.add_edge(Edge{"e2", "a", "a"}), PreconditionError);  // self-loop
  CHECK_THROWS_AS(g.add_edge(Edge{"e3", "a", "z"}), PreconditionError);  // unknown vertex
  Edge w{"e4", "a", "b"};
  w.weight = 0;
  CHECK_THROWS_AS(g.add_edge(w), PreconditionError);
  g.add_edge(Edge{"e5", "a", "b"});  // parallel edge is fine
  CHECK(g.num_edges() == 2);
}

TEST_CASE("components") {
  Multigraph g = complete_graph(3);
  g.add_vertex("z");
  auto comps = g.components();
  CHECK(comps.size() == 2);
  CHECK(g.component_index().at("2") == "1");
  CHECK(g.component_index().at("z") == "z");
}

TEST_CASE("piece ids") {
  CHECK(piece_id("e", 2) == "e#2");
  auto p = parse_piece("e#2");
  REQUIRE(p.has_value());
  CHECK(p->first == "e");
  CHECK(p->second == 2);
  CHECK(!parse_piece("plain").has_value());
  CHECK(!parse_piece("odd#").has_value());
  CHECK(!parse_piece("odd#x2").has_value());
  CHECK(original_of("a#0#3") == "a#0");
}

TEST_CASE("surgery_subdivide") {
  Multigraph g = complete_graph(2);  // single edge 1-2
  SUBCASE("all-zero plan is the identity") {
    auto [h, reg] = surgery_subdivide(g, {});
    CHECK(h == g);
    CHECK(reg.empty());
  }
  SUBCASE("count 3 gives a path of length 4 with ordinals 1..3") {
    auto [h, reg] = surgery_subdivide(g, {{"1-2", 3}});
    CHECK(h.num_vertices() == 5);
    CHECK(h.num_edges() == 4);
    CHECK(reg.size() == 3);
    int seen = 0;
    for (const auto& [aux, info] : reg) {
      CHECK(info.edge == "1-2");
      seen += info.ordinal;
    }
    CHECK(seen == 1 + 2 + 3);
  }
  SUBCASE("K5 with one aux per edge") {
    Multigraph k5 = complete_graph(5);
    std::map<EdgeId, int> plan;
    for (const Edge& e : k5.edges()) plan[e.id] = 1;
    auto [h, reg] = surgery_subdivide(k5, plan);
    CHECK(h.num_vertices() == 5 + 10);
    CHECK(h.num_edges() == 20);
  }
  SUBCASE("uncrossable edges cannot be subdivided") {
    Multigraph h;
    h.add_vertex("a");
    h.add_vertex("b");
    Edge e{"e", "a", "b"};
    e.uncrossable = true;
    h.add_edge(e);
    CHECK_THROWS_AS(surgery_subdivide(h, {{"e", 1}}), PreconditionError);
  }
}

TEST_CASE("surgery_identify") {
  Multigraph g;
  for (auto v : {"a", "b", "c", "d"}) g.add_vertex(v);
  Edge e1{"e1", "a", "b"};
  Edge e2{"e2", "c", "d"};
  e2.predrawn = true;
  g.add_edge(e1);
  g.add_edge(e2);
  auto [h, reg] = surgery_subdivide(g, {{"e1", 1}, {"e2", 1}});

  SUBCASE("empty pair list is the identity") {
    CHECK(surgery_identify(h, reg, {}) == h);
  }
  SUBCASE("one pair merges into a degree-4 vertex") {
    Multigraph m = surgery_identify(h, reg, {{"e1$1", "e2$1"}});
    CHECK(m.num_vertices() == h.num_vertices() - 1);
    CHECK(m.degree("e1$1") == 4);
  }
  SUBCASE("HxH identification is rejected") {
    Multigraph g2;
    for (auto v : {"a", "b", "c", "d"}) g2.add_vertex(v);
    Edge f1{"f1", "a", "b"};
    f1.predrawn = true;
    Edge f2{"f2", "c", "d"};
    f2.predrawn = true;
    g2.add_edge(f1);
    g2.add_edge(f2);
    auto [h2, reg2] = surgery_subdivide(g2, {{"f1", 1}, {"f2", 1}});
    CHECK_THROWS_WITH_AS(surgery_identify(h2, reg2, {{"f1$1", "f2$1"}}),
                         doctest::Contains("HxH"), PreconditionError);
  }
  SUBCASE("overlapping pairs are rejected") {
    Multigraph g3 = g;
    auto [h3, reg3] = surgery_subdivide(g3, {{"e1", 2}, {"e2", 1}});
    CHECK_THROWS_AS(surgery_identify(h3, reg3, {{"e1$1", "e2$1"}, {"e1$1", "e1$2"}}),
                    PreconditionError);
  }
  SUBCASE("subdivide then contract degree-2 auxiliaries recovers the input") {
    auto [h4, reg4] = surgery_subdivide(g, {{"e1", 2}});
    // contract: merge pieces across each degree-2 auxiliary
    Multigraph back;
    for (const VertexId& v : g.vertices()) back.add_vertex(v);
    // e1 pieces chain a -> e1$1 -> e1$2 -> b; contracting recovers one a-b edge
    CHECK(h4.degree("e1$1") == 2);
    CHECK(h4.degree("e1$2") == 2);
    CHECK(h4.num_edges() == g.num_edges() + 2);
  }
}
