#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pdcross/extension.hpp"
#include "pdcross/io.hpp"
#include "support/builders.hpp"
#include "support/oracles.hpp"

using namespace pdcross;
using namespace pdcross::testing;

namespace {

PredrawnGraph bare(const Multigraph& g) {
  return PredrawnGraph{g, {}, {}};
}

}  // namespace

TEST_CASE("planar graphs with empty predrawn part extend") {
  for (auto g : {complete_graph(4), grid_graph(3, 3), complete_bipartite(2, 3)}) {
    auto d = extend_planar(bare(g));
    REQUIRE(d.has_value());
    CHECK(validate_drawing(g, *d).ok);
    DrawingWitness w = witness_for_plane_drawing(g, *d);
    CHECK(is_conforming(w, bare(g), 0));
  }
}

TEST_CASE("K5 and K3,3 do not extend; rotation enumeration agrees") {
  Multigraph k5 = complete_graph(5);
  CHECK(!extend_planar(bare(k5)).has_value());
  CHECK(!genus0_by_rotations(k5));
  Multigraph k33 = complete_bipartite(3, 3);
  CHECK(!extend_planar(bare(k33)).has_value());
  CHECK(!genus0_by_rotations(k33));
}

TEST_CASE("agrees with the independent planarity oracle on small graphs") {
  std::vector<std::pair<int, int>> all_pairs;
  for (int i = 1; i <= 5; ++i) {
    for (int j = i + 1; j <= 5; ++j) all_pairs.push_back({i, j});
  }
  int checked = 0;
  for (unsigned long long mask = 0; mask < (1ULL << all_pairs.size()); mask += 7) {
    Multigraph g;
    for (int v = 1; v <= 5; ++v) g.add_vertex(std::to_string(v));
    for (std::size_t b = 0; b < all_pairs.size(); ++b) {
      if (mask & (1ULL << b)) {
        auto [i, j] = all_pairs[b];
        g.add_edge(Edge{k_edge(i, j), std::to_string(i), std::to_string(j)});
      }
    }
    bool ours = extend_planar(bare(g)).has_value();
    bool oracle = planar_demoucron(g);
    CAPTURE(mask);
    REQUIRE(ours == oracle);
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("respects a fixed predrawn drawing") {
  Multigraph g;
  for (auto v : {"a", "b", "c", "d"}) g.add_vertex(v);
  for (auto [id, u, v] : {std::tuple{"ab", "a", "b"},
                          {"bc", "b", "c"},
                          {"cd", "c", "d"},
                          {"da", "d", "a"}}) {
    Edge e{id, u, v};
    e.predrawn = true;
    g.add_edge(e);
  }
  g.add_edge(Edge{"ac", "a", "c"});
  g.add_edge(Edge{"bd", "b", "d"});
  PredrawnGraph p;
  p.graph = g;
  p.predrawn.rotations["a"] = {{"da", 1}, {"ab", 0}};
  p.predrawn.rotations["b"] = {{"ab", 1}, {"bc", 0}};
  p.predrawn.rotations["c"] = {{"bc", 1}, {"cd", 0}};
  p.predrawn.rotations["d"] = {{"cd", 1}, {"da", 0}};
  p.predrawn.outer_face = FaceRef{"ab", true, FaceSide::Right};
  REQUIRE(validate_predrawn(p).ok);
  auto d = extend_planar(p);
  REQUIRE(d.has_value());
  DrawingWitness w = witness_for_plane_drawing(g, *d);
  CHECK(is_conforming(w, p, 0));

  PredrawnGraph q = p;
  q.graph.edge_mut("ac").predrawn = true;
  q.predrawn.rotations["a"] = {{"da", 1}, {"ac", 0}, {"ab", 0}};
  q.predrawn.rotations["c"] = {{"bc", 1}, {"ac", 1}, {"cd", 0}};
  REQUIRE(validate_predrawn(q).ok);
  auto d2 = extend_planar(q);
  REQUIRE(d2.has_value());
  CHECK(is_conforming(witness_for_plane_drawing(g, *d2), q, 0));
}

TEST_CASE("a predrawn placement can force non-extendability") {
  // Predrawn triangle, s frozen inside, t outside, edge s-t in G.
  Multigraph g;
  for (auto v : {"a", "b", "c", "s", "t"}) g.add_vertex(v);
  for (auto [id, u, v] : {std::tuple{"ab", "a", "b"}, {"bc", "b", "c"}, {"ca", "c", "a"}}) {
    Edge e{id, u, v};
    e.predrawn = true;
    g.add_edge(e);
  }
  g.add_edge(Edge{"st", "s", "t"});
  PredrawnGraph p;
  p.graph = g;
  p.predrawn.rotations["a"] = {{"ca", 1}, {"ab", 0}};
  p.predrawn.rotations["b"] = {{"ab", 1}, {"bc", 0}};
  p.predrawn.rotations["c"] = {{"bc", 1}, {"ca", 0}};
  p.predrawn.rotations["s"] = {};
  p.predrawn.rotations["t"] = {};
  p.predrawn.outer_face = FaceRef{"ab", true, FaceSide::Right};
  p.predrawn.containment.push_back({"s", FaceRef{"ab", true, FaceSide::Left}, false});
  REQUIRE(validate_predrawn(p).ok);
  CHECK(!extend_planar(p).has_value());

  PredrawnGraph q = p;
  q.predrawn.containment.push_back({"t", FaceRef{"ab", true, FaceSide::Left}, false});
  auto d = extend_planar(q);
  REQUIRE(d.has_value());
  CHECK(is_conforming(witness_for_plane_drawing(g, *d), q, 0));
}

TEST_CASE("disconnected instances branch over containment") {
  Multigraph g;
  for (auto v : {"a1", "a2", "a3", "b1", "b2", "b3", "z"}) g.add_vertex(v);
  auto tri = [&](const char* p1, const char* p2, const char* p3, const char* prefix) {
    for (auto [id, u, v] : {std::tuple{std::string(prefix) + "1", p1, p2},
                            {std::string(prefix) + "2", p2, p3},
                            {std::string(prefix) + "3", p3, p1}}) {
      Edge e{id, u, v};
      e.predrawn = true;
      g.add_edge(e);
    }
  };
  tri("a1", "a2", "a3", "ta");
  tri("b1", "b2", "b3", "tb");
  g.add_edge(Edge{"za", "z", "a1"});
  g.add_edge(Edge{"zb", "z", "b1"});
  PredrawnGraph p;
  p.graph = g;
  p.predrawn.rotations["a1"] = {{"ta3", 1}, {"ta1", 0}};
  p.predrawn.rotations["a2"] = {{"ta1", 1}, {"ta2", 0}};
  p.predrawn.rotations["a3"] = {{"ta2", 1}, {"ta3", 0}};
  p.predrawn.rotations["b1"] = {{"tb3", 1}, {"tb1", 0}};
  p.predrawn.rotations["b2"] = {{"tb1", 1}, {"tb2", 0}};
  p.predrawn.rotations["b3"] = {{"tb2", 1}, {"tb3", 0}};
  p.predrawn.outer_face = FaceRef{"ta1", true, FaceSide::Right};
  REQUIRE(validate_predrawn(p).ok);
  auto d = extend_planar(p);
  REQUIRE(d.has_value());
  CHECK(is_conforming(witness_for_plane_drawing(g, *d), p, 0));

  // Nest the b-triangle inside the a-triangle; z still reaches both.
  PredrawnGraph q = p;
  q.predrawn.containment.push_back({"b1", FaceRef{"ta1", true, FaceSide::Left}, false});
  auto d2 = extend_planar(q);
  REQUIRE(d2.has_value());
  CHECK(is_conforming(witness_for_plane_drawing(g, *d2), q, 0));
}

TEST_CASE("budget failures are loud") {
  Multigraph big = grid_graph(6, 6);
  CHECK_THROWS_AS(extend_planar(bare(big)), BudgetExceededError);
  ExtensionOptions opts;
  opts.budget.max_vertices = 100;
  opts.budget.max_nodes = 5;
  Multigraph k5 = complete_graph(5);
  CHECK_THROWS_AS(extend_planar(bare(k5), opts), BudgetExceededError);
}
