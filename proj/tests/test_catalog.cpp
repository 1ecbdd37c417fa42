#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pdcross/extension.hpp"
#include "pdcross/io.hpp"
#include "support/builders.hpp"

using namespace pdcross;
using namespace pdcross::testing;

namespace {

PredrawnGraph bare(const Multigraph& g) { return PredrawnGraph{g, {}, {}}; }

}  // namespace

TEST_CASE("extendable bases are rejected") {
  CHECK_THROWS_AS(build_catalog({bare(complete_graph(4))}), PreconditionError);
}

TEST_CASE("K3,3 is already split-free: singleton catalog") {
  ObstructionCatalog cat = build_catalog({bare(complete_bipartite(3, 3))});
  CHECK(cat.entries.size() == 1);
  CHECK(!cat.complete);
}

TEST_CASE("K5 closure contains K5 and its splittings") {
  ObstructionCatalog cat = build_catalog({bare(complete_graph(5))});
  CHECK(cat.entries.size() >= 2);
  bool has_k5 = false;
  for (const auto& e : cat.entries) {
    if (ppdg_isomorphic(e.pattern, bare(complete_graph(5)))) has_k5 = true;
    CHECK(!extend_planar(e.pattern).has_value());
  }
  CHECK(has_k5);
  CHECK(cat.entries.size() == 22);  // frozen closure size
}

TEST_CASE("subdivision-subgraph search") {
  PredrawnGraph k5 = bare(complete_graph(5));
  SUBCASE("identity") {
    CHECK(pd_subgraph_of_subdivision(k5, k5).has_value());
  }
  SUBCASE("subdivided K5 inside a larger host") {
    Multigraph host = complete_graph(5);
    // subdivide edge 1-2 through a new vertex m, and add a pendant
    host.remove_edge("1-2");
    host.add_vertex("m");
    host.add_vertex("p");
    host.add_edge(Edge{"1m", "1", "m"});
    host.add_edge(Edge{"m2", "m", "2"});
    host.add_edge(Edge{"3p", "3", "p"});
    auto w = pd_subgraph_of_subdivision(k5, bare(host));
    REQUIRE(w.has_value());
    CHECK(w->edge_paths.at("1-2").size() == 2);
  }
  SUBCASE("predrawn triangle does not embed into a predrawn path") {
    PredrawnGraph tri;
    tri.graph.add_vertex("a");
    tri.graph.add_vertex("b");
    tri.graph.add_vertex("c");
    for (auto [id, u, v] : {std::tuple{"ab", "a", "b"}, {"bc", "b", "c"}, {"ca", "c", "a"}}) {
      Edge e{id, u, v};
      e.predrawn = true;
      tri.graph.add_edge(e);
    }
    tri.predrawn.rotations["a"] = {{"ca", 1}, {"ab", 0}};
    tri.predrawn.rotations["b"] = {{"ab", 1}, {"bc", 0}};
    tri.predrawn.rotations["c"] = {{"bc", 1}, {"ca", 0}};
    tri.predrawn.outer_face = FaceRef{"ab", true, FaceSide::Right};

    PredrawnGraph path;
    for (auto v : {"x", "y", "z", "w"}) path.graph.add_vertex(v);
    for (auto [id, u, v] : {std::tuple{"xy", "x", "y"}, {"yz", "y", "z"}, {"zw", "z", "w"}}) {
      Edge e{id, u, v};
      e.predrawn = true;
      path.graph.add_edge(e);
    }
    // plus free edges making the graph rich enough
    path.graph.add_edge(Edge{"xz", "x", "z"});
    path.graph.add_edge(Edge{"xw", "x", "w"});
    path.predrawn.rotations["x"] = {{"xy", 0}};
    path.predrawn.rotations["y"] = {{"xy", 1}, {"yz", 0}};
    path.predrawn.rotations["z"] = {{"yz", 1}, {"zw", 0}};
    path.predrawn.rotations["w"] = {{"zw", 1}};
    path.predrawn.outer_face = FaceRef{"xy", true, FaceSide::Left};
    CHECK(!pd_subgraph_of_subdivision(tri, path).has_value());
  }
}

TEST_CASE("contains_obstruction") {
  ObstructionCatalog cat;
  cat.entries.push_back({"k5", "kuratowski", bare(complete_graph(5))});
  SUBCASE("a K5 subdivision is found") {
    Multigraph host = complete_graph(5);
    host.remove_edge("1-2");
    host.add_vertex("m");
    host.add_edge(Edge{"1m", "1", "m"});
    host.add_edge(Edge{"m2", "m", "2"});
    auto hit = contains_obstruction(bare(host), cat);
    REQUIRE(hit.has_value());
    CHECK(hit->first == 0);
  }
  SUBCASE("planar hosts trigger nothing") {
    CHECK(!contains_obstruction(bare(grid_graph(3, 3)), cat).has_value());
  }
  SUBCASE("an entry matches itself") {
    CHECK(contains_obstruction(bare(complete_graph(5)), cat).has_value());
  }
}

TEST_CASE("release applies to predrawn bridges") {
  // chain-a2 plus a predrawn pendant edge: the pendant is an H-bridge, so the
  // closure contains a released variant with a stranded predrawn vertex.
  PredrawnGraph p = load_instance("obstructions/chain-a2.pdg");
  p.graph.add_vertex("w");
  Edge pend{"cw", "c1", "w"};
  pend.predrawn = true;
  p.graph.add_edge(pend);
  p.predrawn.rotations["w"] = {{"cw", 1}};
  p.predrawn.rotations["c1"] = {{"r4", 1}, {"cw", 0}, {"r1", 0}};
  REQUIRE(validate_predrawn(p).ok);
  REQUIRE(!extend_planar(p).has_value());
  ObstructionCatalog cat = build_catalog({p});
  bool has_release = false;
  for (const auto& e : cat.entries) {
    if (e.provenance.find("release") != std::string::npos) has_release = true;
  }
  CHECK(has_release);
}

TEST_CASE("shipped catalog loads, closes, and is marked incomplete") {
  ObstructionCatalog cat = load_catalog(data_path("obstructions/manifest.json"));
  CHECK(!cat.complete);
  CHECK(cat.entries.size() == 9);  // frozen: K33 subsumes every K5 splitting
  for (const auto& e : cat.entries) {
    CHECK(validate_predrawn(e.pattern).ok);
  }
}
