#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pdcross/extension.hpp"
#include "pdcross/io.hpp"
#include "support/builders.hpp"

using namespace pdcross;
using namespace pdcross::testing;

TEST_CASE("tree-shaped predrawn part has no chain") {
  Multigraph g;
  for (auto v : {"a", "b", "c", "d"}) g.add_vertex(v);
  for (auto [id, u, v] : {std::tuple{"ab", "a", "b"}, {"bc", "b", "c"}, {"bd", "b", "d"}}) {
    Edge e{id, u, v};
    e.predrawn = true;
    g.add_edge(e);
  }
  PredrawnGraph p;
  p.graph = g;
  p.predrawn.rotations["a"] = {{"ab", 0}};
  p.predrawn.rotations["b"] = {{"ab", 1}, {"bc", 0}, {"bd", 0}};
  p.predrawn.rotations["c"] = {{"bc", 1}};
  p.predrawn.rotations["d"] = {{"bd", 1}};
  p.predrawn.outer_face = FaceRef{"ab", true, FaceSide::Left};
  REQUIRE(validate_predrawn(p).ok);
  CHECK(!find_alternating_chain(p).has_value());
}

TEST_CASE("the a=2 instance yields a chain and is not extendable") {
  PredrawnGraph p = load_instance("obstructions/chain-a2.pdg");
  REQUIRE(validate_predrawn(p).ok);
  CHECK(predrawn_side_of_cycle(p, {"r1", "r2", "r3", "r4"}, "s") ==
        predrawn_side_of_cycle(p, {"r1", "r2", "r3", "r4"}, "t"));
  auto w = find_alternating_chain(p);
  REQUIRE(w.has_value());
  CHECK(w->paths.size() == 2);
  CHECK(w->parity == 0);
  auto rep = validate_chain(p, *w);
  for (const auto& v : rep.violations) {
    CAPTURE(v.rule);
    CHECK(false);
  }
  CHECK(!extend_planar(p).has_value());
}

TEST_CASE("moving t outside kills the even chain and extendability returns") {
  PredrawnGraph p = load_instance("obstructions/chain-a2.pdg");
  p.predrawn.containment.erase(
      std::remove_if(p.predrawn.containment.begin(), p.predrawn.containment.end(),
                     [](const ContainmentRecord& r) { return r.component == "t"; }),
      p.predrawn.containment.end());
  REQUIRE(validate_predrawn(p).ok);
  CHECK(predrawn_side_of_cycle(p, {"r1", "r2", "r3", "r4"}, "s") !=
        predrawn_side_of_cycle(p, {"r1", "r2", "r3", "r4"}, "t"));
  CHECK(!find_alternating_chain(p).has_value());
  CHECK(extend_planar(p).has_value());
}

TEST_CASE("the a=3 instance yields an odd chain through a bare chord") {
  PredrawnGraph p = load_instance("obstructions/chain-a3.pdg");
  REQUIRE(validate_predrawn(p).ok);
  auto w = find_alternating_chain(p);
  REQUIRE(w.has_value());
  CHECK(w->paths.size() % 2 == 1);
  CHECK(validate_chain(p, *w).ok);
  CHECK(!extend_planar(p).has_value());
}

TEST_CASE("chain soundness: chain implies non-extendable on corpus variants") {
  for (const char* name : {"obstructions/chain-a2.pdg", "obstructions/chain-a3.pdg"}) {
    PredrawnGraph p = load_instance(name);
    if (find_alternating_chain(p).has_value()) {
      CHECK(!extend_planar(p).has_value());
    }
  }
}
