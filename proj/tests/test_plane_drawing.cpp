#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pdcross/plane_drawing.hpp"
#include "support/builders.hpp"

using namespace pdcross;
using namespace pdcross::testing;

namespace {

// Planar K4: triangle 1,2,3 with 4 in the middle. Clockwise rotations.
Multigraph k4() { return complete_graph(4); }

PlaneDrawing k4_drawing() {
  PlaneDrawing d;
  d.rotations["1"] = {{"1-3", 0}, {"1-4", 0}, {"1-2", 0}};
  d.rotations["2"] = {{"1-2", 1}, {"2-4", 0}, {"2-3", 0}};
  d.rotations["3"] = {{"2-3", 1}, {"3-4", 0}, {"1-3", 1}};
  d.rotations["4"] = {{"3-4", 1}, {"2-4", 1}, {"1-4", 1}};
  d.outer_face = FaceRef{"1-2", true, FaceSide::Right};
  return d;
}

// Bowtie: triangles a,b,c and c,d,e sharing c, plus a floating edge p-q.
struct Bowtie {
  Multigraph g;
  PlaneDrawing base;  // without the floating component placed
};

Bowtie bowtie() {
  Bowtie bt;
  for (auto v : {"a", "b", "c", "d", "e", "p", "q"}) bt.g.add_vertex(v);
  bt.g.add_edge(Edge{"ab", "a", "b"});
  bt.g.add_edge(Edge{"bc", "b", "c"});
  bt.g.add_edge(Edge{"ca", "c", "a"});
  bt.g.add_edge(Edge{"cd", "c", "d"});
  bt.g.add_edge(Edge{"de", "d", "e"});
  bt.g.add_edge(Edge{"ec", "e", "c"});
  bt.g.add_edge(Edge{"pq", "p", "q"});
  PlaneDrawing& d = bt.base;
  d.rotations["a"] = {{"ca", 1}, {"ab", 0}};
  d.rotations["b"] = {{"ab", 1}, {"bc", 0}};
  d.rotations["c"] = {{"ec", 1}, {"bc", 1}, {"ca", 0}, {"cd", 0}};
  d.rotations["d"] = {{"de", 0}, {"cd", 1}};
  d.rotations["e"] = {{"ec", 0}, {"de", 1}};
  d.rotations["p"] = {{"pq", 0}};
  d.rotations["q"] = {{"pq", 1}};
  d.outer_face = FaceRef{"ab", true, FaceSide::Right};
  return bt;
}

}  // namespace

TEST_CASE("triangle with consistent rotations validates") {
  auto spec = plane_cycle({"a", "b", "c"});
  auto rep = validate_drawing(spec.graph, spec.drawing);
  CHECK(rep.ok);
}

TEST_CASE("duplicate edge-end is a violation") {
  auto spec = plane_cycle({"a", "b", "c"});
  spec.drawing.rotations["a"].push_back(spec.drawing.rotations["a"].front());
  auto rep = validate_drawing(spec.graph, spec.drawing);
  REQUIRE(!rep.ok);
  bool found = false;
  for (const auto& v : rep.violations) {
    if (v.rule == "duplicate edge-end") found = true;
  }
  CHECK(found);
}

TEST_CASE("containment cycle is a violation") {
  Multigraph g;
  for (auto v : {"a1", "a2", "b1", "b2"}) g.add_vertex(v);
  g.add_edge(Edge{"ea", "a1", "a2"});
  g.add_edge(Edge{"eb", "b1", "b2"});
  PlaneDrawing d;
  d.rotations["a1"] = {{"ea", 0}};
  d.rotations["a2"] = {{"ea", 1}};
  d.rotations["b1"] = {{"eb", 0}};
  d.rotations["b2"] = {{"eb", 1}};
  d.outer_face = FaceRef{"ea", true, FaceSide::Left};
  d.containment.push_back({"a1", FaceRef{"eb", true, FaceSide::Left}, false});
  d.containment.push_back({"b1", FaceRef{"ea", true, FaceSide::Left}, false});
  auto rep = validate_drawing(g, d);
  REQUIRE(!rep.ok);
  bool found = false;
  for (const auto& v : rep.violations) {
    if (v.rule == "containment not a forest") found = true;
  }
  CHECK(found);
}

TEST_CASE("K4 drawing traces four faces") {
  auto g = k4();
  auto d = k4_drawing();
  CHECK(validate_drawing(g, d).ok);
  auto res = ResolvedDrawing::resolve(g, d);
  CHECK(res.num_faces() == 4);
  // Left of 1->2 is the 1,2,4 triangle.
  int f = res.face_of(DirEdge{"1-2", true});
  CHECK(res.face_walk(f).size() == 3);
}

TEST_CASE("K4 rotation system that is nonplanar fails Euler") {
  auto g = k4();
  auto d = k4_drawing();
  std::swap(d.rotations["4"][0], d.rotations["4"][1]);
  auto rep = validate_drawing(g, d);
  REQUIRE(!rep.ok);
  CHECK(rep.violations.front().rule == "component not planar (Euler check)");
}

TEST_CASE("equivalence: reflexive and mirror-invariant") {
  auto g = k4();
  auto d = k4_drawing();
  EquivalenceWitness w;
  CHECK(drawings_equivalent(g, d, d, &w));
  CHECK(!w.mirrored);
  CHECK(drawings_equivalent(g, d, reflect(d), &w));
  CHECK(w.mirrored);
}

TEST_CASE("equivalence: outer face choice matters") {
  auto g = k4();
  auto d1 = k4_drawing();
  auto d2 = k4_drawing();
  d2.outer_face = FaceRef{"1-2", true, FaceSide::Left};  // the 1,2,4 triangle instead
  CHECK(!drawings_equivalent(g, d1, d2));
}

TEST_CASE("equivalence: same region through different darts") {
  auto bt = bowtie();
  PlaneDrawing d1 = bt.base;
  d1.containment.push_back({"p", FaceRef{"ab", true, FaceSide::Left}, false});
  PlaneDrawing d2 = bt.base;
  // bc forward left is the same triangle interior as ab forward left
  d2.containment.push_back({"p", FaceRef{"bc", true, FaceSide::Left}, false});
  CHECK(validate_drawing(bt.g, d1).ok);
  CHECK(drawings_equivalent(bt.g, d1, d2));
}

TEST_CASE("equivalence: component-in-face placement distinguishes drawings") {
  auto bt = bowtie();
  PlaneDrawing d1 = bt.base;
  d1.containment.push_back({"p", FaceRef{"ab", true, FaceSide::Left}, false});
  PlaneDrawing d2 = bt.base;
  d2.containment.push_back({"p", FaceRef{"cd", true, FaceSide::Right}, false});
  CHECK(validate_drawing(bt.g, d2).ok);
  CHECK(!drawings_equivalent(bt.g, d1, d2));
  // but each one is equivalent to its own global mirror
  CHECK(drawings_equivalent(bt.g, d1, reflect(d1)));
  CHECK(drawings_equivalent(bt.g, d2, reflect(d2)));
}

TEST_CASE("mirrored flag against reversed rotations is the same drawing") {
  auto bt = bowtie();
  PlaneDrawing d1 = bt.base;
  d1.containment.push_back({"p", FaceRef{"ab", true, FaceSide::Left}, false});
  PlaneDrawing d2 = d1;
  // Reverse the floating component's rotations and set mirrored: same drawing.
  std::reverse(d2.rotations["p"].begin(), d2.rotations["p"].end());
  std::reverse(d2.rotations["q"].begin(), d2.rotations["q"].end());
  d2.containment.back().mirrored = true;
  CHECK(drawings_equivalent(bt.g, d1, d2));
}

TEST_CASE("isolated predrawn vertices live in regions") {
  Multigraph g;
  for (auto v : {"a", "b", "c", "s"}) g.add_vertex(v);
  g.add_edge(Edge{"ab", "a", "b"});
  g.add_edge(Edge{"bc", "b", "c"});
  g.add_edge(Edge{"ca", "c", "a"});
  PlaneDrawing inside;
  inside.rotations["a"] = {{"ca", 1}, {"ab", 0}};
  inside.rotations["b"] = {{"ab", 1}, {"bc", 0}};
  inside.rotations["c"] = {{"bc", 1}, {"ca", 0}};
  inside.rotations["s"] = {};
  inside.outer_face = FaceRef{"ab", true, FaceSide::Right};
  inside.containment.push_back({"s", FaceRef{"ab", true, FaceSide::Left}, false});
  PlaneDrawing outside = inside;
  outside.containment.clear();  // s floats beside the triangle
  CHECK(validate_drawing(g, inside).ok);
  CHECK(validate_drawing(g, outside).ok);
  CHECK(!drawings_equivalent(g, inside, outside));
  auto res = ResolvedDrawing::resolve(g, inside);
  CHECK(res.region_of(res.node_of_isolated("s")) ==
        res.region_of(res.face_of(FaceRef{"ab", true, FaceSide::Left})));
}

TEST_CASE("equivalence is an equivalence relation on a small corpus") {
  auto bt = bowtie();
  std::vector<PlaneDrawing> corpus;
  for (auto ref : {FaceRef{"ab", true, FaceSide::Left}, FaceRef{"cd", true, FaceSide::Right},
                   FaceRef{"ab", true, FaceSide::Right}}) {
    PlaneDrawing d = bt.base;
    d.containment.push_back({"p", ref, false});
    corpus.push_back(d);
    corpus.push_back(reflect(d));
  }
  std::size_t n = corpus.size();
  std::vector<std::vector<bool>> eq(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      eq[i][j] = drawings_equivalent(bt.g, corpus[i], corpus[j]);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(eq[i][i]);
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(eq[i][j] == eq[j][i]);
      for (std::size_t k = 0; k < n; ++k) {
        if (eq[i][j] && eq[j][k]) CHECK(eq[i][k]);
      }
    }
  }
}
