#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>

#include "pdcross/instances.hpp"

namespace pdcross {

namespace {

struct Point {
  double x = 0, y = 0;
};

/// Barycentric layout of one component: pin the outer-face walk on a circle,
/// relax everything else toward the average of its neighbours.
std::map<VertexId, Point> layout_component(const Multigraph& g, const ResolvedDrawing& res,
                                           const std::set<VertexId>& comp, int outer_face) {
  std::map<VertexId, Point> pos;
  std::vector<VertexId> boundary;
  if (outer_face >= 0) {
    for (const DirEdge& de : res.face_walk(outer_face)) {
      const Edge& e = g.edge(de.edge);
      VertexId at = de.forward ? e.v : e.u;
      if (std::find(boundary.begin(), boundary.end(), at) == boundary.end()) {
        boundary.push_back(at);
      }
    }
  }
  if (boundary.empty()) boundary.assign(comp.begin(), comp.end());
  double n = static_cast<double>(boundary.size());
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    double ang = 2.0 * 3.14159265358979 * static_cast<double>(i) / std::max(1.0, n);
    pos[boundary[i]] = {std::cos(ang), -std::sin(ang)};
  }
  for (const VertexId& v : comp) {
    if (!pos.count(v)) pos[v] = {0.0, 0.0};
  }
  std::set<VertexId> pinned(boundary.begin(), boundary.end());
  for (int iter = 0; iter < 220; ++iter) {
    for (const VertexId& v : comp) {
      if (pinned.count(v)) continue;
      double sx = 0, sy = 0;
      int deg = 0;
      for (const EdgeId& e : g.incident_edges(v)) {
        const VertexId& o = g.edge(e).other(v);
        if (!pos.count(o)) continue;
        sx += pos[o].x;
        sy += pos[o].y;
        ++deg;
      }
      if (deg) pos[v] = {sx / deg, sy / deg};
    }
  }
  return pos;
}

}  // namespace

void emit_svg(std::ostream& out, const Multigraph& g, const PlaneDrawing& d,
              const std::vector<CrossingRecord>& crossings) {
  ResolvedDrawing res = ResolvedDrawing::resolve(g, d);
  std::map<VertexId, std::set<VertexId>> comps;
  for (const auto& [v, c] : res.component_of()) comps[c].insert(v);

  // component placement: roots side by side, children scaled into the
  // centroid of their host face
  std::map<VertexId, Point> centre;
  std::map<VertexId, double> radius;
  std::map<VertexId, VertexId> parent;
  std::map<VertexId, Point> host_hint;  // where the host face sits
  for (const ContainmentRecord& rec : d.containment) {
    parent[res.component_of().at(rec.component)] =
        res.component_of().at(g.edge(rec.host_face.edge).u);
  }
  double cursor = 0;
  std::map<VertexId, Point> pos;
  // process roots then children (children shrink into their parents)
  std::vector<VertexId> order;
  std::function<void(const VertexId&)> visit = [&](const VertexId& c) {
    if (std::find(order.begin(), order.end(), c) != order.end()) return;
    auto it = parent.find(c);
    if (it != parent.end()) visit(it->second);
    order.push_back(c);
  };
  for (const auto& [c, vs] : comps) visit(c);

  for (const VertexId& c : order) {
    const auto& vs = comps.at(c);
    int outer_face = -1;
    if (res.outer_region() >= 0) {
      for (int f = 0; f < res.num_faces(); ++f) {
        if (res.component_of_edge(res.face_walk(f).front().edge) == c &&
            res.region_of(f) == res.outer_region()) {
          outer_face = f;
        }
      }
    }
    std::map<VertexId, Point> local = layout_component(g, res, vs, outer_face);
    double r;
    Point at;
    if (!parent.count(c)) {
      r = 100.0;
      at = {cursor + 120.0, 150.0};
      cursor += 240.0;
    } else {
      // centre of the parent copy, shrunk
      VertexId pc = parent.at(c);
      r = radius.at(pc) * 0.28;
      at = {centre.at(pc).x, centre.at(pc).y};
      // nudge by host-face centroid when available
      // (aesthetics only; overlapping nests stay readable enough)
      at.y += radius.at(pc) * 0.1;
    }
    centre[c] = at;
    radius[c] = r;
    for (const auto& [v, pnt] : local) {
      pos[v] = {at.x + pnt.x * r, at.y + pnt.y * r};
    }
  }

  double width = std::max(300.0, cursor + 40.0);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"300\" viewBox=\"0 0 " << width << " 300\">\n";
  out << std::fixed << std::setprecision(2);
  for (const Edge& e : g.edges()) {
    if (!d.drawn_edges().count(e.id)) continue;
    const Point& a = pos.at(e.u);
    const Point& b = pos.at(e.v);
    out << "  <line x1=\"" << a.x << "\" y1=\"" << a.y << "\" x2=\"" << b.x << "\" y2=\""
        << b.y << "\" stroke=\"" << (e.predrawn ? "#1f4e9c" : "#3a3a3a") << "\" stroke-width=\""
        << (e.predrawn ? 2.2 : 1.2) << "\"/>\n";
  }
  std::set<VertexId> xs;
  for (const CrossingRecord& rec : crossings) xs.insert(rec.vertex);
  for (const auto& [v, pnt] : pos) {
    if (xs.count(v)) {
      out << "  <g stroke=\"#c22\" stroke-width=\"1.6\">"
          << "<line x1=\"" << pnt.x - 4 << "\" y1=\"" << pnt.y - 4 << "\" x2=\"" << pnt.x + 4
          << "\" y2=\"" << pnt.y + 4 << "\"/>"
          << "<line x1=\"" << pnt.x - 4 << "\" y1=\"" << pnt.y + 4 << "\" x2=\"" << pnt.x + 4
          << "\" y2=\"" << pnt.y - 4 << "\"/></g>\n";
    } else {
      out << "  <circle cx=\"" << pnt.x << "\" cy=\"" << pnt.y
          << "\" r=\"2.6\" fill=\"#111\"/>\n";
      out << "  <text x=\"" << pnt.x + 4 << "\" y=\"" << pnt.y - 4
          << "\" font-size=\"8\" fill=\"#555\">" << v << "</text>\n";
    }
  }
  out << "</svg>\n";
}

}  // namespace pdcross
