#include "pdcross/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace pdcross {

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

EdgeEnd parse_edge_end(const std::string& tok, int lineno) {
  auto dot = tok.rfind('.');
  if (dot == std::string::npos || dot + 2 != tok.size() ||
      (tok[dot + 1] != '0' && tok[dot + 1] != '1')) {
    throw ParseError("line " + std::to_string(lineno) + ": bad edge-end '" + tok + "'");
  }
  return EdgeEnd{tok.substr(0, dot), tok[dot + 1] - '0'};
}

FaceRef parse_face_ref(const std::vector<std::string>& t, std::size_t at, int lineno) {
  if (at + 3 > t.size()) {
    throw ParseError("line " + std::to_string(lineno) + ": truncated face reference");
  }
  FaceRef ref;
  ref.edge = t[at];
  if (t[at + 1] == "fwd") {
    ref.forward = true;
  } else if (t[at + 1] == "rev") {
    ref.forward = false;
  } else {
    throw ParseError("line " + std::to_string(lineno) + ": expected fwd|rev, got " + t[at + 1]);
  }
  if (t[at + 2] == "left") {
    ref.side = FaceSide::Left;
  } else if (t[at + 2] == "right") {
    ref.side = FaceSide::Right;
  } else {
    throw ParseError("line " + std::to_string(lineno) + ": expected left|right, got " + t[at + 2]);
  }
  return ref;
}

std::string face_ref_str(const FaceRef& r) {
  return r.edge + (r.forward ? " fwd" : " rev") + (r.side == FaceSide::Left ? " left" : " right");
}

}  // namespace

PdgFile parse_pdg(const std::string& text) {
  struct RawEdge {
    EdgeId id;
    VertexId u, v;
    bool predrawn = false, uncrossable = false;
    int weight = 1;
  };
  std::vector<std::string> vertex_lines;
  std::vector<RawEdge> edge_lines;
  struct RawCross {
    VertexId x;
    EdgeId e1;
    int p1;
    EdgeId e2;
    int p2;
  };
  std::vector<RawCross> cross_lines;
  struct RawRot {
    VertexId v;
    std::vector<EdgeEnd> ends;
  };
  std::vector<RawRot> rot_lines;
  std::optional<FaceRef> outer;
  std::vector<ContainmentRecord> contain_lines;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = tokens(line);
    if (t.empty() || t[0][0] == '#') continue;
    const std::string& kw = t[0];
    auto need = [&](std::size_t n) {
      if (t.size() < n + 1) {
        throw ParseError("line " + std::to_string(lineno) + ": '" + kw + "' needs " +
                         std::to_string(n) + " arguments");
      }
    };
    if (kw == "v") {
      need(1);
      if (t.size() != 2) throw ParseError("line " + std::to_string(lineno) + ": trailing tokens");
      vertex_lines.push_back(t[1]);
    } else if (kw == "e") {
      need(3);
      RawEdge e{t[1], t[2], t[3]};
      for (std::size_t i = 4; i < t.size(); ++i) {
        if (t[i] == "H") {
          e.predrawn = true;
        } else if (t[i] == "X") {
          e.uncrossable = true;
        } else if (t[i].rfind("w=", 0) == 0) {
          e.weight = std::stoi(t[i].substr(2));
        } else {
          throw ParseError("line " + std::to_string(lineno) + ": unknown edge flag " + t[i]);
        }
      }
      edge_lines.push_back(e);
    } else if (kw == "cross") {
      need(5);
      cross_lines.push_back(RawCross{t[1], t[2], std::stoi(t[3]), t[4], std::stoi(t[5])});
    } else if (kw == "rot") {
      need(1);
      RawRot r{t[1], {}};
      for (std::size_t i = 2; i < t.size(); ++i) r.ends.push_back(parse_edge_end(t[i], lineno));
      rot_lines.push_back(std::move(r));
    } else if (kw == "outer") {
      need(3);
      outer = parse_face_ref(t, 1, lineno);
    } else if (kw == "contain") {
      need(4);
      ContainmentRecord rec;
      rec.component = t[1];
      rec.host_face = parse_face_ref(t, 2, lineno);
      if (t.size() == 6) {
        if (t[5] != "mirrored") {
          throw ParseError("line " + std::to_string(lineno) + ": expected 'mirrored'");
        }
        rec.mirrored = true;
      } else if (t.size() != 5) {
        throw ParseError("line " + std::to_string(lineno) + ": trailing tokens");
      }
      contain_lines.push_back(rec);
    } else {
      throw ParseError("line " + std::to_string(lineno) + ": unknown keyword '" + kw + "'");
    }
  }

  PdgFile f;
  for (const auto& v : vertex_lines) f.graph.add_vertex(v);

  // Planarise: split each crossed edge at its ordered positions.
  std::map<EdgeId, std::vector<std::pair<int, VertexId>>> splits;
  for (const RawCross& c : cross_lines) {
    if (!f.graph.has_vertex(c.x)) throw ParseError("cross names undeclared vertex " + c.x);
    splits[c.e1].push_back({c.p1, c.x});
    splits[c.e2].push_back({c.p2, c.x});
    f.registry[c.x] = CrossingInfo{c.e1, c.p1, c.e2, c.p2};
  }
  for (auto& [e, ss] : splits) std::sort(ss.begin(), ss.end());
  for (const RawEdge& re : edge_lines) {
    Edge base;
    base.id = re.id;
    base.u = re.u;
    base.v = re.v;
    base.predrawn = re.predrawn;
    base.uncrossable = re.uncrossable;
    base.weight = re.weight;
    auto it = splits.find(re.id);
    if (it == splits.end()) {
      f.graph.add_edge(base);
      continue;
    }
    const auto& ss = it->second;
    for (std::size_t i = 0; i < ss.size(); ++i) {
      if (ss[i].first != static_cast<int>(i) + 1) {
        throw ParseError("cross positions on " + re.id + " must be 1..k");
      }
    }
    VertexId prev = re.u;
    for (std::size_t i = 0; i <= ss.size(); ++i) {
      Edge piece = base;
      piece.id = piece_id(re.id, static_cast<int>(i));
      piece.u = prev;
      piece.v = i < ss.size() ? ss[i].second : re.v;
      f.graph.add_edge(piece);
      prev = piece.v;
    }
  }

  for (const RawRot& r : rot_lines) {
    if (f.drawing.rotations.count(r.v)) throw ParseError("duplicate rot line for " + r.v);
    f.drawing.rotations[r.v] = r.ends;
  }
  f.drawing.outer_face = outer;
  f.drawing.containment = contain_lines;
  return f;
}

PdgFile load_pdg(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_pdg(buf.str());
}

std::string serialize_pdg(const Multigraph& g, const PlaneDrawing& d,
                          const CrossingRegistry& registry) {
  std::ostringstream out;
  std::set<VertexId> crossing_vertices;
  for (const auto& [x, info] : registry) crossing_vertices.insert(x);
  for (const VertexId& v : g.vertices()) out << "v " << v << "\n";

  // Reassemble original edges from piece chains. A parsed piece group is a
  // planarised edge only when it is contiguous and every internal junction is
  // a registry vertex; otherwise the ids are taken literally.
  std::map<EdgeId, std::map<int, EdgeId>> chains;
  {
    std::map<EdgeId, std::map<int, EdgeId>> groups;
    for (const Edge& e : g.edges()) {
      auto p = parse_piece(e.id);
      if (p) {
        groups[p->first][p->second] = e.id;
      } else {
        chains[e.id][0] = e.id;
      }
    }
    for (const auto& [orig, group] : groups) {
      bool contiguous = group.begin()->first == 0 &&
                        group.rbegin()->first == static_cast<int>(group.size()) - 1;
      bool junctions_ok = group.size() >= 2;
      const Edge* prev = nullptr;
      for (const auto& [seg, id] : group) {
        const Edge& e = g.edge(id);
        if (prev) {
          if (prev->v != e.u || !crossing_vertices.count(e.u)) junctions_ok = false;
        }
        prev = &e;
      }
      if (contiguous && junctions_ok && !chains.count(orig)) {
        chains[orig] = group;
      } else {
        for (const auto& [seg, id] : group) chains[id][0] = id;
      }
    }
  }
  for (const auto& [orig, chain] : chains) {
    const Edge& first = g.edge(chain.begin()->second);
    const Edge& last = g.edge(chain.rbegin()->second);
    out << "e " << orig << " " << first.u << " " << last.v;
    if (first.predrawn) out << " H";
    if (first.uncrossable) out << " X";
    if (first.weight != 1) out << " w=" << first.weight;
    out << "\n";
  }
  for (const auto& [x, info] : registry) {
    out << "cross " << x << " " << info.edge_a << " " << info.pos_a << " " << info.edge_b << " "
        << info.pos_b << "\n";
  }
  for (const auto& [v, rot] : d.rotations) {
    out << "rot " << v;
    for (const EdgeEnd& ee : rot) out << " " << ee.edge << "." << ee.end;
    out << "\n";
  }
  if (d.outer_face) out << "outer " << face_ref_str(*d.outer_face) << "\n";
  std::vector<ContainmentRecord> recs = d.containment;
  std::sort(recs.begin(), recs.end(),
            [](const auto& a, const auto& b) { return a.component < b.component; });
  for (const ContainmentRecord& r : recs) {
    out << "contain " << r.component << " " << face_ref_str(r.host_face)
        << (r.mirrored ? " mirrored" : "") << "\n";
  }
  return out.str();
}

void save_pdg(const std::string& path, const Multigraph& g, const PlaneDrawing& d,
              const CrossingRegistry& registry) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << serialize_pdg(g, d, registry);
}

PredrawnGraph predrawn_from_file(const PdgFile& f) {
  return PredrawnGraph{f.graph, f.drawing, f.registry};
}

std::string serialize_predrawn(const PredrawnGraph& p) {
  return serialize_pdg(p.graph, p.predrawn, p.registry);
}

DrawingWitness witness_from_file(const PdgFile& f) {
  DrawingWitness w;
  w.plan_graph = f.graph;
  w.drawing = f.drawing;
  for (const auto& [x, info] : f.registry) {
    CrossingRecord rec;
    rec.vertex = x;
    rec.edge_a = info.edge_a;
    rec.edge_b = info.edge_b;
    long long wa = f.graph.edge(piece_id(info.edge_a, 0)).weight;
    long long wb = f.graph.edge(piece_id(info.edge_b, 0)).weight;
    rec.cost = wa * wb;
    w.crossings.push_back(rec);
  }
  return w;
}

std::string serialize_witness(const DrawingWitness& w) {
  Planarisation pl = planarise(w);
  return serialize_pdg(w.plan_graph, w.drawing, pl.registry);
}

}  // namespace pdcross
