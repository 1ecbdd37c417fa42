#include "pdcross/multigraph.hpp"

#include <algorithm>
#include <queue>

namespace pdcross {

void Multigraph::add_vertex(const VertexId& v) {
  if (v.empty()) throw PreconditionError("empty vertex id");
  vertex_set_.insert(v);
}

void Multigraph::add_edge(Edge e) {
  if (edge_index_.count(e.id)) throw PreconditionError("duplicate edge id: " + e.id);
  if (!has_vertex(e.u) || !has_vertex(e.v)) {
    throw PreconditionError("edge " + e.id + " references undeclared vertex");
  }
  if (e.u == e.v) throw PreconditionError("self-loop rejected: " + e.id);
  if (e.weight < 1) throw PreconditionError("edge " + e.id + " has weight < 1");
  edge_index_[e.id] = edges_.size();
  edges_.push_back(std::move(e));
}

void Multigraph::remove_edge(const EdgeId& id) {
  auto it = edge_index_.find(id);
  if (it == edge_index_.end()) throw PreconditionError("no such edge: " + id);
  edges_.erase(edges_.begin() + static_cast<long>(it->second));
  edge_index_.clear();
  for (std::size_t i = 0; i < edges_.size(); ++i) edge_index_[edges_[i].id] = i;
}

void Multigraph::remove_vertex(const VertexId& v) {
  if (!has_vertex(v)) throw PreconditionError("no such vertex: " + v);
  std::vector<EdgeId> inc = incident_edges(v);
  for (const EdgeId& e : inc) remove_edge(e);
  vertex_set_.erase(v);
}

const Edge& Multigraph::edge(const EdgeId& e) const {
  auto it = edge_index_.find(e);
  if (it == edge_index_.end()) throw PreconditionError("no such edge: " + e);
  return edges_[it->second];
}

Edge& Multigraph::edge_mut(const EdgeId& e) {
  auto it = edge_index_.find(e);
  if (it == edge_index_.end()) throw PreconditionError("no such edge: " + e);
  return edges_[it->second];
}

std::vector<EdgeId> Multigraph::incident_edges(const VertexId& v) const {
  std::vector<EdgeId> out;
  for (const Edge& e : edges_) {
    if (e.u == v || e.v == v) out.push_back(e.id);
  }
  return out;
}

std::vector<VertexId> Multigraph::neighbors(const VertexId& v) const {
  std::set<VertexId> out;
  for (const EdgeId& e : incident_edges(v)) out.insert(edge(e).other(v));
  return {out.begin(), out.end()};
}

int Multigraph::degree(const VertexId& v) const {
  return static_cast<int>(incident_edges(v).size());
}

std::map<VertexId, VertexId> Multigraph::component_index() const {
  std::map<VertexId, VertexId> rep;
  for (const VertexId& start : vertex_set_) {
    if (rep.count(start)) continue;
    // BFS; start is the smallest unseen vertex, but the component may contain
    // smaller ids only if they were already assigned, so collect then label.
    std::vector<VertexId> comp;
    std::queue<VertexId> q;
    std::set<VertexId> seen{start};
    q.push(start);
    while (!q.empty()) {
      VertexId cur = q.front();
      q.pop();
      comp.push_back(cur);
      for (const VertexId& n : neighbors(cur)) {
        if (seen.insert(n).second) q.push(n);
      }
    }
    VertexId label = *std::min_element(comp.begin(), comp.end());
    for (const VertexId& v : comp) rep[v] = label;
  }
  return rep;
}

std::vector<std::set<VertexId>> Multigraph::components() const {
  std::map<VertexId, std::set<VertexId>> by_rep;
  for (const auto& [v, r] : component_index()) by_rep[r].insert(v);
  std::vector<std::set<VertexId>> out;
  for (auto& [r, s] : by_rep) out.push_back(std::move(s));
  return out;
}

bool Multigraph::connected() const {
  return components().size() <= 1;
}

Multigraph Multigraph::induced(const std::set<VertexId>& vs) const {
  Multigraph out;
  for (const VertexId& v : vs) {
    if (!has_vertex(v)) throw PreconditionError("induced: unknown vertex " + v);
    out.add_vertex(v);
  }
  for (const Edge& e : edges_) {
    if (vs.count(e.u) && vs.count(e.v)) out.add_edge(e);
  }
  return out;
}

Multigraph Multigraph::edge_subgraph(const std::set<EdgeId>& es,
                                     const std::set<VertexId>& extra_vertices) const {
  Multigraph out;
  for (const EdgeId& id : es) {
    const Edge& e = edge(id);
    if (!out.has_vertex(e.u)) out.add_vertex(e.u);
    if (!out.has_vertex(e.v)) out.add_vertex(e.v);
  }
  for (const VertexId& v : extra_vertices) {
    if (!has_vertex(v)) throw PreconditionError("edge_subgraph: unknown vertex " + v);
    if (!out.has_vertex(v)) out.add_vertex(v);
  }
  for (const Edge& e : edges_) {
    if (es.count(e.id)) out.add_edge(e);
  }
  return out;
}

std::vector<EdgeId> Multigraph::predrawn_edges() const {
  std::vector<EdgeId> out;
  for (const Edge& e : edges_) {
    if (e.predrawn) out.push_back(e.id);
  }
  return out;
}

std::set<VertexId> Multigraph::predrawn_vertices() const {
  std::set<VertexId> out;
  for (const Edge& e : edges_) {
    if (e.predrawn) {
      out.insert(e.u);
      out.insert(e.v);
    }
  }
  return out;
}

bool Multigraph::operator==(const Multigraph& o) const {
  if (vertex_set_ != o.vertex_set_) return false;
  if (edges_.size() != o.edges_.size()) return false;
  for (const Edge& e : edges_) {
    if (!o.has_edge(e.id)) return false;
    const Edge& f = o.edge(e.id);
    bool same_ends = (e.u == f.u && e.v == f.v) || (e.u == f.v && e.v == f.u);
    if (!same_ends || e.predrawn != f.predrawn || e.uncrossable != f.uncrossable ||
        e.weight != f.weight) {
      return false;
    }
  }
  return true;
}

EdgeId piece_id(const EdgeId& orig, int segment) {
  return orig + "#" + std::to_string(segment);
}

std::optional<std::pair<EdgeId, int>> parse_piece(const EdgeId& id) {
  auto pos = id.rfind('#');
  if (pos == std::string::npos || pos == 0 || pos + 1 >= id.size()) return std::nullopt;
  for (std::size_t i = pos + 1; i < id.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(id[i]))) return std::nullopt;
  }
  return std::make_pair(id.substr(0, pos), std::stoi(id.substr(pos + 1)));
}

EdgeId original_of(const EdgeId& id) {
  auto p = parse_piece(id);
  return p ? p->first : id;
}

std::pair<Multigraph, AuxRegistry> surgery_subdivide(const Multigraph& g,
                                                     const std::map<EdgeId, int>& plan) {
  Multigraph out;
  AuxRegistry reg;
  for (const VertexId& v : g.vertices()) out.add_vertex(v);
  for (const Edge& e : g.edges()) {
    auto it = plan.find(e.id);
    int count = it == plan.end() ? 0 : it->second;
    if (count < 0) throw PreconditionError("subdivision count < 0 on " + e.id);
    if (count == 0) {
      out.add_edge(e);
      continue;
    }
    if (e.uncrossable) throw PreconditionError("cannot subdivide uncrossable edge " + e.id);
    VertexId prev = e.u;
    for (int i = 1; i <= count; ++i) {
      VertexId aux = e.id + "$" + std::to_string(i);
      if (out.has_vertex(aux)) throw PreconditionError("aux id collision: " + aux);
      out.add_vertex(aux);
      reg[aux] = AuxInfo{e.id, i};
      Edge piece = e;
      piece.id = piece_id(e.id, i - 1);
      piece.u = prev;
      piece.v = aux;
      out.add_edge(piece);
      prev = aux;
    }
    Edge last = e;
    last.id = piece_id(e.id, count);
    last.u = prev;
    last.v = e.v;
    out.add_edge(last);
  }
  return {out, reg};
}

Multigraph surgery_identify(const Multigraph& g, const AuxRegistry& reg,
                            const std::vector<std::pair<VertexId, VertexId>>& pairs) {
  std::set<VertexId> used;
  std::map<VertexId, VertexId> alias;  // removed vertex -> kept vertex
  for (const auto& [a, b] : pairs) {
    auto ia = reg.find(a);
    auto ib = reg.find(b);
    if (ia == reg.end() || ib == reg.end()) {
      throw PreconditionError("identify: non-auxiliary member " + (ia == reg.end() ? a : b));
    }
    if (!used.insert(a).second || !used.insert(b).second) {
      throw PreconditionError("identify: overlapping pairs at " + a + "/" + b);
    }
    bool a_pre = g.edge(piece_id(ia->second.edge, 0)).predrawn;
    bool b_pre = g.edge(piece_id(ib->second.edge, 0)).predrawn;
    if (a_pre && b_pre) {
      throw PreconditionError("identify: HxH identification forbidden (" + a + ", " + b + ")");
    }
    VertexId keep = std::min(a, b), drop = std::max(a, b);
    alias[drop] = keep;
  }
  Multigraph out;
  for (const VertexId& v : g.vertices()) {
    if (!alias.count(v)) out.add_vertex(v);
  }
  for (Edge e : g.edges()) {
    if (auto it = alias.find(e.u); it != alias.end()) e.u = it->second;
    if (auto it = alias.find(e.v); it != alias.end()) e.v = it->second;
    out.add_edge(e);
  }
  return out;
}

}  // namespace pdcross
