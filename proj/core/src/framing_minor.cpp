#include <algorithm>
#include <functional>

#include "pdcross/framing.hpp"

namespace pdcross {

namespace {

// Framing topological minor search. Phases: instance part first (vertices,
// then instance edges as paths, predrawn on predrawn), then a host path
// through predrawn-plus-connector edges for every connector edge, then the
// triplets into their corridors, then the framing cycles into cycles.
//
// The spine strand of a triplet legitimately runs through the interior
// vertices of its edge's image path, so frame paths may revisit instance-path
// interiors; within each part, paths stay internally disjoint.
class FrameMinor {
 public:
  FrameMinor(const Framing& f1, const Framing& f2, const ExtensionOptions& opts)
      : f1_(f1), f2_(f2), opts_(opts) {
    for (const VertexId& v : f1.source.graph.vertices()) core_vertices_.push_back(v);
    std::sort(core_vertices_.begin(), core_vertices_.end(),
              [&](const VertexId& a, const VertexId& b) {
                int da = f1.source.graph.degree(a), db = f1.source.graph.degree(b);
                return da != db ? da > db : a < b;
              });
    for (const Edge& e : f1.source.graph.edges()) core_edges_.push_back(e.id);
    std::sort(core_edges_.begin(), core_edges_.end(), [&](const EdgeId& a, const EdgeId& b) {
      bool pa = f1.source.graph.edge(a).predrawn, pb = f1.source.graph.edge(b).predrawn;
      return pa != pb ? pa : a < b;
    });
    // D-edges with triplets, connectors last (their corridor needs a chosen
    // auxiliary path first).
    for (const auto& [fe, t] : f1.framing_triplets) {
      if (f1_connector_ids().count(fe)) {
        d_edges_.push_back(fe);
      } else {
        d_edges_.insert(d_edges_.begin(), fe);
      }
    }
    for (const auto& [v, cyc] : f1.framing_cycles) {
      if (!cyc.empty()) cycle_vertices_.push_back(v);
    }
  }

  std::optional<EmbeddingWitness> run() {
    if (assign_core_vertex(0)) {
      EmbeddingWitness w;
      w.vertex_map = vmap_;
      w.edge_paths = paths_;
      return w;
    }
    return std::nullopt;
  }

 private:
  std::set<EdgeId> f1_connector_ids() const {
    std::set<EdgeId> out;
    for (const auto& c : f1_.connector_edges) out.insert(c.id);
    return out;
  }

  // ---- phase 1: instance vertices ----
  bool assign_core_vertex(std::size_t i) {
    opts_.budget.charge(nodes_, "framing_topological_minor");
    if (i == core_vertices_.size()) return embed_core_edge(0);
    const VertexId& v = core_vertices_[i];
    bool v_pre = f1_.source.predrawn_vertex_set().count(v) != 0;
    for (const VertexId& cand : f2_.source.graph.vertices()) {
      if (used_branch_.count(cand)) continue;
      if (v_pre && !f2_.source.predrawn_vertex_set().count(cand)) continue;
      if (f2_.source.graph.degree(cand) < f1_.source.graph.degree(v)) continue;
      vmap_[v] = cand;
      used_branch_.insert(cand);
      if (assign_core_vertex(i + 1)) return true;
      used_branch_.erase(cand);
      vmap_.erase(v);
    }
    return false;
  }

  // ---- phase 2: instance edges as instance paths ----
  bool embed_core_edge(std::size_t ei) {
    opts_.budget.charge(nodes_, "framing_topological_minor");
    if (ei == core_edges_.size()) return choose_connector_path(0);
    const Edge& pe = f1_.source.graph.edge(core_edges_[ei]);
    std::vector<EdgeId> path;
    std::set<VertexId> interior;
    return core_dfs(pe, vmap_.at(pe.u), vmap_.at(pe.v), vmap_.at(pe.u), path, interior, ei);
  }

  bool core_dfs(const Edge& pe, const VertexId& from, const VertexId& to, const VertexId& cur,
                std::vector<EdgeId>& path, std::set<VertexId>& interior, std::size_t ei) {
    opts_.budget.charge(nodes_, "framing_topological_minor");
    for (const EdgeId& he : f2_.source.graph.incident_edges(cur)) {
      const Edge& h = f2_.source.graph.edge(he);
      if (pe.predrawn && !h.predrawn) continue;
      if (used_edges_.count(he)) continue;
      VertexId nxt = h.other(cur);
      if (nxt == to) {
        path.push_back(he);
        used_edges_.insert(he);
        paths_[pe.id] = path;
        auto saved = interior;
        for (const VertexId& x : interior) used_core_internal_.insert(x);
        if (embed_core_edge(ei + 1)) return true;
        for (const VertexId& x : saved) used_core_internal_.erase(x);
        paths_.erase(pe.id);
        used_edges_.erase(he);
        path.pop_back();
        continue;
      }
      if (used_branch_.count(nxt) || used_core_internal_.count(nxt) || interior.count(nxt)) {
        continue;
      }
      path.push_back(he);
      used_edges_.insert(he);
      interior.insert(nxt);
      if (core_dfs(pe, from, to, nxt, path, interior, ei)) return true;
      interior.erase(nxt);
      used_edges_.erase(he);
      path.pop_back();
    }
    return false;
  }

  // ---- phase 3: auxiliary host paths for connector edges ----
  // The auxiliary graph joins predrawn edges with the host's connector edges.
  struct AuxEdge {
    EdgeId id;
    VertexId u, v;
  };
  std::vector<AuxEdge> aux_edges_of_host() const {
    std::vector<AuxEdge> out;
    for (const EdgeId& e : f2_.source.predrawn_edge_set()) {
      const Edge& ed = f2_.source.graph.edge(e);
      out.push_back({e, ed.u, ed.v});
    }
    for (const auto& c : f2_.connector_edges) out.push_back({c.id, c.u, c.v});
    return out;
  }

  bool choose_connector_path(std::size_t ci) {
    opts_.budget.charge(nodes_, "framing_topological_minor");
    if (ci == f1_.connector_edges.size()) return embed_triplet(0);
    const auto& conn = f1_.connector_edges[ci];
    VertexId from = vmap_.at(conn.u), to = vmap_.at(conn.v);
    std::vector<AuxEdge> aux = aux_edges_of_host();
    std::vector<EdgeId> path;
    std::set<VertexId> seen{from};
    std::function<bool(const VertexId&)> dfs = [&](const VertexId& cur) -> bool {
      opts_.budget.charge(nodes_, "framing_topological_minor");
      for (const AuxEdge& ae : aux) {
        if (ae.u != cur && ae.v != cur) continue;
        VertexId nxt = ae.u == cur ? ae.v : ae.u;
        if (std::find(path.begin(), path.end(), ae.id) != path.end()) continue;
        if (nxt == to) {
          path.push_back(ae.id);
          connector_paths_[conn.id] = path;
          if (choose_connector_path(ci + 1)) return true;
          connector_paths_.erase(conn.id);
          path.pop_back();
          continue;
        }
        if (seen.count(nxt)) continue;
        path.push_back(ae.id);
        seen.insert(nxt);
        if (dfs(nxt)) return true;
        seen.erase(nxt);
        path.pop_back();
      }
      return false;
    };
    return dfs(from);
  }

  // ---- corridors ----
  // Host D-edge path of a D1-edge: the image path for predrawn edges, the
  // chosen auxiliary path for connectors.
  std::vector<EdgeId> host_d_path(const EdgeId& f) const {
    if (connector_paths_.count(f)) return connector_paths_.at(f);
    return paths_.at(f);
  }

  // Vertex route of a host D-edge path starting at `from`.
  std::vector<VertexId> route_of(const std::vector<EdgeId>& path, const VertexId& from) const {
    std::vector<VertexId> route{from};
    for (const EdgeId& e : path) {
      // the edge may be a synthetic connector of the host
      VertexId u, v;
      if (f2_.source.graph.has_edge(e)) {
        u = f2_.source.graph.edge(e).u;
        v = f2_.source.graph.edge(e).v;
      } else {
        for (const auto& c : f2_.connector_edges) {
          if (c.id == e) {
            u = c.u;
            v = c.v;
          }
        }
      }
      route.push_back(route.back() == u ? v : u);
    }
    return route;
  }

  std::set<EdgeId> corridor_edges(const EdgeId& f1_edge) const {
    const auto& conn = f1_.connector_edges;
    VertexId u, w;
    if (f1_.source.graph.has_edge(f1_edge)) {
      u = f1_.source.graph.edge(f1_edge).u;
      w = f1_.source.graph.edge(f1_edge).v;
    } else {
      for (const auto& c : conn) {
        if (c.id == f1_edge) {
          u = c.u;
          w = c.v;
        }
      }
    }
    std::vector<EdgeId> hp = host_d_path(f1_edge);
    std::vector<VertexId> route = route_of(hp, vmap_.at(u));
    std::set<EdgeId> out;
    for (const EdgeId& ge : hp) {
      auto it = f2_.framing_triplets.find(ge);
      if (it == f2_.framing_triplets.end()) {
        throw InternalError("framing minor: host path edge has no triplet: " + ge);
      }
      for (const auto& strand : it->second) {
        for (const EdgeId& e : strand) out.insert(e);
      }
    }
    for (std::size_t i = 1; i + 1 < route.size(); ++i) {
      auto it = f2_.framing_cycles.find(route[i]);
      if (it != f2_.framing_cycles.end()) {
        for (const EdgeId& e : it->second) out.insert(e);
      }
    }
    return out;
  }

  // ---- phase 4: triplets ----
  bool embed_triplet(std::size_t di) {
    opts_.budget.charge(nodes_, "framing_topological_minor");
    if (di == d_edges_.size()) return embed_cycle_vertex(0);
    const EdgeId& f = d_edges_[di];
    std::set<EdgeId> corridor = corridor_edges(f);
    VertexId u, w;
    if (f1_.source.graph.has_edge(f)) {
      u = f1_.source.graph.edge(f).u;
      w = f1_.source.graph.edge(f).v;
    } else {
      for (const auto& c : f1_.connector_edges) {
        if (c.id == f) {
          u = c.u;
          w = c.v;
        }
      }
    }
    const auto& triplet = f1_.framing_triplets.at(f);
    return embed_strand(di, f, corridor, triplet, 0, 0, vmap_.at(u), vmap_.at(w));
  }

  // Embed strand edges one at a time; unassigned strand interiors are
  // assigned to whatever unused corridor vertex a path reaches.
  bool embed_strand(std::size_t di, const EdgeId& f, const std::set<EdgeId>& corridor,
                    const std::array<std::vector<EdgeId>, 3>& triplet, int strand, int leg,
                    const VertexId& img_u, const VertexId& img_w) {
    opts_.budget.charge(nodes_, "framing_topological_minor");
    if (strand == 3) {
      if (!spine_ok(f, img_u)) return false;
      return embed_triplet(di + 1);
    }
    if (leg == 3) return embed_strand(di, f, corridor, triplet, strand + 1, 0, img_u, img_w);
    const EdgeId& pe = triplet[static_cast<std::size_t>(strand)][static_cast<std::size_t>(leg)];
    const Edge& pedge = f1_.graph.edge(pe);
    return embed_frame_edge(pe, pedge, corridor, [&]() {
      return embed_strand(di, f, corridor, triplet, strand, leg + 1, img_u, img_w);
    });
  }

  // ---- phase 5: cycles ----
  bool embed_cycle_vertex(std::size_t vi) {
    opts_.budget.charge(nodes_, "framing_topological_minor");
    if (vi == cycle_vertices_.size()) return final_check();
    const VertexId& v = cycle_vertices_[vi];
    const auto& cyc = f1_.framing_cycles.at(v);
    auto it = f2_.framing_cycles.find(vmap_.at(v));
    if (it == f2_.framing_cycles.end() || it->second.empty()) return false;
    std::set<EdgeId> allowed(it->second.begin(), it->second.end());
    std::function<bool(std::size_t)> step = [&](std::size_t k) -> bool {
      if (k == cyc.size()) return embed_cycle_vertex(vi + 1);
      const EdgeId& pe = cyc[k];
      const Edge& pedge = f1_.graph.edge(pe);
      return embed_frame_edge(pe, pedge, allowed, [&]() { return step(k + 1); });
    };
    return step(0);
  }

  // Embed one frame edge of the pattern as a path within `allowed` host
  // edges. Unassigned endpoints take any unused host vertex the path reaches.
  bool embed_frame_edge(const EdgeId& pe, const Edge& pedge, const std::set<EdgeId>& allowed,
                        const std::function<bool()>& k) {
    opts_.budget.charge(nodes_, "framing_topological_minor");
    bool u_known = vmap_.count(pedge.u), v_known = vmap_.count(pedge.v);
    if (!u_known && !v_known) {
      throw InternalError("framing minor: frame edge with two floating ends: " + pe);
    }
    VertexId from = u_known ? vmap_.at(pedge.u) : vmap_.at(pedge.v);
    std::optional<VertexId> target;
    VertexId float_vertex = u_known ? pedge.v : pedge.u;
    if (u_known && v_known) target = vmap_.at(pedge.v);

    std::vector<EdgeId> path;
    std::set<VertexId> interior;
    std::function<bool(const VertexId&)> dfs = [&](const VertexId& cur) -> bool {
      opts_.budget.charge(nodes_, "framing_topological_minor");
      for (const EdgeId& he : f1_helper_incident(cur, allowed)) {
        if (used_edges_.count(he)) continue;
        const Edge& h = f2_.graph.edge(he);
        VertexId nxt = h.other(cur);
        bool closes = target ? nxt == *target : false;
        if (closes) {
          path.push_back(he);
          used_edges_.insert(he);
          paths_[pe] = path;
          auto saved = interior;
          for (const VertexId& x : interior) used_frame_internal_.insert(x);
          if (k()) return true;
          for (const VertexId& x : saved) used_frame_internal_.erase(x);
          paths_.erase(pe);
          used_edges_.erase(he);
          path.pop_back();
          continue;
        }
        if (used_branch_.count(nxt) || used_frame_internal_.count(nxt) || interior.count(nxt)) {
          continue;
        }
        if (!target) {
          // Option: end here, assigning the floating strand vertex.
          path.push_back(he);
          used_edges_.insert(he);
          vmap_[float_vertex] = nxt;
          used_branch_.insert(nxt);
          paths_[pe] = path;
          auto saved = interior;
          for (const VertexId& x : interior) used_frame_internal_.insert(x);
          if (k()) return true;
          for (const VertexId& x : saved) used_frame_internal_.erase(x);
          paths_.erase(pe);
          used_branch_.erase(nxt);
          vmap_.erase(float_vertex);
          used_edges_.erase(he);
          path.pop_back();
        }
        // Continue through nxt (as path interior).
        path.push_back(he);
        used_edges_.insert(he);
        interior.insert(nxt);
        if (dfs(nxt)) return true;
        interior.erase(nxt);
        used_edges_.erase(he);
        path.pop_back();
      }
      return false;
    };
    return dfs(from);
  }

  std::vector<EdgeId> f1_helper_incident(const VertexId& v, const std::set<EdgeId>& allowed)
      const {
    std::vector<EdgeId> out;
    for (const EdgeId& e : f2_.graph.incident_edges(v)) {
      if (allowed.count(e)) out.push_back(e);
    }
    return out;
  }

  // One strand image must pass through every vertex of the host D-edge path.
  bool spine_ok(const EdgeId& f, const VertexId& img_u) {
    std::vector<VertexId> route = route_of(host_d_path(f), img_u);
    std::set<VertexId> want(route.begin(), route.end());
    const auto& triplet = f1_.framing_triplets.at(f);
    for (const auto& strand : triplet) {
      std::set<VertexId> visited;
      for (const EdgeId& pe : strand) {
        auto it = paths_.find(pe);
        if (it == paths_.end()) return false;
        for (const EdgeId& he : it->second) {
          visited.insert(f2_.graph.edge(he).u);
          visited.insert(f2_.graph.edge(he).v);
        }
      }
      bool all = std::all_of(want.begin(), want.end(),
                             [&](const VertexId& x) { return visited.count(x) != 0; });
      if (all) return true;
    }
    return false;
  }

  bool final_check() const { return true; }

  const Framing& f1_;
  const Framing& f2_;
  ExtensionOptions opts_;
  std::vector<VertexId> core_vertices_;
  std::vector<EdgeId> core_edges_;
  std::vector<EdgeId> d_edges_;
  std::vector<VertexId> cycle_vertices_;

  std::map<VertexId, VertexId> vmap_;
  std::map<EdgeId, std::vector<EdgeId>> paths_;
  std::map<EdgeId, std::vector<EdgeId>> connector_paths_;
  std::set<VertexId> used_branch_;
  std::set<VertexId> used_core_internal_;
  std::set<VertexId> used_frame_internal_;
  std::set<EdgeId> used_edges_;
  std::int64_t nodes_ = 0;
};

}  // namespace

std::optional<EmbeddingWitness> framing_topological_minor(const Framing& f1, const Framing& f2,
                                                          const ExtensionOptions& opts) {
  if (f1.source.graph.num_vertices() > f2.source.graph.num_vertices()) return std::nullopt;
  FrameMinor fm(f1, f2, opts);
  return fm.run();
}

}  // namespace pdcross
