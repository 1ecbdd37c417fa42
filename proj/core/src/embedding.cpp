#include <algorithm>
#include <functional>

#include "pdcross/extension.hpp"

namespace pdcross {

namespace {

Multigraph predrawn_subgraph(const PredrawnGraph& p) {
  return p.graph.edge_subgraph(p.predrawn_edge_set(), p.predrawn_vertex_set());
}

int predrawn_degree(const PredrawnGraph& p, const VertexId& v) {
  int d = 0;
  for (const EdgeId& e : p.graph.incident_edges(v)) {
    if (p.graph.edge(e).predrawn) ++d;
  }
  return d;
}

// Subdivide the pattern's predrawn part to mirror the embedded path lengths,
// remap it onto the host image, and compare the drawings.
bool drawing_part_matches(const PredrawnGraph& p1, const PredrawnGraph& p2,
                          const std::map<VertexId, VertexId>& vmap,
                          const std::map<EdgeId, std::vector<EdgeId>>& paths) {
  // Build the subdivided predrawn pattern graph and drawing.
  Multigraph sub;
  PlaneDrawing subd;
  std::map<VertexId, VertexId> full_vmap;  // subdivided pattern -> host
  std::map<EdgeId, EdgeId> full_emap;
  for (const VertexId& v : p1.predrawn_vertex_set()) {
    sub.add_vertex(v);
    full_vmap[v] = vmap.at(v);
  }
  std::set<EdgeId> h_edges1 = p1.predrawn_edge_set();
  // piece names and rotation splices
  std::map<EdgeEnd, EdgeEnd> end_rename;  // pattern ends -> subdivided piece ends
  for (const EdgeId& f : h_edges1) {
    const Edge& pe = p1.graph.edge(f);
    const auto& path = paths.at(f);
    if (path.size() == 1) {
      Edge e = pe;
      sub.add_edge(e);
      full_emap[f] = path[0];
      end_rename[EdgeEnd{f, 0}] = EdgeEnd{f, 0};
      end_rename[EdgeEnd{f, 1}] = EdgeEnd{f, 1};
      continue;
    }
    // walk the host path to learn the intermediate host vertices
    std::vector<VertexId> host_route{vmap.at(pe.u)};
    for (const EdgeId& he : path) {
      host_route.push_back(p2.graph.edge(he).other(host_route.back()));
    }
    VertexId prev = pe.u;
    for (std::size_t i = 0; i < path.size(); ++i) {
      VertexId nxt;
      if (i + 1 == path.size()) {
        nxt = pe.v;
      } else {
        nxt = f + "~s" + std::to_string(i + 1);
        sub.add_vertex(nxt);
        full_vmap[nxt] = host_route[i + 1];
      }
      Edge piece = pe;
      piece.id = f + "~p" + std::to_string(i);
      piece.u = prev;
      piece.v = nxt;
      sub.add_edge(piece);
      full_emap[piece.id] = path[i];
      if (i + 1 < path.size()) {
        subd.rotations[nxt] = {EdgeEnd{piece.id, 1}, EdgeEnd{f + "~p" + std::to_string(i + 1), 0}};
      }
      prev = nxt;
    }
    end_rename[EdgeEnd{f, 0}] = EdgeEnd{f + "~p0", 0};
    end_rename[EdgeEnd{f, 1}] = EdgeEnd{f + "~p" + std::to_string(path.size() - 1), 1};
  }
  for (const auto& [v, rot] : p1.predrawn.rotations) {
    if (subd.rotations.count(v)) continue;  // subdivision vertices already set
    std::vector<EdgeEnd> r;
    for (const EdgeEnd& ee : rot) r.push_back(end_rename.at(ee));
    subd.rotations[v] = std::move(r);
  }
  auto rename_ref = [&](FaceRef ref) {
    // The referenced side survives on the first piece of the edge.
    EdgeEnd e0 = end_rename.at(EdgeEnd{ref.edge, 0});
    ref.edge = e0.edge;
    return ref;
  };
  if (p1.predrawn.outer_face) subd.outer_face = rename_ref(*p1.predrawn.outer_face);
  for (ContainmentRecord rec : p1.predrawn.containment) {
    rec.host_face = rename_ref(rec.host_face);
    subd.containment.push_back(rec);
  }

  // Host-side restriction to the image.
  ElementSubset image;
  for (const auto& [pv, hv] : full_vmap) image.vertices.insert(hv);
  for (const EdgeId& f : h_edges1) {
    for (const EdgeId& he : paths.at(f)) image.edges.insert(he);
  }
  Multigraph host_h = predrawn_subgraph(p2);
  DrawingWitness host_w = witness_for_plane_drawing(host_h, p2.predrawn);
  DrawingWitness restricted = restrict_witness(host_w, image);
  // sanity: restriction must be exactly the image subgraph
  if (restricted.plan_graph.num_vertices() != image.vertices.size()) return false;
  try {
    return drawings_equivalent_mapped(sub, subd, restricted.plan_graph, restricted.drawing,
                                      full_vmap, full_emap);
  } catch (const PreconditionError&) {
    return false;
  }
}

class Embedder {
 public:
  Embedder(const PredrawnGraph& p1, const PredrawnGraph& p2, const ExtensionOptions& opts)
      : p1_(p1), p2_(p2), opts_(opts) {
    for (const VertexId& v : p1.graph.vertices()) pattern_vertices_.push_back(v);
    std::sort(pattern_vertices_.begin(), pattern_vertices_.end(),
              [&](const VertexId& a, const VertexId& b) {
                int da = p1.graph.degree(a), db = p1.graph.degree(b);
                return da != db ? da > db : a < b;
              });
    for (const Edge& e : p1.graph.edges()) {
      pattern_edges_.push_back(e.id);
    }
    std::sort(pattern_edges_.begin(), pattern_edges_.end(),
              [&](const EdgeId& a, const EdgeId& b) {
                bool pa = p1.graph.edge(a).predrawn, pb = p1.graph.edge(b).predrawn;
                return pa != pb ? pa : a < b;
              });
  }

  std::optional<EmbeddingWitness> run() {
    if (p1_.graph.num_vertices() > p2_.graph.num_vertices() ||
        p1_.graph.num_edges() > p2_.graph.num_edges()) {
      return std::nullopt;
    }
    if (assign_vertex(0)) {
      EmbeddingWitness w;
      w.vertex_map = vmap_;
      w.edge_paths = paths_;
      return w;
    }
    return std::nullopt;
  }

 private:
  bool assign_vertex(std::size_t i) {
    opts_.budget.charge(nodes_, "pd_subgraph_of_subdivision");
    if (i == pattern_vertices_.size()) return embed_edge(0);
    const VertexId& v = pattern_vertices_[i];
    bool v_pre = p1_.predrawn_vertex_set().count(v) != 0;
    int v_deg = p1_.graph.degree(v);
    int v_hdeg = predrawn_degree(p1_, v);
    for (const VertexId& cand : p2_.graph.vertices()) {
      if (used_.count(cand)) continue;
      if (v_pre && !p2_.predrawn_vertex_set().count(cand)) continue;
      if (p2_.graph.degree(cand) < v_deg) continue;
      if (predrawn_degree(p2_, cand) < v_hdeg) continue;
      vmap_[v] = cand;
      used_.insert(cand);
      if (assign_vertex(i + 1)) return true;
      used_.erase(cand);
      vmap_.erase(v);
    }
    return false;
  }

  bool embed_edge(std::size_t ei) {
    opts_.budget.charge(nodes_, "pd_subgraph_of_subdivision");
    if (ei == pattern_edges_.size()) {
      return drawing_part_matches(p1_, p2_, vmap_, paths_);
    }
    const Edge& pe = p1_.graph.edge(pattern_edges_[ei]);
    VertexId from = vmap_.at(pe.u), to = vmap_.at(pe.v);
    std::vector<EdgeId> path;
    return path_dfs(pe, from, to, from, path, ei);
  }

  bool path_dfs(const Edge& pe, const VertexId& from, const VertexId& to, const VertexId& cur,
                std::vector<EdgeId>& path, std::size_t ei) {
    opts_.budget.charge(nodes_, "pd_subgraph_of_subdivision");
    for (const EdgeId& he : p2_.graph.incident_edges(cur)) {
      const Edge& h = p2_.graph.edge(he);
      if (pe.predrawn && !h.predrawn) continue;
      if (used_edges_.count(he)) continue;
      VertexId nxt = h.other(cur);
      if (nxt == to) {
        path.push_back(he);
        used_edges_.insert(he);
        paths_[pe.id] = path;
        if (embed_edge(ei + 1)) return true;
        paths_.erase(pe.id);
        used_edges_.erase(he);
        path.pop_back();
        continue;
      }
      if (used_.count(nxt) || interior_used_.count(nxt)) continue;
      path.push_back(he);
      used_edges_.insert(he);
      interior_used_.insert(nxt);
      if (path_dfs(pe, from, to, nxt, path, ei)) return true;
      interior_used_.erase(nxt);
      used_edges_.erase(he);
      path.pop_back();
    }
    return false;
  }

  const PredrawnGraph& p1_;
  const PredrawnGraph& p2_;
  ExtensionOptions opts_;
  std::vector<VertexId> pattern_vertices_;
  std::vector<EdgeId> pattern_edges_;
  std::map<VertexId, VertexId> vmap_;
  std::set<VertexId> used_;           // branch images
  std::set<VertexId> interior_used_;  // interior path vertices
  std::set<EdgeId> used_edges_;
  std::map<EdgeId, std::vector<EdgeId>> paths_;
  std::int64_t nodes_ = 0;
};

}  // namespace

std::optional<EmbeddingWitness> pd_subgraph_of_subdivision(const PredrawnGraph& p1,
                                                           const PredrawnGraph& p2,
                                                           const ExtensionOptions& opts) {
  Embedder e(p1, p2, opts);
  return e.run();
}

bool ppdg_isomorphic(const PredrawnGraph& p1, const PredrawnGraph& p2,
                     const ExtensionOptions& opts) {
  if (p1.graph.num_vertices() != p2.graph.num_vertices() ||
      p1.graph.num_edges() != p2.graph.num_edges() ||
      p1.predrawn_edge_set().size() != p2.predrawn_edge_set().size() ||
      p1.predrawn_vertex_set().size() != p2.predrawn_vertex_set().size()) {
    return false;
  }
  // Joint color refinement over the disjoint union: colors are comparable
  // across the two graphs, non-isomorphic pairs usually split immediately,
  // and surviving candidates are restricted to equal colors.
  std::map<VertexId, long> col1, col2;
  {
    std::map<std::string, long> codes;
    auto code = [&](const std::string& s) {
      return codes.emplace(s, static_cast<long>(codes.size())).first->second;
    };
    auto init = [&](const PredrawnGraph& p, std::map<VertexId, long>& col) {
      for (const VertexId& v : p.graph.vertices()) {
        int hdeg = 0;
        std::vector<int> weights;
        for (const EdgeId& e : p.graph.incident_edges(v)) {
          if (p.graph.edge(e).predrawn) ++hdeg;
          weights.push_back(p.graph.edge(e).weight);
        }
        std::sort(weights.begin(), weights.end());
        std::string s = std::to_string(p.graph.degree(v)) + "/" + std::to_string(hdeg) +
                        (p.predrawn_vertex_set().count(v) ? "/H" : "/-");
        for (int w : weights) s += "," + std::to_string(w);
        col[v] = code(s);
      }
    };
    init(p1, col1);
    init(p2, col2);
    for (std::size_t round = 0; round < p1.graph.num_vertices(); ++round) {
      std::map<std::string, long> round_codes;
      auto round_code = [&](const std::string& s) {
        return round_codes.emplace(s, static_cast<long>(round_codes.size())).first->second;
      };
      auto refine = [&](const PredrawnGraph& p, const std::map<VertexId, long>& col) {
        std::map<VertexId, long> next;
        for (const VertexId& v : p.graph.vertices()) {
          std::vector<long> neigh;
          for (const EdgeId& e : p.graph.incident_edges(v)) {
            neigh.push_back(col.at(p.graph.edge(e).other(v)) * 2 +
                            (p.graph.edge(e).predrawn ? 1 : 0));
          }
          std::sort(neigh.begin(), neigh.end());
          std::string s = std::to_string(col.at(v));
          for (long c : neigh) s += ":" + std::to_string(c);
          next[v] = round_code(s);
        }
        return next;
      };
      std::map<VertexId, long> n1 = refine(p1, col1);
      std::map<VertexId, long> n2 = refine(p2, col2);
      if (n1 == col1 && n2 == col2) break;
      col1 = std::move(n1);
      col2 = std::move(n2);
    }
    auto profile = [](const std::map<VertexId, long>& col) {
      std::vector<long> out;
      for (const auto& [v, c] : col) out.push_back(c);
      std::sort(out.begin(), out.end());
      return out;
    };
    if (profile(col1) != profile(col2)) return false;
  }

  // Partition-respecting backtracking on vertices: candidates must share the
  // refined color and agree on adjacency multiplicities with everything
  // already mapped. Rarest colors are assigned first.
  std::map<long, int> color_count;
  for (const auto& [v, c] : col1) color_count[c]++;
  std::vector<VertexId> order(p1.graph.vertices().begin(), p1.graph.vertices().end());
  std::sort(order.begin(), order.end(), [&](const VertexId& a, const VertexId& b) {
    int ca = color_count.at(col1.at(a)), cb = color_count.at(col1.at(b));
    return ca != cb ? ca < cb : a < b;
  });
  auto multiplicity = [](const PredrawnGraph& p, const VertexId& a, const VertexId& b) {
    int all = 0, pre = 0;
    long wsum = 0;
    for (const EdgeId& e : p.graph.incident_edges(a)) {
      const Edge& ed = p.graph.edge(e);
      if (ed.other(a) == b) {
        ++all;
        wsum += ed.weight;
        if (ed.predrawn) ++pre;
      }
    }
    return std::tuple(all, pre, wsum);
  };
  std::map<VertexId, VertexId> vmap;
  std::set<VertexId> used;
  std::int64_t nodes = 0;

  std::function<bool(std::size_t)> assign = [&](std::size_t i) -> bool {
    opts.budget.charge(nodes, "ppdg_isomorphic");
    if (i == order.size()) {
      // Map edges: between each mapped pair, match parallel edges by flags.
      std::map<EdgeId, EdgeId> emap;
      std::map<std::pair<VertexId, VertexId>, std::vector<EdgeId>> host_slots;
      for (const Edge& e : p2.graph.edges()) {
        auto key = std::minmax(e.u, e.v);
        host_slots[{key.first, key.second}].push_back(e.id);
      }
      for (const Edge& e : p1.graph.edges()) {
        auto key = std::minmax(vmap.at(e.u), vmap.at(e.v));
        auto& slots = host_slots[{key.first, key.second}];
        bool found = false;
        for (auto it = slots.begin(); it != slots.end(); ++it) {
          const Edge& h = p2.graph.edge(*it);
          if (h.predrawn == e.predrawn && h.weight == e.weight &&
              h.uncrossable == e.uncrossable) {
            emap[e.id] = *it;
            slots.erase(it);
            found = true;
            break;
          }
        }
        if (!found) return false;
      }
      if (p1.predrawn_edge_set().empty()) return true;
      try {
        return drawings_equivalent_mapped(p1.graph, p1.predrawn, p2.graph, p2.predrawn, vmap,
                                          emap);
      } catch (const PreconditionError&) {
        return false;
      }
    }
    const VertexId& v = order[i];
    for (const VertexId& cand : p2.graph.vertices()) {
      if (used.count(cand)) continue;
      if (col2.at(cand) != col1.at(v)) continue;
      bool ok = true;
      for (const auto& [pv, hv] : vmap) {
        if (multiplicity(p1, v, pv) != multiplicity(p2, cand, hv)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      vmap[v] = cand;
      used.insert(cand);
      if (assign(i + 1)) return true;
      used.erase(cand);
      vmap.erase(v);
    }
    return false;
  };
  return assign(0);
}

std::optional<std::pair<int, EmbeddingWitness>> contains_obstruction(
    const PredrawnGraph& p, const ObstructionCatalog& cat, const ExtensionOptions& opts) {
  for (std::size_t i = 0; i < cat.entries.size(); ++i) {
    auto w = pd_subgraph_of_subdivision(cat.entries[i].pattern, p, opts);
    if (w) return std::make_pair(static_cast<int>(i), *w);
  }
  return std::nullopt;
}

}  // namespace pdcross
