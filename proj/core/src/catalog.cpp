#include <algorithm>
#include <deque>
#include <fstream>

#include <json.hpp>

#include "pdcross/extension.hpp"
#include "pdcross/io.hpp"

namespace pdcross {

namespace {

std::string fresh_vertex(const Multigraph& g, const std::string& base) {
  for (int i = 1;; ++i) {
    std::string cand = base + "~" + std::to_string(i);
    if (!g.has_vertex(cand)) return cand;
  }
}

std::string fresh_edge(const Multigraph& g, const std::string& base) {
  for (int i = 1;; ++i) {
    std::string cand = base + "~e" + std::to_string(i);
    if (!g.has_edge(cand)) return cand;
  }
}

int predrawn_degree(const PredrawnGraph& p, const VertexId& v) {
  int d = 0;
  for (const EdgeId& e : p.graph.incident_edges(v)) {
    if (p.graph.edge(e).predrawn) ++d;
  }
  return d;
}

// Move the listed edge-ends from v to v2 in the graph.
void move_ends(Multigraph& g, const VertexId& v, const VertexId& v2,
               const std::set<EdgeId>& moved) {
  for (const EdgeId& id : moved) {
    Edge& e = g.edge_mut(id);
    if (e.u == v) {
      e.u = v2;
    } else {
      e.v = v2;
    }
  }
}

// All one-step splittings of vertices of degree > 3: the neighbourhood is cut
// into two parts of size at least 2 joined by the fresh edge. A predrawn
// vertex splits either along an arc of its predrawn rotation (fresh edge
// predrawn) or by peeling off free ends only (fresh edge free).
std::vector<std::pair<PredrawnGraph, std::string>> all_splittings(const PredrawnGraph& p) {
  std::vector<std::pair<PredrawnGraph, std::string>> out;
  for (const VertexId& v : p.graph.vertices()) {
    std::vector<EdgeId> inc = p.graph.incident_edges(v);
    if (static_cast<int>(inc.size()) <= 3) continue;
    bool v_pre = p.predrawn_vertex_set().count(v) != 0;

    if (!v_pre) {
      // plain split: subsets containing inc[0], both parts >= 2
      std::size_t k = inc.size();
      for (unsigned long mask = 1; mask < (1UL << k); mask += 2) {
        std::set<EdgeId> part_a;
        for (std::size_t i = 0; i < k; ++i) {
          if (mask & (1UL << i)) part_a.insert(inc[i]);
        }
        if (part_a.size() < 2 || k - part_a.size() < 2) continue;
        PredrawnGraph q = p;
        VertexId v2 = fresh_vertex(q.graph, v);
        q.graph.add_vertex(v2);
        std::set<EdgeId> part_b(inc.begin(), inc.end());
        for (const EdgeId& e : part_a) part_b.erase(e);
        move_ends(q.graph, v, v2, part_b);
        Edge bridge;
        bridge.id = fresh_edge(q.graph, "sp");
        bridge.u = v;
        bridge.v = v2;
        q.graph.add_edge(bridge);
        out.push_back({std::move(q), "split(" + v + ")"});
      }
      continue;
    }

    // predrawn vertex: split along an arc of the predrawn rotation
    const auto& rot = p.predrawn.rotations.at(v);
    std::vector<EdgeId> free_ends;
    for (const EdgeId& e : inc) {
      if (!p.graph.edge(e).predrawn) free_ends.push_back(e);
    }
    int hk = static_cast<int>(rot.size());
    // (a) fresh edge predrawn: cut the rotation at two positions
    for (int i = 0; i < hk; ++i) {
      for (int j = i + 1; j <= hk; ++j) {
        if (i == 0 && j == hk) continue;  // both arcs must see the cut
        // arc A = rot[i..j), arc B = rest
        std::vector<EdgeEnd> arc_a(rot.begin() + i, rot.begin() + j);
        std::vector<EdgeEnd> arc_b(rot.begin() + j, rot.end());
        arc_b.insert(arc_b.end(), rot.begin(), rot.begin() + i);
        // free ends distribute in every way
        std::size_t fk = free_ends.size();
        for (unsigned long fmask = 0; fmask < (1UL << fk); ++fmask) {
          std::set<EdgeId> moved;  // to v2 (arc B side)
          for (const EdgeEnd& ee : arc_b) moved.insert(ee.edge);
          std::size_t stay = arc_a.size(), go = arc_b.size();
          for (std::size_t fi = 0; fi < fk; ++fi) {
            if (fmask & (1UL << fi)) {
              moved.insert(free_ends[fi]);
              ++go;
            } else {
              ++stay;
            }
          }
          if (stay + 1 < 3 || go + 1 < 3) continue;  // both sides >= 2 old ends
          PredrawnGraph q = p;
          VertexId v2 = fresh_vertex(q.graph, v);
          q.graph.add_vertex(v2);
          move_ends(q.graph, v, v2, moved);
          Edge bridge;
          bridge.id = fresh_edge(q.graph, "sp");
          bridge.u = v;
          bridge.v = v2;
          bridge.predrawn = true;
          q.graph.add_edge(bridge);
          // predrawn rotations: each arc plus the bridge at the cut
          std::vector<EdgeEnd> ra = arc_a;
          ra.push_back(EdgeEnd{bridge.id, 0});
          std::vector<EdgeEnd> rb = arc_b;
          rb.push_back(EdgeEnd{bridge.id, 1});
          q.predrawn.rotations[v] = std::move(ra);
          q.predrawn.rotations[v2] = std::move(rb);
          out.push_back({std::move(q), "split(" + v + ",H)"});
        }
      }
    }
    // (b) fresh edge free: peel off >= 2 free ends
    std::size_t fk = free_ends.size();
    for (unsigned long fmask = 1; fmask < (1UL << fk); ++fmask) {
      std::set<EdgeId> moved;
      for (std::size_t fi = 0; fi < fk; ++fi) {
        if (fmask & (1UL << fi)) moved.insert(free_ends[fi]);
      }
      if (moved.size() < 2 || inc.size() - moved.size() < 2) continue;
      PredrawnGraph q = p;
      VertexId v2 = fresh_vertex(q.graph, v);
      q.graph.add_vertex(v2);
      move_ends(q.graph, v, v2, moved);
      Edge bridge;
      bridge.id = fresh_edge(q.graph, "sp");
      bridge.u = v;
      bridge.v = v2;
      q.graph.add_edge(bridge);
      out.push_back({std::move(q), "split(" + v + ",free)"});
    }
  }
  return out;
}

bool is_h_bridge(const PredrawnGraph& p, const EdgeId& f) {
  Multigraph h = p.graph.edge_subgraph(p.predrawn_edge_set(), p.predrawn_vertex_set());
  const Edge& e = h.edge(f);
  VertexId u = e.u, v = e.v;
  h.remove_edge(f);
  // bridge iff its ends fall into different components without it
  return h.component_index().at(u) != h.component_index().at(v);
}

// Remove an edge from the predrawn drawing only, using the restriction
// machinery so stranded vertices keep a containment record.
PredrawnGraph release_edge(const PredrawnGraph& p, const EdgeId& f_prime) {
  PredrawnGraph q = p;
  q.graph.edge_mut(f_prime).predrawn = false;
  Multigraph h = p.graph.edge_subgraph(p.predrawn_edge_set(), p.predrawn_vertex_set());
  DrawingWitness w = witness_for_plane_drawing(h, p.predrawn);
  ElementSubset keep;
  keep.vertices = p.predrawn_vertex_set();
  for (const EdgeId& e : p.predrawn_edge_set()) {
    if (e != f_prime) keep.edges.insert(e);
  }
  DrawingWitness r = restrict_witness(w, keep);
  q.predrawn = r.drawing;
  return q;
}

std::vector<std::pair<PredrawnGraph, std::string>> all_releases(const PredrawnGraph& p) {
  std::vector<std::pair<PredrawnGraph, std::string>> out;
  for (const EdgeId& f : p.predrawn_edge_set()) {
    if (!is_h_bridge(p, f)) continue;
    const Edge& e = p.graph.edge(f);
    int du = predrawn_degree(p, e.u);
    int dv = predrawn_degree(p, e.v);
    PredrawnGraph q = p;
    EdgeId f_prime = f;
    if (du > 2 && dv > 2) {
      SubdividedEdge s1 = subdivide_predrawn_edge(q, f);
      SubdividedEdge s2 = subdivide_predrawn_edge(q, s1.second);
      f_prime = s2.first;  // the middle piece
    } else if (du > 2) {
      SubdividedEdge s1 = subdivide_predrawn_edge(q, f);
      f_prime = s1.second;
    } else if (dv > 2) {
      SubdividedEdge s1 = subdivide_predrawn_edge(q, f);
      f_prime = s1.first;
    }
    out.push_back({release_edge(q, f_prime), "release(" + f + ")"});
  }
  return out;
}

}  // namespace

ObstructionCatalog build_catalog(const std::vector<PredrawnGraph>& bases,
                                 const ExtensionOptions& opts) {
  ObstructionCatalog cat;
  cat.complete = false;
  std::deque<std::pair<PredrawnGraph, std::string>> work;
  int base_id = 0;
  for (const PredrawnGraph& b : bases) {
    ValidationReport rep = validate_predrawn(b);
    if (!rep.ok) {
      throw PreconditionError("build_catalog: invalid base " + std::to_string(base_id));
    }
    if (extend_planar(b, opts).has_value()) {
      throw PreconditionError("build_catalog: base " + std::to_string(base_id) +
                              " is extendable and cannot be an obstruction");
    }
    work.push_back({b, "base" + std::to_string(base_id)});
    ++base_id;
  }
  while (!work.empty()) {
    auto [q, provenance] = work.front();
    work.pop_front();

    bool known = false;
    for (const CatalogEntry& entry : cat.entries) {
      if (ppdg_isomorphic(entry.pattern, q, opts)) {
        known = true;
        break;
      }
    }
    if (known) continue;
    if (static_cast<std::int64_t>(cat.entries.size()) >=
        std::min<std::int64_t>(opts.budget.max_candidates, 500)) {
      throw BudgetExceededError("build_catalog: entry budget exceeded");
    }
    // Minimality cut: a candidate that already contains an entry as a
    // subdivision-subgraph is redundant for obstruction checking and is not
    // expanded further. This is what keeps release chains finite.
    bool subsumed = false;
    for (const CatalogEntry& entry : cat.entries) {
      try {
        ExtensionOptions capped = opts;
        capped.budget.max_nodes = std::min<std::int64_t>(capped.budget.max_nodes, 200'000);
        if (pd_subgraph_of_subdivision(entry.pattern, q, capped)) {
          subsumed = true;
          break;
        }
      } catch (const BudgetExceededError&) {
        // undecided: keep the candidate, soundness is unaffected
      }
    }
    if (subsumed) continue;
    CatalogEntry entry;
    entry.name = "obstruction" + std::to_string(cat.entries.size());
    entry.provenance = provenance;
    entry.pattern = q;
    cat.entries.push_back(entry);
    for (auto& [split, tag] : all_splittings(q)) {
      work.push_back({std::move(split), provenance + "+" + tag});
    }
    for (auto& [released, tag] : all_releases(q)) {
      work.push_back({std::move(released), provenance + "+" + tag});
    }
  }
  // Subsumption: drop entries that contain an earlier-listed entry as a
  // subdivision-subgraph; the kept set stays sound and smaller.
  std::vector<bool> drop(cat.entries.size(), false);
  for (std::size_t i = 0; i < cat.entries.size(); ++i) {
    if (drop[i]) continue;
    for (std::size_t j = 0; j < cat.entries.size(); ++j) {
      if (i == j || drop[j]) continue;
      if (cat.entries[j].pattern.graph.num_vertices() <
          cat.entries[i].pattern.graph.num_vertices()) {
        continue;
      }
      if (ppdg_isomorphic(cat.entries[i].pattern, cat.entries[j].pattern, opts)) continue;
      try {
        ExtensionOptions capped = opts;
        capped.budget.max_nodes = std::min<std::int64_t>(capped.budget.max_nodes, 200'000);
        if (pd_subgraph_of_subdivision(cat.entries[i].pattern, cat.entries[j].pattern, capped)) {
          drop[j] = true;
        }
      } catch (const BudgetExceededError&) {
        // keeping the entry is sound; the catalog stays a superset
      }
    }
  }
  ObstructionCatalog pruned;
  pruned.complete = false;
  for (std::size_t i = 0; i < cat.entries.size(); ++i) {
    if (!drop[i]) pruned.entries.push_back(cat.entries[i]);
  }
  // Every surviving entry is non-extendable: bases were checked, and both
  // operations reverse planarity-preserving reductions.
  for (const CatalogEntry& entry : pruned.entries) {
    if (extend_planar(entry.pattern, opts).has_value()) {
      throw InternalError("build_catalog: derived entry became extendable: " + entry.provenance);
    }
  }
  return pruned;
}

ObstructionCatalog load_catalog(const std::string& manifest_path, const ExtensionOptions& opts) {
  std::ifstream in(manifest_path);
  if (!in) throw ParseError("cannot open catalog manifest " + manifest_path);
  nlohmann::json manifest = nlohmann::json::parse(in);
  std::string dir = manifest_path.substr(0, manifest_path.find_last_of('/') + 1);
  std::vector<PredrawnGraph> bases;
  std::vector<std::string> names;
  for (const auto& item : manifest.at("bases")) {
    PdgFile f = load_pdg(dir + item.at("file").get<std::string>());
    bases.push_back(predrawn_from_file(f));
    names.push_back(item.value("name", item.at("file").get<std::string>()));
  }
  ObstructionCatalog cat = build_catalog(bases, opts);
  // Re-tag entries that are bases with their manifest names.
  for (CatalogEntry& e : cat.entries) {
    if (e.provenance.rfind("base", 0) == 0 && e.provenance.find('+') == std::string::npos) {
      std::size_t idx = std::stoul(e.provenance.substr(4));
      if (idx < names.size()) e.name = names[idx];
    }
  }
  cat.complete = manifest.value("complete", false);
  return cat;
}

}  // namespace pdcross
