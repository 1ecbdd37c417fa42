#include <algorithm>
#include <functional>
#include <queue>

#include "pdcross/extension.hpp"

namespace pdcross {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void merge(int a, int b) { parent[find(a)] = find(b); }
};

Multigraph predrawn_subgraph(const PredrawnGraph& p) {
  return p.graph.edge_subgraph(p.predrawn_edge_set(), p.predrawn_vertex_set());
}

// All simple cycles of h as vertex sequences, canonical orientation, capped.
std::vector<std::vector<VertexId>> simple_cycles(const Multigraph& h, std::int64_t cap) {
  std::vector<std::vector<VertexId>> out;
  std::vector<VertexId> vs(h.vertices().begin(), h.vertices().end());
  for (const VertexId& start : vs) {
    std::vector<VertexId> path{start};
    std::set<VertexId> on_path{start};
    std::function<void(const VertexId&)> dfs = [&](const VertexId& cur) {
      if (static_cast<std::int64_t>(out.size()) > cap) {
        throw BudgetExceededError("find_alternating_chain: cycle enumeration budget");
      }
      for (const VertexId& nxt : h.neighbors(cur)) {
        if (nxt == start && path.size() >= 3) {
          if (path[1] < path.back()) out.push_back(path);
          continue;
        }
        if (nxt < start || nxt == start || on_path.count(nxt)) continue;
        path.push_back(nxt);
        on_path.insert(nxt);
        dfs(nxt);
        path.pop_back();
        on_path.erase(nxt);
      }
    };
    dfs(start);
  }
  return out;
}

EdgeId edge_between(const Multigraph& h, const VertexId& a, const VertexId& b) {
  std::optional<EdgeId> best;
  for (const EdgeId& e : h.incident_edges(a)) {
    if (h.edge(e).other(a) == b && (!best || e < *best)) best = e;
  }
  if (!best) throw InternalError("edge_between: vertices not adjacent");
  return *best;
}

struct SideStructure {
  std::map<VertexId, int> side_of_vertex;
  bool valid = false;
};

// Split the predrawn arrangement along the cycle: regions reachable without
// crossing a cycle edge or sweeping past a cycle vertex across the cycle.
SideStructure sides_of_cycle(const PredrawnGraph& p, const std::vector<EdgeId>& cycle_edges) {
  SideStructure out;
  ResolvedDrawing res = ResolvedDrawing::resolve(p.graph, p.predrawn);
  std::set<EdgeId> on_cycle(cycle_edges.begin(), cycle_edges.end());
  std::set<VertexId> cycle_vertices;
  for (const EdgeId& e : cycle_edges) {
    cycle_vertices.insert(p.graph.edge(e).u);
    cycle_vertices.insert(p.graph.edge(e).v);
  }

  UnionFind uf(res.num_nodes());
  std::map<int, int> region_rep;
  for (int n = 0; n < res.num_nodes(); ++n) {
    auto it = region_rep.find(res.region_of(n));
    if (it == region_rep.end()) {
      region_rep[res.region_of(n)] = n;
    } else {
      uf.merge(n, it->second);
    }
  }
  for (const EdgeId& e : p.predrawn.drawn_edges()) {
    if (on_cycle.count(e)) continue;
    uf.merge(res.face_of(DirEdge{e, true}), res.face_of(DirEdge{e, false}));
  }
  for (const VertexId& v : cycle_vertices) {
    const auto& rot = res.rotations().at(v);
    int k = static_cast<int>(rot.size());
    auto corner_face = [&](int i) {
      const EdgeEnd& ee = rot[static_cast<std::size_t>(i)];
      return res.face_of(DirEdge{ee.edge, ee.end == 1});
    };
    for (int i = 0; i < k; ++i) {
      const EdgeEnd& next_end = rot[static_cast<std::size_t>((i + 1) % k)];
      if (on_cycle.count(next_end.edge)) continue;
      uf.merge(corner_face(i), corner_face((i + 1) % k));
    }
  }
  int left = uf.find(res.face_of(DirEdge{cycle_edges[0], true}));
  int right = uf.find(res.face_of(DirEdge{cycle_edges[0], false}));
  if (left == right) return out;
  for (const VertexId& v : p.predrawn_vertex_set()) {
    if (cycle_vertices.count(v)) continue;
    const auto& rot = res.rotations().at(v);
    int node = rot.empty() ? res.node_of_isolated(v)
                           : res.face_of(DirEdge{rot.front().edge, rot.front().end == 1});
    int cls = uf.find(node);
    if (cls == left) {
      out.side_of_vertex[v] = 0;
    } else if (cls == right) {
      out.side_of_vertex[v] = 1;
    }
  }
  out.valid = true;
  return out;
}

struct CPath {
  std::vector<VertexId> vertices;
  std::set<VertexId> vertex_set;
};

std::vector<CPath> cycle_paths(const PredrawnGraph& p, const std::set<VertexId>& cycle_vertices,
                               std::int64_t cap) {
  std::vector<CPath> out;
  for (const VertexId& start : cycle_vertices) {
    std::vector<VertexId> path{start};
    std::set<VertexId> on_path{start};
    std::function<void(const VertexId&)> dfs = [&](const VertexId& cur) {
      if (static_cast<std::int64_t>(out.size()) > cap) {
        throw BudgetExceededError("find_alternating_chain: path enumeration budget");
      }
      for (const VertexId& nxt : p.graph.neighbors(cur)) {
        if (on_path.count(nxt)) continue;
        if (cycle_vertices.count(nxt)) {
          if (nxt > start) {  // direct chords included; each path found once
            CPath cp;
            cp.vertices = path;
            cp.vertices.push_back(nxt);
            cp.vertex_set = on_path;
            cp.vertex_set.insert(nxt);
            out.push_back(std::move(cp));
          }
          continue;
        }
        path.push_back(nxt);
        on_path.insert(nxt);
        dfs(nxt);
        path.pop_back();
        on_path.erase(nxt);
      }
    };
    dfs(start);
  }
  return out;
}

bool paths_alternate(const std::vector<VertexId>& cycle_order, const CPath& a, const CPath& b) {
  for (const VertexId& v : a.vertex_set) {
    if (b.vertex_set.count(v)) return false;
  }
  auto pos = [&](const VertexId& v) {
    return std::find(cycle_order.begin(), cycle_order.end(), v) - cycle_order.begin();
  };
  long ax = pos(a.vertices.front()), ay = pos(a.vertices.back());
  long bx = pos(b.vertices.front()), by = pos(b.vertices.back());
  long n = static_cast<long>(cycle_order.size());
  auto strictly_between = [&](long x, long m, long y) {
    long span = (y - x + n) % n;
    long off = (m - x + n) % n;
    return off > 0 && off < span;
  };
  return strictly_between(ax, bx, ay) != strictly_between(ax, by, ay);
}

}  // namespace

int predrawn_side_of_cycle(const PredrawnGraph& p, const std::vector<EdgeId>& cycle,
                           const VertexId& v) {
  SideStructure s = sides_of_cycle(p, cycle);
  if (!s.valid) throw PreconditionError("predrawn_side_of_cycle: edges do not bound two sides");
  auto it = s.side_of_vertex.find(v);
  if (it == s.side_of_vertex.end()) {
    throw PreconditionError("predrawn_side_of_cycle: vertex on the cycle or not predrawn");
  }
  return it->second;
}

std::optional<ChainWitness> find_alternating_chain(const PredrawnGraph& p,
                                                   const ExtensionOptions& opts) {
  if (static_cast<int>(p.graph.num_vertices()) > opts.budget.max_vertices) {
    throw BudgetExceededError("find_alternating_chain: instance too large");
  }
  Multigraph h = predrawn_subgraph(p);
  std::vector<std::vector<VertexId>> cycles = simple_cycles(h, opts.budget.max_candidates);
  std::set<VertexId> predrawn = p.predrawn_vertex_set();

  for (const auto& cyc : cycles) {
    std::vector<EdgeId> cyc_edges;
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      cyc_edges.push_back(edge_between(h, cyc[i], cyc[(i + 1) % cyc.size()]));
    }
    std::set<VertexId> cyc_vertices(cyc.begin(), cyc.end());
    SideStructure sides = sides_of_cycle(p, cyc_edges);
    if (!sides.valid) continue;

    std::vector<CPath> paths = cycle_paths(p, cyc_vertices, opts.budget.max_candidates);
    if (paths.empty()) continue;
    std::size_t np = paths.size();
    std::vector<std::vector<int>> alternates(np);
    for (std::size_t i = 0; i < np; ++i) {
      for (std::size_t j = 0; j < np; ++j) {
        if (i != j && paths_alternate(cyc, paths[i], paths[j])) {
          alternates[i].push_back(static_cast<int>(j));
        }
      }
    }

    for (const VertexId& s : predrawn) {
      if (cyc_vertices.count(s)) continue;
      for (const VertexId& t : predrawn) {
        if (t == s || cyc_vertices.count(t)) continue;
        auto is_ = sides.side_of_vertex.find(s);
        auto it_ = sides.side_of_vertex.find(t);
        if (is_ == sides.side_of_vertex.end() || it_ == sides.side_of_vertex.end()) continue;
        int need_parity = is_->second == it_->second ? 0 : 1;

        std::vector<std::vector<int>> prev(np, std::vector<int>(2, -2));
        std::queue<std::pair<int, int>> q;  // (path, parity of a)
        std::optional<std::pair<int, int>> accept;
        for (std::size_t i = 0; i < np; ++i) {
          if (paths[i].vertex_set.count(s)) {
            prev[i][1] = -1;
            q.push({static_cast<int>(i), 1});
          }
        }
        while (!q.empty() && !accept) {
          auto [cur, parity] = q.front();
          q.pop();
          for (int nxt : alternates[static_cast<std::size_t>(cur)]) {
            int np2 = 1 - parity;
            if (prev[static_cast<std::size_t>(nxt)][static_cast<std::size_t>(np2)] != -2) {
              continue;
            }
            prev[static_cast<std::size_t>(nxt)][static_cast<std::size_t>(np2)] =
                cur * 2 + parity;
            if (paths[static_cast<std::size_t>(nxt)].vertex_set.count(t) && np2 == need_parity) {
              accept = {nxt, np2};
              break;
            }
            q.push({nxt, np2});
          }
        }
        if (!accept) continue;

        ChainWitness w;
        w.cycle = cyc_edges;
        w.s = s;
        w.t = t;
        w.parity = need_parity;
        std::vector<std::vector<VertexId>> rev;
        int path = accept->first, parity = accept->second;
        while (true) {
          rev.push_back(paths[static_cast<std::size_t>(path)].vertices);
          int code = prev[static_cast<std::size_t>(path)][static_cast<std::size_t>(parity)];
          if (code == -1) break;
          path = code / 2;
          parity = code % 2;
        }
        std::reverse(rev.begin(), rev.end());
        w.paths = std::move(rev);
        return w;
      }
    }
  }
  return std::nullopt;
}

ValidationReport validate_chain(const PredrawnGraph& p, const ChainWitness& w) {
  ValidationReport rep;
  std::set<EdgeId> h_edges = p.predrawn_edge_set();
  for (const EdgeId& e : w.cycle) {
    if (!h_edges.count(e)) rep.fail("cycle edge not predrawn", e);
  }
  std::set<VertexId> cyc_vertices;
  for (const EdgeId& e : w.cycle) {
    cyc_vertices.insert(p.graph.edge(e).u);
    cyc_vertices.insert(p.graph.edge(e).v);
  }
  for (const VertexId* v : {&w.s, &w.t}) {
    if (!p.predrawn_vertex_set().count(*v)) rep.fail("chain endpoint not predrawn", *v);
    if (cyc_vertices.count(*v)) rep.fail("chain endpoint on the cycle", *v);
  }
  if (w.paths.size() < 2) rep.fail("chain too short", std::to_string(w.paths.size()));
  if (!rep.ok) return rep;
  for (std::size_t i = 0; i < w.paths.size(); ++i) {
    const auto& path = w.paths[i];
    if (path.size() < 2 || !cyc_vertices.count(path.front()) ||
        !cyc_vertices.count(path.back())) {
      rep.fail("path ends not on the cycle", std::to_string(i));
      continue;
    }
    for (std::size_t j = 1; j + 1 < path.size(); ++j) {
      if (cyc_vertices.count(path[j])) rep.fail("path touches the cycle internally", path[j]);
    }
    for (std::size_t j = 0; j + 1 < path.size(); ++j) {
      bool adj = false;
      for (const VertexId& nb : p.graph.neighbors(path[j])) {
        if (nb == path[j + 1]) adj = true;
      }
      if (!adj) rep.fail("path step not an edge", path[j] + "-" + path[j + 1]);
    }
  }
  if (!rep.ok) return rep;
  std::vector<VertexId> order;
  {
    std::map<VertexId, std::vector<VertexId>> adj;
    for (const EdgeId& e : w.cycle) {
      adj[p.graph.edge(e).u].push_back(p.graph.edge(e).v);
      adj[p.graph.edge(e).v].push_back(p.graph.edge(e).u);
    }
    VertexId cur = adj.begin()->first, prev = "";
    do {
      order.push_back(cur);
      VertexId nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = nxt;
    } while (cur != order.front());
  }
  for (std::size_t i = 0; i + 1 < w.paths.size(); ++i) {
    CPath a{w.paths[i], {w.paths[i].begin(), w.paths[i].end()}};
    CPath b{w.paths[i + 1], {w.paths[i + 1].begin(), w.paths[i + 1].end()}};
    if (!paths_alternate(order, a, b)) {
      rep.fail("consecutive paths do not alternate", std::to_string(i));
    }
  }
  bool s_on = std::count(w.paths.front().begin(), w.paths.front().end(), w.s) > 0;
  bool t_on = std::count(w.paths.back().begin(), w.paths.back().end(), w.t) > 0;
  if (!s_on) rep.fail("s not on the first path", w.s);
  if (!t_on) rep.fail("t not on the last path", w.t);
  if (static_cast<int>(w.paths.size() % 2) != w.parity) rep.fail("parity mismatch", "");
  if (rep.ok) {
    int side_s = predrawn_side_of_cycle(p, w.cycle, w.s);
    int side_t = predrawn_side_of_cycle(p, w.cycle, w.t);
    bool same = side_s == side_t;
    if (same != (w.paths.size() % 2 == 0)) rep.fail("face parity condition violated", "");
  }
  return rep;
}

}  // namespace pdcross
