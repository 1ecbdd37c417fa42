#include "support/oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <vector>

namespace pdcross::testing {

namespace {

// Dense simple-graph view: vertices 0..n-1, deduplicated edges.
struct SimpleView {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> adj;
};

SimpleView simple_view(const Multigraph& g) {
  SimpleView s;
  std::map<VertexId, int> index;
  for (const VertexId& v : g.vertices()) {
    index[v] = s.n++;
  }
  std::set<std::pair<int, int>> seen;
  s.adj.resize(static_cast<std::size_t>(s.n));
  for (const Edge& e : g.edges()) {
    int a = index[e.u], b = index[e.v];
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second) continue;
    s.edges.push_back({a, b});
    s.adj[static_cast<std::size_t>(a)].push_back(b);
    s.adj[static_cast<std::size_t>(b)].push_back(a);
  }
  return s;
}

// Biconnected blocks as edge lists (lowpoint DFS).
std::vector<std::vector<std::pair<int, int>>> blocks_of(const SimpleView& s) {
  std::vector<std::vector<std::pair<int, int>>> blocks;
  std::vector<int> num(static_cast<std::size_t>(s.n), -1), low(static_cast<std::size_t>(s.n), 0);
  std::vector<std::pair<int, int>> stack;
  int counter = 0;
  std::function<void(int, int)> dfs = [&](int v, int parent) {
    num[static_cast<std::size_t>(v)] = low[static_cast<std::size_t>(v)] = counter++;
    for (int w : s.adj[static_cast<std::size_t>(v)]) {
      if (w == parent) {
        parent = -2;  // skip the tree edge once; parallel edges were deduped
        continue;
      }
      if (num[static_cast<std::size_t>(w)] == -1) {
        stack.push_back({v, w});
        dfs(w, v);
        low[static_cast<std::size_t>(v)] =
            std::min(low[static_cast<std::size_t>(v)], low[static_cast<std::size_t>(w)]);
        if (low[static_cast<std::size_t>(w)] >= num[static_cast<std::size_t>(v)]) {
          std::vector<std::pair<int, int>> blk;
          while (true) {
            auto e = stack.back();
            stack.pop_back();
            blk.push_back(e);
            if (e == std::pair(v, w)) break;
          }
          blocks.push_back(std::move(blk));
        }
      } else if (num[static_cast<std::size_t>(w)] < num[static_cast<std::size_t>(v)]) {
        stack.push_back({v, w});
        low[static_cast<std::size_t>(v)] =
            std::min(low[static_cast<std::size_t>(v)], num[static_cast<std::size_t>(w)]);
      }
    }
  };
  for (int v = 0; v < s.n; ++v) {
    if (num[static_cast<std::size_t>(v)] == -1) dfs(v, -1);
  }
  return blocks;
}

// Demoucron on one biconnected block.
bool demoucron_block(const std::vector<std::pair<int, int>>& block_edges) {
  if (block_edges.size() <= 3) return true;
  std::set<int> vset;
  for (auto [a, b] : block_edges) {
    vset.insert(a);
    vset.insert(b);
  }
  std::map<int, std::vector<int>> adj;
  std::set<std::pair<int, int>> edge_set;
  for (auto [a, b] : block_edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
    edge_set.insert({std::min(a, b), std::max(a, b)});
  }
  long v = static_cast<long>(vset.size()), e = static_cast<long>(block_edges.size());
  if (e > 3 * v - 6) return false;

  // Initial cycle by DFS.
  std::vector<int> cycle;
  {
    std::map<int, int> parent;
    std::function<bool(int, int)> dfs = [&](int x, int p) {
      parent[x] = p;
      for (int y : adj[x]) {
        if (y == p) {
          p = -2;
          continue;
        }
        if (parent.count(y)) {
          // back edge x->y closes a cycle
          cycle.clear();
          int cur = x;
          while (cur != y) {
            cycle.push_back(cur);
            cur = parent[cur];
          }
          cycle.push_back(y);
          return true;
        }
        if (dfs(y, x)) return true;
      }
      return false;
    };
    dfs(*vset.begin(), -1);
  }
  if (cycle.size() < 3) return true;

  std::set<int> embedded_v(cycle.begin(), cycle.end());
  std::set<std::pair<int, int>> embedded_e;
  auto mark_edge = [&](int a, int b) { embedded_e.insert({std::min(a, b), std::max(a, b)}); };
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    mark_edge(cycle[i], cycle[(i + 1) % cycle.size()]);
  }
  std::vector<std::vector<int>> faces = {cycle, {cycle.rbegin(), cycle.rend()}};

  while (embedded_e.size() < edge_set.size()) {
    // Fragments: chords, and bridges through unembedded vertices.
    struct Fragment {
      std::set<int> attachments;
      std::set<int> interior;            // unembedded vertices
      std::vector<int> chord;            // set when the fragment is one edge
    };
    std::vector<Fragment> fragments;
    for (auto [a, b] : edge_set) {
      if (embedded_e.count({a, b})) continue;
      if (embedded_v.count(a) && embedded_v.count(b)) {
        Fragment f;
        f.attachments = {a, b};
        f.chord = {a, b};
        fragments.push_back(std::move(f));
      }
    }
    std::set<int> seen;
    for (int start : vset) {
      if (embedded_v.count(start) || seen.count(start)) continue;
      Fragment f;
      std::queue<int> q;
      q.push(start);
      seen.insert(start);
      while (!q.empty()) {
        int x = q.front();
        q.pop();
        f.interior.insert(x);
        for (int y : adj[x]) {
          if (embedded_v.count(y)) {
            f.attachments.insert(y);
          } else if (seen.insert(y).second) {
            q.push(y);
          }
        }
      }
      fragments.push_back(std::move(f));
    }
    if (fragments.empty()) break;

    // Admissible faces per fragment.
    std::vector<std::vector<int>> admissible(fragments.size());
    for (std::size_t fi = 0; fi < fragments.size(); ++fi) {
      for (std::size_t c = 0; c < faces.size(); ++c) {
        std::set<int> fv(faces[c].begin(), faces[c].end());
        bool ok = std::all_of(fragments[fi].attachments.begin(), fragments[fi].attachments.end(),
                              [&](int a) { return fv.count(a) != 0; });
        if (ok) admissible[fi].push_back(static_cast<int>(c));
      }
      if (admissible[fi].empty()) return false;
    }
    std::size_t pick = 0;
    for (std::size_t fi = 0; fi < fragments.size(); ++fi) {
      if (admissible[fi].size() == 1) {
        pick = fi;
        break;
      }
    }
    const Fragment& frag = fragments[pick];
    int face_id = admissible[pick][0];

    // An alpha-path between two attachments through the fragment.
    std::vector<int> path;
    if (!frag.chord.empty()) {
      path = frag.chord;
    } else {
      int a0 = *frag.attachments.begin();
      int goal = frag.attachments.size() >= 2 ? *std::next(frag.attachments.begin()) : a0;
      // BFS from a0 through the interior to goal.
      std::map<int, int> parent;
      std::queue<int> q;
      for (int y : adj[a0]) {
        if (frag.interior.count(y) && !parent.count(y)) {
          parent[y] = a0;
          q.push(y);
        }
      }
      int hit = -1;
      if (frag.attachments.size() < 2) {
        // Single attachment: embed a path from a0 into the fragment and back?
        // Cannot happen in a biconnected block.
        return false;
      }
      while (!q.empty() && hit == -1) {
        int x = q.front();
        q.pop();
        for (int y : adj[x]) {
          if (y == goal) {
            hit = x;
            break;
          }
          if (frag.interior.count(y) && !parent.count(y)) {
            parent[y] = x;
            q.push(y);
          }
        }
      }
      if (hit == -1) return false;  // should not happen
      path.push_back(goal);
      int cur = hit;
      while (cur != a0) {
        path.push_back(cur);
        cur = parent[cur];
      }
      path.push_back(a0);
      std::reverse(path.begin(), path.end());  // a0 ... goal
    }

    // Split the face along the path.
    std::vector<int> face = faces[static_cast<std::size_t>(face_id)];
    int u = path.front(), w = path.back();
    auto it_u = std::find(face.begin(), face.end(), u);
    std::rotate(face.begin(), it_u, face.end());
    auto it_w = std::find(face.begin(), face.end(), w);
    std::vector<int> seg1(face.begin() + 1, it_w);           // strictly between u and w
    std::vector<int> seg2(it_w + 1, face.end());             // strictly between w and u
    std::vector<int> interior(path.begin() + 1, path.end() - 1);
    std::vector<int> f1, f2;
    f1.push_back(u);
    f1.insert(f1.end(), interior.begin(), interior.end());
    f1.push_back(w);
    f1.insert(f1.end(), seg2.begin(), seg2.end());
    f2.push_back(u);
    f2.insert(f2.end(), seg1.begin(), seg1.end());
    f2.push_back(w);
    f2.insert(f2.end(), interior.rbegin(), interior.rend());
    faces[static_cast<std::size_t>(face_id)] = f1;
    faces.push_back(f2);

    for (std::size_t i = 0; i + 1 < path.size(); ++i) mark_edge(path[i], path[i + 1]);
    for (int x : interior) embedded_v.insert(x);
  }
  return true;
}

}  // namespace

bool planar_demoucron(const Multigraph& g) {
  SimpleView s = simple_view(g);
  if (s.n >= 3 && static_cast<long>(s.edges.size()) > 3L * s.n - 6) return false;
  for (const auto& blk : blocks_of(s)) {
    if (!demoucron_block(blk)) return false;
  }
  return true;
}

bool genus0_by_rotations(const Multigraph& g) {
  if (!g.connected()) throw PreconditionError("genus0_by_rotations: graph must be connected");
  std::vector<EdgeId> eids;
  for (const Edge& e : g.edges()) eids.push_back(e.id);
  // darts: 2 per edge; dart 2i = (edge i, at u), dart 2i+1 = (edge i, at v)
  std::map<VertexId, std::vector<int>> darts_at;
  for (std::size_t i = 0; i < eids.size(); ++i) {
    const Edge& e = g.edge(eids[i]);
    darts_at[e.u].push_back(static_cast<int>(2 * i));
    darts_at[e.v].push_back(static_cast<int>(2 * i + 1));
  }
  long long work = 1;
  for (const auto& [v, ds] : darts_at) {
    for (std::size_t k = 2; k < ds.size(); ++k) work *= static_cast<long long>(k);
    if (work > 2'000'000) {
      throw PreconditionError("genus0_by_rotations: graph too large for enumeration");
    }
  }
  int dart_count = static_cast<int>(2 * eids.size());
  std::vector<int> next(static_cast<std::size_t>(dart_count));  // rotation successor
  std::vector<std::vector<int>> perms;
  std::vector<VertexId> vorder;
  for (const auto& [v, ds] : darts_at) vorder.push_back(v);

  std::function<bool(std::size_t)> enumerate = [&](std::size_t vi) -> bool {
    if (vi == vorder.size()) {
      // count faces: dart-walk: from dart d (arriving), successor = next[mate(d)]
      std::vector<bool> seen(static_cast<std::size_t>(dart_count), false);
      int faces = 0;
      for (int d0 = 0; d0 < dart_count; ++d0) {
        if (seen[static_cast<std::size_t>(d0)]) continue;
        ++faces;
        int d = d0;
        do {
          seen[static_cast<std::size_t>(d)] = true;
          d = next[static_cast<std::size_t>(d ^ 1)];
        } while (d != d0);
      }
      long v = static_cast<long>(g.num_vertices());
      long e = static_cast<long>(g.num_edges());
      return v - e + faces == 2;
    }
    std::vector<int> ds = darts_at[vorder[vi]];
    if (ds.size() <= 1) {
      if (!ds.empty()) next[static_cast<std::size_t>(ds[0])] = ds[0];
      return enumerate(vi + 1);
    }
    std::vector<int> rest(ds.begin() + 1, ds.end());
    std::sort(rest.begin(), rest.end());
    do {
      int prev = ds[0];
      for (int d : rest) {
        next[static_cast<std::size_t>(prev)] = d;
        prev = d;
      }
      next[static_cast<std::size_t>(prev)] = ds[0];
      if (enumerate(vi + 1)) return true;
    } while (std::next_permutation(rest.begin(), rest.end()));
    return false;
  };
  return enumerate(0);
}

int classical_crossing_oracle(const Multigraph& g, int max_q) {
  if (planar_demoucron(g)) return 0;
  std::vector<EdgeId> eids;
  for (const Edge& e : g.edges()) eids.push_back(e.id);
  // Candidate crossing pairs: distinct, non-adjacent edges (optimal drawings
  // of the sought size never need adjacent or repeated crossings).
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < eids.size(); ++i) {
    for (std::size_t j = i + 1; j < eids.size(); ++j) {
      const Edge& a = g.edge(eids[i]);
      const Edge& b = g.edge(eids[j]);
      if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) continue;
      pairs.push_back({static_cast<int>(i), static_cast<int>(j)});
    }
  }

  for (int q = 1; q <= max_q; ++q) {
    std::vector<int> idx(static_cast<std::size_t>(q));
    std::function<bool(int, int)> choose = [&](int slot, int from) -> bool {
      if (slot == q) {
        // Partner lists per edge, then all orderings along each edge.
        std::map<int, std::vector<int>> partners;  // edge -> crossing ids (slots)
        for (int s = 0; s < q; ++s) {
          partners[pairs[static_cast<std::size_t>(idx[static_cast<std::size_t>(s)])].first]
              .push_back(s);
          partners[pairs[static_cast<std::size_t>(idx[static_cast<std::size_t>(s)])].second]
              .push_back(s);
        }
        std::vector<std::pair<int, std::vector<int>>> order(partners.begin(), partners.end());
        std::function<bool(std::size_t)> arrange = [&](std::size_t at) -> bool {
          if (at == order.size()) {
            Multigraph h;
            for (const VertexId& v : g.vertices()) h.add_vertex(v);
            for (int s = 0; s < q; ++s) h.add_vertex("x$" + std::to_string(s));
            for (std::size_t ei = 0; ei < eids.size(); ++ei) {
              const Edge& e = g.edge(eids[ei]);
              auto it = partners.find(static_cast<int>(ei));
              if (it == partners.end()) {
                h.add_edge(e);
                continue;
              }
              VertexId prev = e.u;
              int seg = 0;
              for (int s : it->second) {
                Edge piece = e;
                piece.id = piece_id(e.id, seg++);
                piece.u = prev;
                piece.v = "x$" + std::to_string(s);
                h.add_edge(piece);
                prev = piece.v;
              }
              Edge piece = e;
              piece.id = piece_id(e.id, seg);
              piece.u = prev;
              piece.v = e.v;
              h.add_edge(piece);
            }
            return planar_demoucron(h);
          }
          std::vector<int>& lst = partners[order[at].first];
          std::sort(lst.begin(), lst.end());
          do {
            if (arrange(at + 1)) return true;
          } while (std::next_permutation(lst.begin(), lst.end()));
          return false;
        };
        return arrange(0);
      }
      for (int p = from; p < static_cast<int>(pairs.size()); ++p) {
        idx[static_cast<std::size_t>(slot)] = p;
        if (choose(slot + 1, p + 1)) return true;
      }
      return false;
    };
    if (choose(0, 0)) return q;
  }
  return -1;
}

}  // namespace pdcross::testing
