#include "pdcross/extension.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

namespace pdcross {

namespace {

// Backtracking insertion over sphere arrangements. Vertices and edges are
// indexed; a dart is 2*edge+end and doubles as the arrival end at its vertex.
// Corners are rotation gaps, named by the dart they follow clockwise (-1 for
// the single gap of an isolated vertex). Regions are unions of traced faces
// linked by corner-anchored merges: the merge list starts out encoding the
// predrawn containment structure and grows when fresh component roots are
// dropped into regions. The predrawn rotations are never touched and
// insertions refine regions without leaving them, so every completed
// arrangement restricts to the predrawn drawing; the outer face is chosen at
// the end inside the region descending from the predrawn outer face.
class InsertionSearch {
 public:
  InsertionSearch(const PredrawnGraph& p, const ExtensionOptions& opts)
      : instance_(p), opts_(opts) {
    for (const VertexId& v : p.graph.vertices()) {
      vid_.push_back(v);
      vindex_[v] = static_cast<int>(vid_.size()) - 1;
    }
    for (const Edge& e : p.graph.edges()) {
      eid_.push_back(e.id);
      eindex_[e.id] = static_cast<int>(eid_.size()) - 1;
      ends_.push_back({vindex_.at(e.u), vindex_.at(e.v)});
    }
    n_ = static_cast<int>(vid_.size());
    m_ = static_cast<int>(eid_.size());
    rot_.assign(static_cast<std::size_t>(n_), {});
    placed_.assign(static_cast<std::size_t>(n_), false);
    inserted_.assign(static_cast<std::size_t>(m_), false);
    pending_degree_.assign(static_cast<std::size_t>(n_), 0);
    for (const auto& [a, b] : ends_) {
      pending_degree_[static_cast<std::size_t>(a)]++;
      pending_degree_[static_cast<std::size_t>(b)]++;
    }
  }

  std::optional<PlaneDrawing> run() {
    if (n_ > opts_.budget.max_vertices) {
      throw BudgetExceededError("extend_planar: instance too large for exact oracle (" +
                                std::to_string(n_) + " > " +
                                std::to_string(opts_.budget.max_vertices) + " vertices)");
    }
    seed_predrawn();
    if (!search()) return std::nullopt;
    return assemble();
  }

  std::vector<PlaneDrawing> run_all(std::size_t cap) {
    if (n_ > opts_.budget.max_vertices) {
      throw BudgetExceededError("extend_planar: instance too large for exact oracle");
    }
    seed_predrawn();
    collect_ = true;
    collect_cap_ = cap;
    search();
    return collected_;
  }

 private:
  struct Corner {
    int v = -1;
    int after = -1;
    auto operator<=>(const Corner&) const = default;
  };
  struct Merge {
    Corner a, b;
  };

  int head(int dart) const {
    return dart % 2 == 0 ? ends_[static_cast<std::size_t>(dart / 2)].first
                         : ends_[static_cast<std::size_t>(dart / 2)].second;
  }
  static int mate(int dart) { return dart ^ 1; }

  void seed_predrawn() {
    const PlaneDrawing& d = instance_.predrawn;
    if (d.rotations.empty()) return;
    ResolvedDrawing res = ResolvedDrawing::resolve(instance_.graph, d);
    for (const auto& [v, rot] : res.rotations()) {
      int vi = vindex_.at(v);
      placed_[static_cast<std::size_t>(vi)] = true;
      for (const EdgeEnd& ee : rot) {
        int e = eindex_.at(ee.edge);
        rot_[static_cast<std::size_t>(vi)].push_back(2 * e + ee.end);
        if (!inserted_[static_cast<std::size_t>(e)]) {
          inserted_[static_cast<std::size_t>(e)] = true;
          mark_inserted(e);
        }
      }
    }
    std::map<int, Corner> region_anchor;
    auto anchor_node = [&](int node) -> Corner {
      if (node < res.num_faces()) {
        DirEdge de = res.face_walk(node).front();
        int dart = 2 * eindex_.at(de.edge) + (de.forward ? 1 : 0);
        return Corner{head(dart), dart};
      }
      const VertexId& v =
          res.isolated_vertices().at(static_cast<std::size_t>(node - res.num_faces()));
      return Corner{vindex_.at(v), -1};
    };
    for (int node = 0; node < res.num_nodes(); ++node) {
      int region = res.region_of(node);
      Corner c = anchor_node(node);
      auto it = region_anchor.find(region);
      if (it == region_anchor.end()) {
        region_anchor[region] = c;
      } else {
        merges_.push_back(Merge{it->second, c});
      }
    }
    if (d.outer_face) {
      DirEdge de = d.outer_face->as_left_dart();
      outer_dart_ = 2 * eindex_.at(de.edge) + (de.forward ? 1 : 0);
    }
  }

  void mark_inserted(int e) {
    pending_degree_[static_cast<std::size_t>(ends_[static_cast<std::size_t>(e)].first)]--;
    pending_degree_[static_cast<std::size_t>(ends_[static_cast<std::size_t>(e)].second)]--;
  }
  void mark_removed(int e) {
    pending_degree_[static_cast<std::size_t>(ends_[static_cast<std::size_t>(e)].first)]++;
    pending_degree_[static_cast<std::size_t>(ends_[static_cast<std::size_t>(e)].second)]++;
  }

  struct Trace {
    std::vector<int> face_of_dart;
    std::vector<std::vector<int>> walks;  // arrival darts per face
    std::vector<int> virtual_node;
    int nodes = 0;
    std::vector<int> region_of_node;
  };

  int corner_face(const Trace& t, const Corner& c) const {
    if (c.after < 0) {
      int node = t.virtual_node[static_cast<std::size_t>(c.v)];
      if (node < 0) throw InternalError("corner anchor on non-isolated vertex");
      return node;
    }
    int f = t.face_of_dart[static_cast<std::size_t>(c.after)];
    if (f < 0) throw InternalError("corner anchor on uninserted dart");
    return f;
  }

  Trace trace() const {
    Trace t;
    t.face_of_dart.assign(static_cast<std::size_t>(2 * m_), -1);
    std::vector<int> pos(static_cast<std::size_t>(2 * m_), -1);
    for (int v = 0; v < n_; ++v) {
      const auto& r = rot_[static_cast<std::size_t>(v)];
      for (std::size_t i = 0; i < r.size(); ++i) {
        pos[static_cast<std::size_t>(r[i])] = static_cast<int>(i);
      }
    }
    for (int e = 0; e < m_; ++e) {
      if (!inserted_[static_cast<std::size_t>(e)]) continue;
      for (int dart : {2 * e, 2 * e + 1}) {
        if (t.face_of_dart[static_cast<std::size_t>(dart)] != -1) continue;
        int id = static_cast<int>(t.walks.size());
        t.walks.emplace_back();
        int cur = dart;
        do {
          t.face_of_dart[static_cast<std::size_t>(cur)] = id;
          t.walks.back().push_back(cur);
          int v = head(cur);
          const auto& r = rot_[static_cast<std::size_t>(v)];
          int nxt = r[(static_cast<std::size_t>(pos[static_cast<std::size_t>(cur)]) + 1) %
                      r.size()];
          cur = mate(nxt);
        } while (cur != dart);
      }
    }
    t.virtual_node.assign(static_cast<std::size_t>(n_), -1);
    t.nodes = static_cast<int>(t.walks.size());
    for (int v = 0; v < n_; ++v) {
      if (placed_[static_cast<std::size_t>(v)] && rot_[static_cast<std::size_t>(v)].empty()) {
        t.virtual_node[static_cast<std::size_t>(v)] = t.nodes++;
      }
    }
    std::vector<int> parent(static_cast<std::size_t>(t.nodes));
    for (int i = 0; i < t.nodes; ++i) parent[static_cast<std::size_t>(i)] = i;
    std::function<int(int)> find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x) {
        x = parent[static_cast<std::size_t>(x)] =
            parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      }
      return x;
    };
    for (const Merge& mg : merges_) {
      parent[static_cast<std::size_t>(find(corner_face(t, mg.a)))] = find(corner_face(t, mg.b));
    }
    t.region_of_node.assign(static_cast<std::size_t>(t.nodes), -1);
    for (int i = 0; i < t.nodes; ++i) t.region_of_node[static_cast<std::size_t>(i)] = find(i);
    return t;
  }

  std::vector<Corner> corners_of(int v) const {
    std::vector<Corner> out;
    const auto& r = rot_[static_cast<std::size_t>(v)];
    if (r.empty()) {
      out.push_back(Corner{v, -1});
    } else {
      out.reserve(r.size());
      for (int d : r) out.push_back(Corner{v, d});
    }
    return out;
  }

  struct Undo {
    int edge = -1;
    int u = -1, v = -1;
    bool was_placed_u = false, was_placed_v = false;
    std::vector<std::pair<std::size_t, Merge>> reanchored;
  };

  void reanchor_isolated(int v, int new_dart, Undo& undo) {
    for (std::size_t mi = 0; mi < merges_.size(); ++mi) {
      for (Corner* c : {&merges_[mi].a, &merges_[mi].b}) {
        if (c->v == v && c->after == -1) {
          undo.reanchored.push_back({mi, merges_[mi]});
          c->after = new_dart;
        }
      }
    }
  }

  Undo apply_edge(int e, const Corner& cu, const Corner& cv) {
    Undo undo;
    undo.edge = e;
    undo.u = ends_[static_cast<std::size_t>(e)].first;
    undo.v = ends_[static_cast<std::size_t>(e)].second;
    undo.was_placed_u = placed_[static_cast<std::size_t>(undo.u)];
    undo.was_placed_v = placed_[static_cast<std::size_t>(undo.v)];
    auto insert_at = [&](int vtx, const Corner& c, int dart) {
      auto& r = rot_[static_cast<std::size_t>(vtx)];
      if (c.after < 0) {
        if (!r.empty()) throw InternalError("isolated corner on busy vertex");
        reanchor_isolated(vtx, dart, undo);
        r.push_back(dart);
      } else {
        auto it = std::find(r.begin(), r.end(), c.after);
        if (it == r.end()) throw InternalError("corner dart missing from rotation");
        r.insert(it + 1, dart);
      }
    };
    insert_at(undo.u, cu, 2 * e);
    insert_at(undo.v, cv, 2 * e + 1);
    placed_[static_cast<std::size_t>(undo.u)] = true;
    placed_[static_cast<std::size_t>(undo.v)] = true;
    inserted_[static_cast<std::size_t>(e)] = true;
    mark_inserted(e);
    return undo;
  }

  void revert(const Undo& undo) {
    auto strip = [&](int vtx, int dart) {
      auto& r = rot_[static_cast<std::size_t>(vtx)];
      r.erase(std::find(r.begin(), r.end(), dart));
    };
    strip(undo.u, 2 * undo.edge);
    strip(undo.v, 2 * undo.edge + 1);
    placed_[static_cast<std::size_t>(undo.u)] = undo.was_placed_u;
    placed_[static_cast<std::size_t>(undo.v)] = undo.was_placed_v;
    inserted_[static_cast<std::size_t>(undo.edge)] = false;
    mark_removed(undo.edge);
    for (auto it = undo.reanchored.rbegin(); it != undo.reanchored.rend(); ++it) {
      merges_[it->first] = it->second;
    }
  }

  int pick_edge() const {
    int one = -1;
    for (int e = 0; e < m_; ++e) {
      if (inserted_[static_cast<std::size_t>(e)]) continue;
      bool pu = placed_[static_cast<std::size_t>(ends_[static_cast<std::size_t>(e)].first)];
      bool pv = placed_[static_cast<std::size_t>(ends_[static_cast<std::size_t>(e)].second)];
      if (pu && pv) return e;
      if ((pu || pv) && one < 0) one = e;
    }
    return one;
  }

  int pick_root() const {
    for (int v = 0; v < n_; ++v) {
      if (!placed_[static_cast<std::size_t>(v)] && pending_degree_[static_cast<std::size_t>(v)]) {
        return v;
      }
    }
    return -1;
  }

  bool all_edges_inserted() const {
    return std::all_of(inserted_.begin(), inserted_.end(), [](bool b) { return b; });
  }

  std::string state_key() const {
    std::string key;
    for (int v = 0; v < n_; ++v) {
      if (!placed_[static_cast<std::size_t>(v)]) continue;
      key += std::to_string(v);
      key += ':';
      for (int d : rot_[static_cast<std::size_t>(v)]) {
        key += std::to_string(d);
        key += ',';
      }
      key += ';';
    }
    std::vector<std::string> ms;
    ms.reserve(merges_.size());
    for (const Merge& mg : merges_) {
      std::string sa = std::to_string(mg.a.v) + "." + std::to_string(mg.a.after);
      std::string sb = std::to_string(mg.b.v) + "." + std::to_string(mg.b.after);
      ms.push_back(sa < sb ? sa + "~" + sb : sb + "~" + sa);
    }
    std::sort(ms.begin(), ms.end());
    for (const std::string& s : ms) {
      key += s;
      key += '|';
    }
    return key;
  }

  // Drop merges whose anchors already resolve to one face: the region
  // identity they asserted is structural now, and keeping them would wrongly
  // re-join the two sides of a later split.
  std::vector<std::pair<std::size_t, Merge>> normalize(const Trace& t) {
    std::vector<std::pair<std::size_t, Merge>> dropped;
    for (std::size_t mi = merges_.size(); mi-- > 0;) {
      if (corner_face(t, merges_[mi].a) == corner_face(t, merges_[mi].b)) {
        dropped.push_back({mi, merges_[mi]});
        merges_.erase(merges_.begin() + static_cast<long>(mi));
      }
    }
    std::reverse(dropped.begin(), dropped.end());
    return dropped;
  }

  void restore(const std::vector<std::pair<std::size_t, Merge>>& dropped) {
    for (const auto& [mi, mg] : dropped) {
      merges_.insert(merges_.begin() + static_cast<long>(mi), mg);
    }
  }

  bool vertex_pending(int v) const { return pending_degree_[static_cast<std::size_t>(v)] > 0; }

  bool face_has_pending(const Trace& t, int node) const {
    if (node >= static_cast<int>(t.walks.size())) {
      for (int v = 0; v < n_; ++v) {
        if (t.virtual_node[static_cast<std::size_t>(v)] == node) return vertex_pending(v);
      }
      return false;
    }
    for (int dart : t.walks[static_cast<std::size_t>(node)]) {
      if (vertex_pending(head(dart))) return true;
    }
    return false;
  }

  bool island_has_pending(const Trace& t, int entry_node, std::size_t via_merge) const {
    std::set<int> seen{entry_node};
    std::vector<int> queue{entry_node};
    while (!queue.empty()) {
      int f = queue.back();
      queue.pop_back();
      if (face_has_pending(t, f)) return true;
      for (std::size_t mi = 0; mi < merges_.size(); ++mi) {
        if (mi == via_merge) continue;
        int fa = corner_face(t, merges_[mi].a);
        int fb = corner_face(t, merges_[mi].b);
        if (fa == f && seen.insert(fb).second) queue.push_back(fb);
        if (fb == f && seen.insert(fa).second) queue.push_back(fa);
      }
    }
    return false;
  }

  bool search() {
    opts_.budget.charge(nodes_, "extend_planar");
    Trace t = trace();
    auto dropped = normalize(t);
    bool ok;
    if (all_edges_inserted()) {
      if (collect_) {
        if (collected_.size() < collect_cap_) collected_.push_back(assemble());
        ok = collected_.size() >= collect_cap_;  // stop only at the cap
      } else {
        ok = true;
      }
    } else if (opts_.memoize) {
      std::string key = state_key();
      if (dead_.count(key)) {
        ok = false;
      } else {
        ok = search_inner(t);
        if (!ok && dead_.size() < 2'000'000) dead_.insert(std::move(key));
      }
    } else {
      ok = search_inner(t);
    }
    if (!ok) restore(dropped);
    return ok;
  }

  bool search_inner(const Trace& t) {
    int e = pick_edge();
    if (e < 0) {
      int root = pick_root();
      if (root < 0) return all_edges_inserted();
      return place_root(t, root);
    }
    int a = ends_[static_cast<std::size_t>(e)].first;
    int b = ends_[static_cast<std::size_t>(e)].second;
    bool pa = placed_[static_cast<std::size_t>(a)];
    bool pb = placed_[static_cast<std::size_t>(b)];
    if (pa && pb) {
      for (const Corner& cu : corners_of(a)) {
        int fu = corner_face(t, cu);
        for (const Corner& cv : corners_of(b)) {
          int fv = corner_face(t, cv);
          if (t.region_of_node[static_cast<std::size_t>(fu)] !=
              t.region_of_node[static_cast<std::size_t>(fv)]) {
            continue;
          }
          if (fu == fv && cu.after >= 0 && cv.after >= 0) {
            if (split_insert(t, e, cu, cv)) return true;
          } else {
            Undo un = apply_edge(e, cu, cv);
            if (search()) return true;
            revert(un);
          }
        }
      }
      return false;
    }
    int placed_end = pa ? a : b;
    int fresh_end = pa ? b : a;
    for (const Corner& cu : corners_of(placed_end)) {
      Corner cv{fresh_end, -1};
      Undo un = pa ? apply_edge(e, cu, cv) : apply_edge(e, cv, cu);
      if (search()) return true;
      revert(un);
    }
    return false;
  }

  // Both corners on one face: the insertion splits it in two, and every
  // island merge-anchored on that face may ride either side. Islands with no
  // pending edges keep their mechanical side; the choice cannot affect
  // feasibility or the restriction to the predrawn part.
  bool split_insert(const Trace& t_before, int e, const Corner& cu, const Corner& cv) {
    int f = corner_face(t_before, cu);
    struct Island {
      std::size_t merge;
      bool anchor_is_a;
    };
    std::vector<Island> movable;
    for (std::size_t mi = 0; mi < merges_.size(); ++mi) {
      int fa = corner_face(t_before, merges_[mi].a);
      int fb = corner_face(t_before, merges_[mi].b);
      if (fa == f && fb != f) {
        if (island_has_pending(t_before, fb, mi)) movable.push_back({mi, true});
      } else if (fb == f && fa != f) {
        if (island_has_pending(t_before, fa, mi)) movable.push_back({mi, false});
      }
    }
    Undo un = apply_edge(e, cu, cv);
    Trace t_after = trace();
    int u = ends_[static_cast<std::size_t>(e)].first;
    Corner gap_other{u, 2 * e};
    int side_kept = corner_face(t_after, cu);
    int side_other = corner_face(t_after, gap_other);

    long combos = 1L << movable.size();
    for (long mask = 0; mask < combos; ++mask) {
      std::vector<std::pair<std::size_t, Merge>> changed;
      bool feasible = true;
      for (std::size_t bit = 0; bit < movable.size(); ++bit) {
        if (!(mask & (1L << static_cast<long>(bit)))) continue;
        const Island& is = movable[bit];
        Merge& mg = merges_[is.merge];
        Corner& anchor = is.anchor_is_a ? mg.a : mg.b;
        int mech = corner_face(t_after, anchor);
        Corner target;
        if (mech == side_kept) {
          target = gap_other;
        } else if (mech == side_other) {
          target = cu;
        } else {
          feasible = false;
          break;
        }
        changed.push_back({is.merge, mg});
        anchor = target;
      }
      if (feasible && search()) return true;
      for (auto it = changed.rbegin(); it != changed.rend(); ++it) {
        merges_[it->first] = it->second;
      }
    }
    revert(un);
    return false;
  }

  bool place_root(const Trace& t, int root) {
    std::vector<int> regions;
    for (int node = 0; node < t.nodes; ++node) {
      int r = t.region_of_node[static_cast<std::size_t>(node)];
      if (std::find(regions.begin(), regions.end(), r) == regions.end()) regions.push_back(r);
    }
    if (regions.empty()) {
      placed_[static_cast<std::size_t>(root)] = true;
      if (search()) return true;
      placed_[static_cast<std::size_t>(root)] = false;
      return false;
    }
    for (int r : regions) {
      Corner anchor;
      bool found = false;
      for (int v = 0; v < n_ && !found; ++v) {
        if (!placed_[static_cast<std::size_t>(v)]) continue;
        for (const Corner& c : corners_of(v)) {
          if (t.region_of_node[static_cast<std::size_t>(corner_face(t, c))] == r) {
            anchor = c;
            found = true;
            break;
          }
        }
      }
      if (!found) continue;
      placed_[static_cast<std::size_t>(root)] = true;
      merges_.push_back(Merge{Corner{root, -1}, anchor});
      if (search()) return true;
      merges_.pop_back();
      placed_[static_cast<std::size_t>(root)] = false;
    }
    return false;
  }

  PlaneDrawing assemble() {
    std::vector<int> stray;
    for (int v = 0; v < n_; ++v) {
      if (!placed_[static_cast<std::size_t>(v)]) stray.push_back(v);
    }
    PlaneDrawing temp;
    for (int v = 0; v < n_; ++v) {
      std::vector<EdgeEnd> rot;
      for (int d : rot_[static_cast<std::size_t>(v)]) {
        rot.push_back(EdgeEnd{eid_[static_cast<std::size_t>(d / 2)], d % 2});
      }
      temp.rotations[vid_[static_cast<std::size_t>(v)]] = std::move(rot);
    }
    for (int e = 0; e < m_; ++e) {
      if (inserted_[static_cast<std::size_t>(e)]) {
        temp.outer_face = FaceRef{eid_[static_cast<std::size_t>(e)], true, FaceSide::Left};
        break;
      }
    }
    ResolvedDrawing rf = ResolvedDrawing::resolve(instance_.graph, temp);
    if (rf.num_nodes() == 0) return temp;
    std::vector<int> parent(static_cast<std::size_t>(rf.num_nodes()));
    for (int i = 0; i < rf.num_nodes(); ++i) parent[static_cast<std::size_t>(i)] = i;
    std::function<int(int)> find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x) {
        x = parent[static_cast<std::size_t>(x)] =
            parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      }
      return x;
    };
    auto node_of_corner = [&](const Corner& c) {
      if (c.after < 0) return rf.node_of_isolated(vid_[static_cast<std::size_t>(c.v)]);
      DirEdge de{eid_[static_cast<std::size_t>(c.after / 2)], c.after % 2 == 1};
      return rf.face_of(de);
    };
    for (const Merge& mg : merges_) {
      parent[static_cast<std::size_t>(find(node_of_corner(mg.a)))] = find(node_of_corner(mg.b));
    }
    int outer_node = 0;
    if (outer_dart_ >= 0) {
      DirEdge de{eid_[static_cast<std::size_t>(outer_dart_ / 2)], outer_dart_ % 2 == 1};
      outer_node = rf.face_of(de);
    }
    for (int v : stray) {
      int node = rf.node_of_isolated(vid_[static_cast<std::size_t>(v)]);
      parent[static_cast<std::size_t>(find(node))] = find(outer_node);
    }
    std::vector<int> class_of(static_cast<std::size_t>(rf.num_nodes()));
    for (int i = 0; i < rf.num_nodes(); ++i) class_of[static_cast<std::size_t>(i)] = find(i);
    return assemble_drawing(rf, class_of, find(outer_node));
  }

  const PredrawnGraph& instance_;
  ExtensionOptions opts_;
  std::vector<VertexId> vid_;
  std::map<VertexId, int> vindex_;
  std::vector<EdgeId> eid_;
  std::map<EdgeId, int> eindex_;
  std::vector<std::pair<int, int>> ends_;
  int n_ = 0, m_ = 0;

  std::vector<std::vector<int>> rot_;
  std::vector<bool> placed_;
  std::vector<bool> inserted_;
  std::vector<int> pending_degree_;
  std::vector<Merge> merges_;
  int outer_dart_ = -1;
  std::int64_t nodes_ = 0;
  std::unordered_set<std::string> dead_;
  bool collect_ = false;
  std::size_t collect_cap_ = 0;
  std::vector<PlaneDrawing> collected_;
};

}  // namespace

std::optional<PlaneDrawing> extend_planar(const PredrawnGraph& p, const ExtensionOptions& opts) {
  ValidationReport rep = validate_predrawn(p);
  if (!rep.ok) {
    std::string what = "extend_planar: invalid instance:";
    for (const Violation& v : rep.violations) what += " [" + v.rule + " " + v.element + "]";
    throw PreconditionError(what);
  }
  InsertionSearch s(p, opts);
  return s.run();
}

std::vector<PlaneDrawing> all_planar_extensions(const PredrawnGraph& p, std::size_t cap,
                                                const ExtensionOptions& opts) {
  ValidationReport rep = validate_predrawn(p);
  if (!rep.ok) throw PreconditionError("all_planar_extensions: invalid instance");
  ExtensionOptions o = opts;
  o.memoize = false;  // failed-subtree memo would hide repeated solutions
  InsertionSearch s(p, o);
  return s.run_all(cap);
}

}  // namespace pdcross
