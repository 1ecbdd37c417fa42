#include "pdcross/solver.hpp"

#include <algorithm>
#include <functional>

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

/// One hypothetical crossing: edge pair plus the slot of the crossing along
/// each edge (slots order multiple crossings on one edge).
struct Chosen {
  EdgeId a, b;
  int slot_a = 0, slot_b = 0;
  long long cost = 1;
};

/// Identified instance for a set of chosen crossings: each edge splits at its
/// crossing vertices in slot order; predrawn edges splice their pieces into
/// the drawing and crossing vertices on them stay predrawn.
PredrawnGraph identified_instance(const PredrawnGraph& p, const std::vector<Chosen>& chosen,
                                  std::vector<CrossingRecord>* records) {
  std::map<EdgeId, std::vector<std::pair<int, VertexId>>> splits;
  for (std::size_t k = 0; k < chosen.size(); ++k) {
    VertexId x = "x$" + std::to_string(k);
    splits[chosen[k].a].push_back({chosen[k].slot_a, x});
    splits[chosen[k].b].push_back({chosen[k].slot_b, x});
    if (records) {
      records->push_back(CrossingRecord{x, chosen[k].a, chosen[k].b, chosen[k].cost});
    }
  }
  for (auto& [e, ss] : splits) std::sort(ss.begin(), ss.end());

  PredrawnGraph out;
  for (const VertexId& v : p.graph.vertices()) out.graph.add_vertex(v);
  for (const auto& [e, ss] : splits) {
    for (const auto& [slot, x] : ss) {
      if (!out.graph.has_vertex(x)) out.graph.add_vertex(x);
    }
  }
  for (const Edge& e : p.graph.edges()) {
    auto it = splits.find(e.id);
    if (it == splits.end()) {
      out.graph.add_edge(e);
      continue;
    }
    VertexId prev = e.u;
    const auto& ss = it->second;
    for (std::size_t i = 0; i <= ss.size(); ++i) {
      Edge piece = e;
      piece.id = piece_id(e.id, static_cast<int>(i));
      piece.u = prev;
      piece.v = i < ss.size() ? ss[i].second : e.v;
      out.graph.add_edge(piece);
      prev = piece.v;
    }
  }
  out.predrawn = p.predrawn;
  out.registry = p.registry;
  for (auto& [v, rot] : out.predrawn.rotations) {
    for (EdgeEnd& ee : rot) {
      auto it = splits.find(ee.edge);
      if (it == splits.end()) continue;
      int last = static_cast<int>(it->second.size());
      ee = ee.end == 0 ? EdgeEnd{piece_id(ee.edge, 0), 0} : EdgeEnd{piece_id(ee.edge, last), 1};
    }
  }
  for (const auto& [e, ss] : splits) {
    if (!p.graph.edge(e).predrawn) continue;
    for (std::size_t i = 0; i < ss.size(); ++i) {
      out.predrawn.rotations[ss[i].second] = {
          EdgeEnd{piece_id(e, static_cast<int>(i)), 1},
          EdgeEnd{piece_id(e, static_cast<int>(i) + 1), 0}};
    }
  }
  auto rename_ref = [&](FaceRef& ref) {
    if (splits.count(ref.edge)) ref.edge = piece_id(ref.edge, 0);
  };
  if (out.predrawn.outer_face) rename_ref(*out.predrawn.outer_face);
  for (auto& rec : out.predrawn.containment) rename_ref(rec.host_face);
  return out;
}

}  // namespace

DrawingWitness reconstruct_witness(const Multigraph& identified, const PlaneDrawing& extension,
                                   const std::vector<CrossingRecord>& chosen) {
  ResolvedDrawing res = ResolvedDrawing::resolve(identified, extension);

  std::set<VertexId> touching;
  std::vector<CrossingRecord> real;
  for (const CrossingRecord& rec : chosen) {
    const auto& rot = res.rotations().at(rec.vertex);
    if (rot.size() != 4) throw PreconditionError("reconstruct: identified vertex degree != 4");
    auto orig = [&](const EdgeEnd& ee) { return original_of(ee.edge); };
    bool alternating = orig(rot[0]) != orig(rot[1]) && orig(rot[1]) != orig(rot[2]);
    if (alternating) {
      real.push_back(rec);
    } else {
      touching.insert(rec.vertex);
    }
  }

  std::map<EdgeId, std::vector<EdgeId>> chain;
  for (const Edge& e : identified.edges()) {
    auto pp = parse_piece(e.id);
    chain[pp ? pp->first : e.id].push_back(e.id);
  }
  for (auto& [o, pieces] : chain) {
    std::sort(pieces.begin(), pieces.end(), [](const EdgeId& a, const EdgeId& b) {
      auto pa = parse_piece(a), pb = parse_piece(b);
      return (pa ? pa->second : 0) < (pb ? pb->second : 0);
    });
  }
  std::set<VertexId> real_x, all_x;
  for (const CrossingRecord& rec : real) real_x.insert(rec.vertex);
  for (const CrossingRecord& rec : chosen) all_x.insert(rec.vertex);

  Multigraph fin;
  std::map<EdgeId, EdgeId> relabel;
  std::map<EdgeId, EdgeId> first_old;
  for (const VertexId& v : identified.vertices()) {
    if (!all_x.count(v) || real_x.count(v)) fin.add_vertex(v);
  }
  for (const auto& [o, pieces] : chain) {
    std::vector<std::vector<EdgeId>> groups(1);
    for (const EdgeId& pc : pieces) {
      groups.back().push_back(pc);
      const Edge& pe = identified.edge(pc);
      if (real_x.count(pe.v)) groups.emplace_back();
    }
    bool split = groups.size() > 1;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      const auto& members = groups[gi];
      if (members.empty()) continue;
      Edge ne = identified.edge(members.front());
      ne.id = split ? piece_id(o, static_cast<int>(gi)) : o;
      ne.u = identified.edge(members.front()).u;
      ne.v = identified.edge(members.back()).v;
      fin.add_edge(ne);
      first_old[ne.id] = members.front();
      for (const EdgeId& m : members) relabel[m] = ne.id;
    }
  }

  PlaneDrawing fd;
  for (const VertexId& v : fin.vertices()) {
    std::vector<EdgeEnd> rot;
    for (const EdgeEnd& ee : res.rotations().at(v)) {
      EdgeId ne = relabel.at(ee.edge);
      const Edge& ed = fin.edge(ne);
      EdgeEnd cand{ne, ed.u == v ? 0 : 1};
      if (std::find(rot.begin(), rot.end(), cand) == rot.end()) rot.push_back(cand);
    }
    fd.rotations[v] = std::move(rot);
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
  for (const VertexId& x : touching) {
    const auto& rot = res.rotations().at(x);
    // the corners after rot[1] and rot[3] pinch together when the touching
    // curves separate
    auto corner_face = [&](const EdgeEnd& ee) {
      return res.face_of(DirEdge{ee.edge, ee.end == 1});
    };
    uf.merge(corner_face(rot[1]), corner_face(rot[3]));
  }

  if (fin.edges().empty()) {
    return DrawingWitness{fin, fd, real};
  }
  PlaneDrawing temp = fd;
  temp.outer_face = FaceRef{fin.edges().front().id, true, FaceSide::Left};
  temp.containment.clear();
  ResolvedDrawing rf = ResolvedDrawing::resolve(fin, temp);
  std::vector<int> class_of(static_cast<std::size_t>(rf.num_nodes()), -1);
  for (int f = 0; f < rf.num_faces(); ++f) {
    DirEdge d = rf.face_walk(f).front();
    DirEdge old{first_old.at(d.edge), d.forward};
    class_of[static_cast<std::size_t>(f)] = uf.find(res.face_of(old));
  }
  for (const VertexId& v : rf.isolated_vertices()) {
    const auto& old_rot = res.rotations().at(v);
    int node = old_rot.empty()
                   ? res.node_of_isolated(v)
                   : res.face_of(DirEdge{old_rot.front().edge, old_rot.front().end == 1});
    class_of[static_cast<std::size_t>(rf.node_of_isolated(v))] = uf.find(node);
  }
  int outer_class = 0;
  for (int n = 0; n < res.num_nodes(); ++n) {
    if (res.region_of(n) == res.outer_region()) {
      outer_class = uf.find(n);
      break;
    }
  }
  PlaneDrawing assembled = assemble_drawing(rf, class_of, outer_class);
  return DrawingWitness{fin, assembled, real};
}

long long kuratowski_lower_bound(const PredrawnGraph& p, const ExtensionOptions& opts) {
  ObstructionCatalog kuratowski;
  {
    Multigraph k5, k33;
    for (int i = 1; i <= 5; ++i) k5.add_vertex("k" + std::to_string(i));
    for (int i = 1; i <= 5; ++i) {
      for (int j = i + 1; j <= 5; ++j) {
        k5.add_edge(Edge{"k" + std::to_string(i) + "_" + std::to_string(j),
                         "k" + std::to_string(i), "k" + std::to_string(j)});
      }
    }
    for (int i = 1; i <= 3; ++i) {
      k33.add_vertex("a" + std::to_string(i));
      k33.add_vertex("b" + std::to_string(i));
    }
    for (int i = 1; i <= 3; ++i) {
      for (int j = 1; j <= 3; ++j) {
        k33.add_edge(Edge{"m" + std::to_string(i) + "_" + std::to_string(j),
                          "a" + std::to_string(i), "b" + std::to_string(j)});
      }
    }
    kuratowski.entries.push_back({"k5", "builtin", PredrawnGraph{k5, {}, {}}});
    kuratowski.entries.push_back({"k33", "builtin", PredrawnGraph{k33, {}, {}}});
  }
  Multigraph work = p.graph;
  long long count = 0;
  while (true) {
    PredrawnGraph bare{work, {}, {}};
    std::optional<std::pair<int, EmbeddingWitness>> hit;
    try {
      ExtensionOptions capped = opts;
      capped.budget.max_nodes = std::min<std::int64_t>(capped.budget.max_nodes, 500'000);
      hit = contains_obstruction(bare, kuratowski, capped);
    } catch (const BudgetExceededError&) {
      break;  // the bound stays admissible
    }
    if (!hit) break;
    ++count;
    std::set<EdgeId> used;
    for (const auto& [pe, path] : hit->second.edge_paths) {
      for (const EdgeId& he : path) used.insert(he);
    }
    for (const EdgeId& e : used) work.remove_edge(e);
  }
  return count;
}

namespace {

struct PairEnumerator {
  const PredrawnGraph& p;
  const SolveOptions& opts;
  std::vector<EdgeId> edges;
  std::map<EdgeId, EdgeId> ultimate;
  std::map<EdgeId, std::pair<VertexId, VertexId>> ultimate_ends;

  PairEnumerator(const PredrawnGraph& p_, const SolveOptions& o) : p(p_), opts(o) {
    for (const Edge& e : p.graph.edges()) {
      if (!e.uncrossable) edges.push_back(e.id);
    }
    std::map<EdgeId, std::map<int, EdgeId>> chains;
    for (const Edge& e : p.graph.edges()) {
      auto pp = parse_piece(e.id);
      if (pp && !p.registry.empty()) {
        chains[pp->first][pp->second] = e.id;
      } else {
        chains[e.id][0] = e.id;
      }
    }
    for (const auto& [o_, chain] : chains) {
      const Edge& first = p.graph.edge(chain.begin()->second);
      const Edge& last = p.graph.edge(chain.rbegin()->second);
      for (const auto& [seg, id] : chain) {
        ultimate[id] = o_;
        ultimate_ends[id] = {first.u, last.v};
      }
    }
  }

  bool both_predrawn(const EdgeId& a, const EdgeId& b) const {
    return p.graph.edge(a).predrawn && p.graph.edge(b).predrawn;
  }
  bool adjacent(const EdgeId& a, const EdgeId& b) const {
    const Edge& ea = p.graph.edge(a);
    const Edge& eb = p.graph.edge(b);
    return ea.u == eb.u || ea.u == eb.v || ea.v == eb.u || ea.v == eb.v;
  }
  bool adjacent_ultimate(const EdgeId& a, const EdgeId& b) const {
    auto [au, av] = ultimate_ends.at(a);
    auto [bu, bv] = ultimate_ends.at(b);
    return au == bu || au == bv || av == bu || av == bv;
  }

  bool enumerate(long long q, const std::function<bool(const std::vector<Chosen>&)>& sink) {
    std::vector<std::pair<EdgeId, EdgeId>> cand;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      for (std::size_t j = i + 1; j < edges.size(); ++j) {
        const EdgeId& a = edges[i];
        const EdgeId& b = edges[j];
        if (both_predrawn(a, b)) continue;
        if (adjacent(a, b)) continue;  // removable by a local redraw
        if (opts.simple && adjacent_ultimate(a, b)) continue;
        cand.push_back({a, b});
      }
    }
    std::vector<std::pair<EdgeId, EdgeId>> picked;
    std::int64_t budget_counter = 0;
    std::function<bool(std::size_t, long long)> choose = [&](std::size_t from,
                                                             long long remaining) -> bool {
      opts.budget.charge(budget_counter, "solve_pdcr/pairs");
      if (remaining == 0) return orders(picked, sink);
      for (std::size_t c = from; c < cand.size(); ++c) {
        const auto& [a, b] = cand[c];
        long long cost = static_cast<long long>(p.graph.edge(a).weight) *
                         static_cast<long long>(p.graph.edge(b).weight);
        if (cost > remaining) continue;
        if (opts.simple) {
          bool dup = false;
          for (const auto& [pa, pb] : picked) {
            if ((ultimate.at(pa) == ultimate.at(a) && ultimate.at(pb) == ultimate.at(b)) ||
                (ultimate.at(pa) == ultimate.at(b) && ultimate.at(pb) == ultimate.at(a))) {
              dup = true;
            }
          }
          if (dup) continue;
        }
        std::map<EdgeId, int> load;
        for (const auto& [pa, pb] : picked) {
          load[pa]++;
          load[pb]++;
        }
        load[a]++;
        load[b]++;
        bool over = false;
        for (const auto& [e, cnt] : load) {
          long long cap = opts.max_q;
          if (opts.per_edge_cap && !p.graph.edge(e).predrawn) {
            cap = std::min<long long>(cap, *opts.per_edge_cap);
          }
          if (cnt > cap) over = true;
        }
        if (over) continue;
        picked.push_back(cand[c]);
        if (choose(c, remaining - cost)) return true;
        picked.pop_back();
      }
      return false;
    };
    return choose(0, q);
  }

  bool orders(const std::vector<std::pair<EdgeId, EdgeId>>& picked,
              const std::function<bool(const std::vector<Chosen>&)>& sink) {
    std::map<EdgeId, std::vector<int>> on_edge;
    for (std::size_t k = 0; k < picked.size(); ++k) {
      on_edge[picked[k].first].push_back(static_cast<int>(k));
      on_edge[picked[k].second].push_back(static_cast<int>(k));
    }
    std::vector<EdgeId> multi;
    for (auto& [e, ks] : on_edge) {
      if (ks.size() > 1) multi.push_back(e);
    }
    std::set<std::string> seen;
    std::function<bool(std::size_t)> arrange = [&](std::size_t mi) -> bool {
      if (mi == multi.size()) {
        std::vector<Chosen> chosen(picked.size());
        for (std::size_t k = 0; k < picked.size(); ++k) {
          chosen[k].a = picked[k].first;
          chosen[k].b = picked[k].second;
          chosen[k].cost = static_cast<long long>(p.graph.edge(chosen[k].a).weight) *
                           static_cast<long long>(p.graph.edge(chosen[k].b).weight);
        }
        for (const auto& [e, ks] : on_edge) {
          for (std::size_t s = 0; s < ks.size(); ++s) {
            Chosen& ch = chosen[static_cast<std::size_t>(ks[s])];
            if (ch.a == e) {
              ch.slot_a = static_cast<int>(s);
            } else {
              ch.slot_b = static_cast<int>(s);
            }
          }
        }
        std::string key;
        for (const Chosen& ch : chosen) {
          key += ch.a + "." + std::to_string(ch.slot_a) + "/" + ch.b + "." +
                 std::to_string(ch.slot_b) + ";";
        }
        if (!seen.insert(key).second) return false;
        return sink(chosen);
      }
      std::vector<int>& ks = on_edge[multi[mi]];
      std::sort(ks.begin(), ks.end());
      do {
        if (arrange(mi + 1)) return true;
      } while (std::next_permutation(ks.begin(), ks.end()));
      return false;
    };
    return arrange(0);
  }
};

}  // namespace

SolveResult solve_pdcr(const PredrawnGraph& p, const SolveOptions& opts) {
  ValidationReport rep = validate_predrawn(p);
  if (!rep.ok) {
    std::string what = "solve_pdcr: invalid instance:";
    for (const Violation& v : rep.violations) what += " [" + v.rule + " " + v.element + "]";
    throw PreconditionError(what);
  }
  SolveResult result;
  ExtensionOptions ext;
  ext.budget = opts.budget;
  ext.budget.max_vertices =
      std::max<int>(ext.budget.max_vertices,
                    static_cast<int>(p.graph.num_vertices()) + 2 * static_cast<int>(opts.max_q) +
                        2);

  long long lb = 0;
  try {
    lb = kuratowski_lower_bound(p, ext);
  } catch (const BudgetExceededError&) {
    lb = 0;
  }

  try {
    for (long long q = 0; q <= opts.max_q; ++q) {
      result.proven_lower_bound = q;
      if (q < lb) continue;
      if (q == 0) {
        auto d = extend_planar(p, ext);
        if (d) {
          result.status = SolveStatus::Optimal;
          result.q_star = 0;
          result.witness = witness_for_plane_drawing(p.graph, *d);
          return result;
        }
        continue;
      }
      PairEnumerator en(p, opts);
      bool found = en.enumerate(q, [&](const std::vector<Chosen>& chosen) {
        std::vector<CrossingRecord> records;
        PredrawnGraph inst = identified_instance(p, chosen, &records);
        auto d = extend_planar(inst, ext);
        if (!d) return false;
        DrawingWitness w = reconstruct_witness(inst.graph, *d, records);
        if (opts.simple && !check_simplicity(w, p)) return false;
        result.witness = std::move(w);
        return true;
      });
      if (found) {
        result.status = SolveStatus::Optimal;
        result.q_star = result.witness->total_cost();
        return result;
      }
    }
  } catch (const BudgetExceededError&) {
    result.status = SolveStatus::BudgetExceeded;
    return result;
  }
  result.status = SolveStatus::InfeasibleWithinBudget;
  result.proven_lower_bound = opts.max_q + 1;
  return result;
}

bool check_simplicity(const DrawingWitness& w, const PredrawnGraph& p) {
  std::map<EdgeId, EdgeId> ultimate;
  std::map<EdgeId, std::pair<VertexId, VertexId>> ends;
  {
    std::map<EdgeId, std::map<int, EdgeId>> chains;
    for (const Edge& e : p.graph.edges()) {
      auto pp = parse_piece(e.id);
      if (pp) {
        chains[pp->first][pp->second] = e.id;
      } else {
        chains[e.id][0] = e.id;
      }
    }
    for (const auto& [o, chain] : chains) {
      if (chain.size() > 1) {
        for (auto it = chain.begin(); std::next(it) != chain.end(); ++it) {
          const Edge& piece = p.graph.edge(it->second);
          if (!p.registry.count(piece.v)) {
            throw PreconditionError("check_simplicity: identity untraceable at " + piece.v);
          }
        }
      }
      const Edge& first = p.graph.edge(chain.begin()->second);
      const Edge& last = p.graph.edge(chain.rbegin()->second);
      for (const auto& [seg, id] : chain) {
        ultimate[id] = o;
        ends[id] = {first.u, last.v};
      }
    }
  }
  std::set<std::pair<EdgeId, EdgeId>> pairs;
  for (const CrossingRecord& rec : w.crossings) {
    EdgeId a = ultimate.at(rec.edge_a);
    EdgeId b = ultimate.at(rec.edge_b);
    auto [au, av] = ends.at(rec.edge_a);
    auto [bu, bv] = ends.at(rec.edge_b);
    if (a == b) return false;
    if (au == bu || au == bv || av == bu || av == bv) return false;
    auto key = std::minmax(a, b);
    if (!pairs.insert({key.first, key.second}).second) return false;
  }
  return true;
}

SolveResult pipeline_solve(const PredrawnGraph& p, const SolveOptions& opts) {
  std::vector<ReductionStep> steps;
  PredrawnGraph cur = p;
  ExtensionOptions ext;
  ext.budget = opts.budget;
  if (opts.use_reduction) {
    while (true) {
      std::optional<std::pair<std::set<VertexId>, std::vector<EdgeId>>> found;
      try {
        found = find_candidate_region(cur, ext);
      } catch (const BudgetExceededError&) {
        break;
      }
      if (!found) break;
      ReductionOutcome outcome = apply_reduction(cur, found->first, found->second, ext);
      if (!outcome.feasible) {
        SolveResult r;
        r.status = SolveStatus::InfeasibleWithinBudget;
        r.trace.push_back("reduce case=a");
        return r;
      }
      if (outcome.step->reduced.graph.num_vertices() >= cur.graph.num_vertices()) {
        break;
      }
      steps.push_back(*outcome.step);
      cur = outcome.step->reduced;
    }
  }
  SolveOptions inner = opts;
  inner.use_reduction = false;
  SolveResult result = solve_pdcr(cur, inner);
  for (const ReductionStep& s : steps) result.trace.push_back(serialize_reduction_step(s));
  if (result.status == SolveStatus::Optimal && result.witness) {
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
      result.witness = lift_drawing(*it, *result.witness, ext);
    }
  }
  return result;
}

bool subdivision_invariance_check(const PredrawnGraph& p, const SolveOptions& opts) {
  SolveResult base = solve_pdcr(p, opts);
  PredrawnGraph sub = p;
  std::vector<EdgeId> ids;
  for (const Edge& e : sub.graph.edges()) {
    if (!e.uncrossable) ids.push_back(e.id);
  }
  for (const EdgeId& e : ids) subdivide_predrawn_edge(sub, e);
  SolveResult s = solve_pdcr(sub, opts);
  if (base.status != s.status) return false;
  if (base.status == SolveStatus::Optimal) return base.q_star == s.q_star;
  return true;
}

}  // namespace pdcross
