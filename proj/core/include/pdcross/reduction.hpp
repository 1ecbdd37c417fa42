#pragma once

#include "pdcross/extension.hpp"

namespace pdcross {

/// Outcome of the two orientation probes: a cycle is flippable when both
/// mirror-image gadget templates extend, unflippable when the drawing of the
/// region's side of the cycle is pinned to one of them.
struct Flippability {
  bool flippable = false;
  bool type1 = false;
  bool type2 = false;
  /// Crossing-free drawings of the probed instance, restricted back to it,
  /// one per realizable type; used to orient replacements when lifting.
  std::optional<PlaneDrawing> type1_drawing;
  std::optional<PlaneDrawing> type2_drawing;

  std::optional<int> orientation() const {
    if (type1 == type2) return std::nullopt;
    return type1 ? 1 : 2;
  }
};

/// Decide whether the cycle is flippable with respect to the region inside
/// it. `d` is the host instance (typically the induced region-cycle graph
/// together with the predrawn part); `cycle` its edge list in d.graph;
/// `region` the vertex set I.
Flippability is_flippable(const PredrawnGraph& d, const std::vector<EdgeId>& cycle,
                          const std::set<VertexId>& region, const ExtensionOptions& opts = {});

enum class ReductionCase { InfeasibleA, ContractC, ContractD, TriangleE };

struct ReductionStep {
  ReductionCase kind = ReductionCase::InfeasibleA;
  std::set<VertexId> region;
  std::vector<EdgeId> cycle;
  PredrawnGraph original;
  PredrawnGraph reduced;
  std::map<VertexId, VertexId> contraction;  // region vertex -> replacement vertex
  VertexId contracted_vertex;                // v_I (cases c and d)
  std::vector<VertexId> triangle;            // T_I corners (case e)
  std::vector<VertexId> triple;              // u1,u2,u3 (case e)
};

struct ReductionOutcome {
  bool feasible = true;  // false: no conforming drawing exists at all
  std::optional<ReductionStep> step;
};

/// Contract the region to one vertex in the graph and in the predrawn
/// drawing, and mark the cycle and the new vertex's edges uncrossable.
std::pair<PredrawnGraph, std::map<VertexId, VertexId>> contract_region(
    const PredrawnGraph& p, const std::set<VertexId>& region, const std::vector<EdgeId>& cycle);

/// The case analysis: infeasible when the region-cycle subinstance has no
/// crossing-free extension; otherwise contract, classify by the flippability
/// probes before and after, and in the mixed case replace the contraction
/// vertex by an oriented predrawn triangle that pins the cycle again.
ReductionOutcome apply_reduction(const PredrawnGraph& p, const std::set<VertexId>& region,
                                 const std::vector<EdgeId>& cycle,
                                 const ExtensionOptions& opts = {});

/// Rebuild a witness of the original instance from one of the reduced
/// instance: everything outside the replaced region is frozen as drawn and
/// the region is re-inserted by the exact oracle; costs are equal.
DrawingWitness lift_drawing(const ReductionStep& step, const DrawingWitness& reduced_witness,
                            const ExtensionOptions& opts = {});

/// Heuristic region finder: a connected subgraph of at least six vertices
/// whose whole neighbourhood lies on a cycle disjoint from it.
std::optional<std::pair<std::set<VertexId>, std::vector<EdgeId>>> find_candidate_region(
    const PredrawnGraph& p, const ExtensionOptions& opts = {});

/// One line per step: reduce case=<a|c|d|e> I=<ids> C=<ids> ...
std::string serialize_reduction_step(const ReductionStep& step);

}  // namespace pdcross
