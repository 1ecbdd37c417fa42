#pragma once

#include "pdcross/reduction.hpp"

namespace pdcross {

struct SolveOptions {
  long long max_q = 0;                // budget on new weighted crossings
  std::optional<int> per_edge_cap;    // c: crossings per non-predrawn edge
  bool simple = false;                // forbid double and adjacent crossings
  bool use_reduction = false;         // pipeline_solve only
  SearchBudget budget;
};

enum class SolveStatus { Optimal, InfeasibleWithinBudget, BudgetExceeded };

struct SolveResult {
  SolveStatus status = SolveStatus::InfeasibleWithinBudget;
  std::optional<long long> q_star;
  std::optional<DrawingWitness> witness;
  std::vector<std::string> trace;  // reduction steps, replayable
  long long proven_lower_bound = 0;
};

/// Exact partially-predrawn crossing number by iterative deepening on q:
/// subdivide crossable edges, choose disjoint auxiliary pairs of total
/// weighted cost q (never joining two predrawn edges), identify, and ask the
/// extension oracle. The first feasible q is optimal.
SolveResult solve_pdcr(const PredrawnGraph& p, const SolveOptions& opts);

/// Turn a planar extension of an identified instance back into a witness:
/// identified vertices whose rotation alternates the two edges become
/// crossings, touching identifications are smoothed away, and leftover
/// degree-2 auxiliaries are suppressed.
DrawingWitness reconstruct_witness(const Multigraph& identified, const PlaneDrawing& extension,
                                   const std::vector<CrossingRecord>& chosen);

/// No pair of original edges crosses twice and no adjacent original edges
/// cross, with predrawn piece identity traced through the instance registry.
bool check_simplicity(const DrawingWitness& w, const PredrawnGraph& p);

/// Full pipeline: reduce while a region is found, solve, lift witnesses back.
SolveResult pipeline_solve(const PredrawnGraph& p, const SolveOptions& opts);

/// Subdividing every crossable edge once never changes the optimum.
bool subdivision_invariance_check(const PredrawnGraph& p, const SolveOptions& opts);

/// Greedy count of edge-disjoint Kuratowski subdivisions; an admissible lower
/// bound on the crossing number.
long long kuratowski_lower_bound(const PredrawnGraph& p, const ExtensionOptions& opts = {});

}  // namespace pdcross
