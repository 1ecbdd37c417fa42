#pragma once

#include <optional>

#include "pdcross/predrawn.hpp"

namespace pdcross {

struct ExtensionOptions {
  SearchBudget budget;
  bool memoize = true;
};

/// Exact extension-planarity oracle: a planar drawing of p.graph whose
/// restriction to the predrawn subgraph is equivalent to p.predrawn, or
/// nullopt when none exists. The predrawn drawing must be crossing-free
/// (planarise first). Exceeding the configured budget raises
/// BudgetExceededError; the oracle never returns a silent wrong answer.
std::optional<PlaneDrawing> extend_planar(const PredrawnGraph& p,
                                          const ExtensionOptions& opts = {});

/// Every completed arrangement the insertion search reaches, up to cap.
/// Distinct results may still be equivalent drawings; callers deduplicate at
/// whatever level they need.
std::vector<PlaneDrawing> all_planar_extensions(const PredrawnGraph& p, std::size_t cap,
                                                const ExtensionOptions& opts = {});

/// An alternating chain: a predrawn cycle C, predrawn vertices s and t off C,
/// and paths P_1..P_a with both ends on C, internally disjoint from C, where
/// consecutive paths are vertex-disjoint with alternating end pairs, s lies
/// on P_1, t on P_a, and s,t sit in the same face of C exactly when a is
/// even.
struct ChainWitness {
  std::vector<EdgeId> cycle;
  VertexId s, t;
  std::vector<std::vector<VertexId>> paths;
  int parity = 0;  // a mod 2
};

std::optional<ChainWitness> find_alternating_chain(const PredrawnGraph& p,
                                                   const ExtensionOptions& opts = {});

/// Checks every ChainWitness invariant against the instance.
ValidationReport validate_chain(const PredrawnGraph& p, const ChainWitness& w);

/// Which side of the predrawn cycle each predrawn vertex lies on: 0 for the
/// side left of the cycle's first dart, 1 for the other. The cycle is given
/// by its edge ids and must be a cycle of the predrawn subgraph.
int predrawn_side_of_cycle(const PredrawnGraph& p, const std::vector<EdgeId>& cycle,
                           const VertexId& v);

/// Topological embedding of one predrawn graph into another: branch vertices
/// map injectively, edges map to internally disjoint paths, predrawn edges
/// ride predrawn paths, and the predrawn subdrawing of the image is
/// equivalent to the pattern's.
struct EmbeddingWitness {
  std::map<VertexId, VertexId> vertex_map;
  std::map<EdgeId, std::vector<EdgeId>> edge_paths;
};

/// True iff some subdivision of p1 is isomorphic to a predrawn subgraph of
/// p2 (drawing equivalence of the predrawn part included).
std::optional<EmbeddingWitness> pd_subgraph_of_subdivision(const PredrawnGraph& p1,
                                                           const PredrawnGraph& p2,
                                                           const ExtensionOptions& opts = {});

/// Isomorphism of predrawn graphs: graph isomorphism whose predrawn parts
/// are equivalent drawings.
bool ppdg_isomorphic(const PredrawnGraph& p1, const PredrawnGraph& p2,
                     const ExtensionOptions& opts = {});

struct CatalogEntry {
  std::string name;
  std::string provenance;  // base id plus applied splittings/releases
  PredrawnGraph pattern;
};

struct ObstructionCatalog {
  std::vector<CatalogEntry> entries;
  bool complete = false;  // the shipped transcription of the known list is partial
};

/// Closure of the bases under vertex splitting (degree > 3, both parts of
/// size at least 2) and release of predrawn bridges, deduplicated up to
/// predrawn-graph isomorphism and pruned of entries that contain another
/// entry as a subdivision-subgraph. Every entry is verified non-extendable;
/// an extendable base is rejected.
ObstructionCatalog build_catalog(const std::vector<PredrawnGraph>& bases,
                                 const ExtensionOptions& opts = {});

std::optional<std::pair<int, EmbeddingWitness>> contains_obstruction(
    const PredrawnGraph& p, const ObstructionCatalog& cat, const ExtensionOptions& opts = {});

/// Load catalog bases from a JSON manifest ({"bases": [{file, name,
/// provenance}...]}, paths relative to the manifest) and build the closure.
ObstructionCatalog load_catalog(const std::string& manifest_path,
                                const ExtensionOptions& opts = {});

}  // namespace pdcross
