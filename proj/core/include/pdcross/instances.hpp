#pragma once

#include <iosfwd>

#include "pdcross/solver.hpp"

namespace pdcross {

/// Parameters of the stacked-gadget crossing-critical family.
struct CriticalFamilyParams {
  int c = 3;           // weight of the two crossing edges; at least 3
  int copies = 1;      // gadgets stacked by identifying consecutive 4-cycles
  bool expand_parallel = false;  // replace weight-w edges by w parallel edges
};

struct CriticalFamily {
  PredrawnGraph instance;   // stacked gadgets plus the two oriented triangles
  Multigraph gadget;        // one gadget alone
  DrawingWitness straight;  // planar reference drawing of the gadget
  DrawingWitness flipped;   // minimum drawing with the inner cycle reversed
};

CriticalFamily gen_critical(const CriticalFamilyParams& params,
                            const ExtensionOptions& opts = {});

/// A named instance with its expected verdicts; figure-derived entries are
/// reconstructions whose expectations the toolkit re-derives in CI mode.
struct CorpusEntry {
  std::string name;
  std::string note;
  PredrawnGraph instance;
  std::map<std::string, std::string> expect;
  std::optional<PlaneDrawing> second_drawing;  // drawing pairs
  std::set<VertexId> region;                   // reduction driver data
  std::vector<EdgeId> cycle;
};

std::vector<CorpusEntry> gen_examples();

/// Embedding-faithful SVG: Tutte-style barycentric layout per component,
/// children scaled into their host faces, crossing vertices marked.
void emit_svg(std::ostream& out, const Multigraph& g, const PlaneDrawing& d,
              const std::vector<CrossingRecord>& crossings = {});

}  // namespace pdcross
