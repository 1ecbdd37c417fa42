#pragma once

#include <iosfwd>
#include <string>

#include "pdcross/predrawn.hpp"

namespace pdcross {

/// "pdg v1" text format, one declaration per line:
///   v <id>
///   e <id> <u> <v> [H] [X] [w=<int>]
///   cross <id> <e1> <pos1> <e2> <pos2>
///   rot <vertex> <edgeEnd>...        edgeEnd = <edgeId>.<0|1>, clockwise
///   outer <edgeId> <fwd|rev> <left|right>
///   contain <component> <edgeId> <fwd|rev> <left|right> [mirrored]
/// Lines starting with '#' are comments. Unknown keywords are errors.
///
/// `e` declares original edges; `cross` lines planarise them at parse time,
/// splitting edge <e> into pieces <e>#0..<e>#k referenced by later lines.
/// An instance file draws the predrawn subgraph; a witness file draws
/// everything.
struct PdgFile {
  Multigraph graph;        // planarised
  PlaneDrawing drawing;
  CrossingRegistry registry;
};

PdgFile parse_pdg(const std::string& text);
PdgFile load_pdg(const std::string& path);

std::string serialize_pdg(const Multigraph& g, const PlaneDrawing& d,
                          const CrossingRegistry& registry = {});
void save_pdg(const std::string& path, const Multigraph& g, const PlaneDrawing& d,
              const CrossingRegistry& registry = {});

PredrawnGraph predrawn_from_file(const PdgFile& f);
std::string serialize_predrawn(const PredrawnGraph& p);

DrawingWitness witness_from_file(const PdgFile& f);
std::string serialize_witness(const DrawingWitness& w);

}  // namespace pdcross
