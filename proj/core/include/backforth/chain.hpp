#ifndef BACKFORTH_CHAIN_HPP
#define BACKFORTH_CHAIN_HPP

#include <optional>
#include <string>
#include <vector>

#include "backforth/embedding.hpp"

namespace bf {

// A finite linear diagram X0 -> X1 -> ... -> Xk-1.  Composite connecting
// maps are derived on demand.
struct ChainDiagram {
  std::string name;
  std::vector<StructureRef> objects;
  std::vector<Morphism> maps;  // maps[i] : objects[i] -> objects[i+1]
};

void validate_chain(const ChainDiagram& c);

struct ChainColimit {
  StructureRef object;            // the last object
  std::vector<Morphism> cocone;   // composites into it
};

// For a finite chain of monos the colimit is the last object with composite
// cocone.  Throws on a non-mono connecting map.
ChainColimit colimit_of_chain(const ChainDiagram& c, CategoryMode mode);

// Checks that a competing cocone (e, legs) factors uniquely through the
// colimit; the induced map is the last leg.
bool verify_colimit_universal(const ChainDiagram& c, const ChainColimit& col,
                              const StructureRef& e, const std::vector<Morphism>& legs);

// Two chains over the same index list plus a component per index.
struct LadderInstance {
  ChainDiagram first;
  ChainDiagram second;
  std::vector<Morphism> components;
  std::string name;
};

struct LadderReport {
  bool hypothesis_ok = false;
  std::optional<bool> conclusion_ok;  // unset when the hypothesis fails
  std::string detail;
};

// Hypothesis: every connecting map of both chains and every component is a
// lambda-embedding.  Conclusion: so is the induced map between the
// colimits.  Naturality failures are reported as malformed instances.
LadderReport verify_ladder(const LadderInstance& l, CategoryMode mode, const Caps& caps = {});

struct SmoothReport {
  bool hypothesis_ok = false;
  std::optional<bool> composite_ok;
  std::string detail;
};

// When every step embeds, the composite into the colimit embeds.
SmoothReport verify_smooth_composition(const ChainDiagram& c, CategoryMode mode,
                                       const Caps& caps = {});

}  // namespace bf

#endif
