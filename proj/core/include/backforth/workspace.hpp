#ifndef BACKFORTH_WORKSPACE_HPP
#define BACKFORTH_WORKSPACE_HPP

#include <map>
#include <string>

#include "backforth/chain.hpp"
#include "backforth/theory.hpp"

namespace bf {

// A parsed and validated batch of declarations.  Names are unique across
// all declaration kinds.
struct Workspace {
  std::map<std::string, SignatureRef> signatures;
  std::map<std::string, StructureRef> structures;
  std::map<std::string, Morphism> morphisms;
  std::map<std::string, Theory> theories;
  std::map<std::string, ChainDiagram> chains;
  std::map<std::string, LadderInstance> ladders;

  const StructureRef& structure(const std::string& name) const;
  const Morphism& morphism(const std::string& name) const;
  const Theory& theory(const std::string& name) const;
  const ChainDiagram& chain(const std::string& name) const;
  const LadderInstance& ladder(const std::string& name) const;
};

// Grammar (UTF-8, line comments with '#'):
//   signature <name> : rel <R>/<k> ; fun <f>/<k> ; ...
//   structure <name> : <sig> ; size <n> ; <R> = {(i,...),...} ; <f> = [...]
//   morphism  <name> : <src> -> <dst> ; map [j0, j1, ...]
//   theory    <name> : <sig> ; forall v... . <formula> -> <formula> ; ...
//   chain     <name> : <s0> -<m01>-> <s1> -<m12>-> ...
//   ladder    <name> : <chain1> => <chain2> ; components [h0, h1, ...]
// Constants are arity-0 functions written `<c> = [k]`.  Function tables are
// nested per argument, first argument outermost.
Workspace parse_workspace(std::string_view text);

}  // namespace bf

#endif
