#ifndef BACKFORTH_STRUCTURE_HPP
#define BACKFORTH_STRUCTURE_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "backforth/signature.hpp"
#include "backforth/tupleset.hpp"

namespace bf {

// A finite interpretation of a signature.  The carrier is 0..size-1.
// Relations are stored as sorted lists of encoded tuples; function symbols
// as total tables indexed by encoded argument tuples.  Immutable after
// construction; the constructor validates carrier bounds and totality.
class FinStructure {
 public:
  FinStructure(SignatureRef sig, std::string name, int size,
               std::vector<std::vector<std::vector<int>>> relations,
               std::vector<std::vector<int>> functions);

  const SignatureRef& sig() const { return sig_; }
  const std::string& name() const { return name_; }
  int size() const { return size_; }
  int base() const { return size_ < 1 ? 1 : size_; }

  bool rel_holds(int rel, std::span<const int> args) const;
  bool rel_holds_code(int rel, std::uint32_t code) const;
  // Sorted encoded tuples of one relation.
  const std::vector<std::uint32_t>& rel_tuples(int rel) const { return relations_[static_cast<std::size_t>(rel)]; }
  std::vector<std::vector<int>> rel_tuples_decoded(int rel) const;

  int fun_eval(int fun, std::span<const int> args) const;
  const std::vector<int>& fun_table(int fun) const { return functions_[static_cast<std::size_t>(fun)]; }

  // All tuples of `rel` whose components lie in `mask`, as a TupleSet.
  TupleSet induced_tuples(int rel, std::uint32_t mask) const;

 private:
  SignatureRef sig_;
  std::string name_;
  int size_;
  std::vector<std::vector<std::uint32_t>> relations_;
  std::vector<std::vector<int>> functions_;
};

using StructureRef = std::shared_ptr<const FinStructure>;

// Structural equality: same signature shape, size and interpretation.
bool same_structure(const FinStructure& a, const FinStructure& b);

}  // namespace bf

#endif
