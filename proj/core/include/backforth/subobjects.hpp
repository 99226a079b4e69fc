#ifndef BACKFORTH_SUBOBJECTS_HPP
#define BACKFORTH_SUBOBJECTS_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "backforth/caps.hpp"
#include "backforth/morphism.hpp"
#include "backforth/structure.hpp"
#include "backforth/tupleset.hpp"

namespace bf {

// Smallest carrier subset containing `seed`, closed under every function
// symbol (constants included).  Returns sorted element indices.
std::vector<int> generated_substructure(const FinStructure& x, std::span<const int> seed);

// Same, on bitmasks.
std::uint32_t closure_mask(const FinStructure& x, std::uint32_t seed);
bool is_closed_mask(const FinStructure& x, std::uint32_t mask);

// Compact form of a subobject of a fixed structure.  In Emb mode the
// relation choice is always the induced one and `rels` stays empty; in Str
// mode `rels` holds the chosen tuples (over the ambient carrier) per
// relation symbol.
struct TestObject {
  std::uint32_t mask = 0;
  std::vector<TupleSet> rels;

  bool operator==(const TestObject&) const = default;
  std::strong_ordering operator<=>(const TestObject& o) const {
    if (auto c = mask <=> o.mask; c != 0) return c;
    return rels <=> o.rels;
  }
};

// One entry per subobject with lambda-generated (= finite) domain, in
// canonical order.  Emb: function-closed subsets.  Str: subsets with any
// sub-induced relation choice; rejects functional signatures.
std::vector<TestObject> enumerate_test_objects_compact(const FinStructure& x,
                                                       CategoryMode mode,
                                                       const Caps& caps = {});

struct SubobjectMono {
  StructureRef object;
  Morphism inclusion;
};

// The subobject as an honest structure with its inclusion mono.
SubobjectMono materialize_subobject(const StructureRef& x, const TestObject& t,
                                    CategoryMode mode);

std::vector<SubobjectMono> enumerate_test_objects(const StructureRef& x,
                                                  CategoryMode mode,
                                                  const Caps& caps = {});

// Brute-force isomorphism search by backtracking over bijections.
// Deterministic: returns the lexicographically least isomorphism if any.
std::optional<Morphism> iso_oracle(const StructureRef& x, const StructureRef& y);

}  // namespace bf

#endif
