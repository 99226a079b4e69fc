#ifndef BACKFORTH_EMBEDDING_HPP
#define BACKFORTH_EMBEDDING_HPP

#include <optional>

#include "backforth/density.hpp"

namespace bf {

// For each test object of the source, the witnessing span and connecting
// map; the connecting map is the test object's inclusion re-targeted at the
// span's center, so only the span index is stored.
struct EmbeddingWitness {
  TestObject test;
  std::size_t span_index = 0;
};

struct EmbeddingVerdict {
  bool ok = false;
  std::vector<EmbeddingWitness> witnesses;
  std::optional<TestObject> failing;
};

// The witness condition of a morphism against a dense family: every
// subobject of the source factors through some span compatibly with f.
// The family must be dense; a non-dense family is rejected.
EmbeddingVerdict check_embedding_condition(const Morphism& f, const SpanFamily& family,
                                           const Caps& caps = {});

// Variant that trusts the family to be dense already (e.g. a freshly
// computed greatest family) and skips the density re-check.
EmbeddingVerdict check_embedding_condition_trusted(const Morphism& f, const SpanFamily& family,
                                                   const Caps& caps = {});

// Decides the condition against the greatest dense family.  f must be a
// morphism of the mode's category.
bool decide_lambda_embedding(const Morphism& f, CategoryMode mode, const Caps& caps = {});

// Mono purity: every commuting square through lambda-generated A, B admits
// a mono filler B -> X over the A-leg.  f must be mono in the mode.
bool check_purity(const Morphism& f, CategoryMode mode, const Caps& caps = {});

}  // namespace bf

#endif
