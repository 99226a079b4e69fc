#ifndef BACKFORTH_DENSITY_HPP
#define BACKFORTH_DENSITY_HPP

#include <optional>

#include "backforth/span.hpp"

namespace bf {

enum class Direction { Back, Forth };

std::string_view to_string(Direction d);

struct DensityCounterexample {
  Span span;
  Direction direction = Direction::Back;
  TestObject test;
};

struct DensityVerdict {
  bool dense = false;
  std::optional<DensityCounterexample> counterexample;
};

// Does `family` contain an extension of `s` against test object `g`?
// Back: g is a subobject of the left object; Forth: of the right one.
bool has_extension(const SpanFamily& family, const Span& s, const TestObject& g, Direction dir);

// The back-and-forth density condition, checked definitionally: non-empty,
// and every (span, test object) pair in both directions extends inside the
// family.  On failure reports the least failing pair in canonical order.
DensityVerdict check_density(const SpanFamily& family, const Caps& caps = {});

// Greatest-fixpoint pruning of the full canonical span set: per round, all
// spans failing back or forth against the current family are removed
// simultaneously; the result is empty or the greatest dense family.
SpanFamily greatest_dense_family(const StructureRef& x, const StructureRef& y,
                                 CategoryMode mode, const Caps& caps = {});

bool decide_equivalent(const StructureRef& x, const StructureRef& y, CategoryMode mode,
                       const Caps& caps = {});

// Pairwise pullback-over-the-middle composition followed by closure under
// sub-spans.
SpanFamily star_compose(const SpanFamily& s_xy, const SpanFamily& s_yz, const Caps& caps = {});

// All sub-spans of the members of `family` (sieve closure).
SpanFamily sieve_closure(const SpanFamily& family, const Caps& caps = {});

}  // namespace bf

#endif
