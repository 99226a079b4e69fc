#ifndef BACKFORTH_SPAN_HPP
#define BACKFORTH_SPAN_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "backforth/caps.hpp"
#include "backforth/morphism.hpp"
#include "backforth/subobjects.hpp"

namespace bf {

// A canonical span X >-- U --> Y.  The center is identified with a subset of
// X's carrier: the left leg is the subset inclusion and the right leg an
// injective map into Y.  In Emb mode the domain is function-closed and the
// map is a partial isomorphism of induced substructures; in Str mode `rels`
// picks the center's relations, bounded by the induced tuples whose image
// also holds in Y.
struct Span {
  std::uint32_t domain = 0;
  std::uint32_t image = 0;
  std::array<std::int8_t, kMaxSpanCarrier> map{};  // -1 outside domain
  std::vector<TupleSet> rels;

  Span() { map.fill(-1); }

  bool operator==(const Span& o) const {
    return domain == o.domain && map == o.map && rels == o.rels;
  }
  std::strong_ordering operator<=>(const Span& o) const {
    if (auto c = domain <=> o.domain; c != 0) return c;
    if (auto c = map <=> o.map; c != 0) return c;
    return rels <=> o.rels;
  }
};

// A finite family of canonical spans between a fixed pair of objects.
// Spans are kept sorted and deduplicated.
struct SpanFamily {
  StructureRef left;
  StructureRef right;
  CategoryMode mode = CategoryMode::Emb;
  std::vector<Span> spans;
};

// A map between span centers making both triangles commute.  For canonical
// spans the connecting map is forced to be the domain inclusion.
struct SpanMorphismWitness {
  Span from;
  Span to;
  std::vector<std::pair<int, int>> center_map;  // (element of from.domain, same in to.domain)
};

// The family of every canonical span between X and Y.
SpanFamily all_canonical_spans(const StructureRef& x, const StructureRef& y,
                               CategoryMode mode, const Caps& caps = {});

// Checks one span against a family's objects; `why` gets a diagnostic on
// failure.
bool valid_span(const FinStructure& x, const FinStructure& y, CategoryMode mode,
                const Span& s, std::string* why = nullptr);

// Inclusion-induced morphism of spans, if the triangles commute.
std::optional<SpanMorphismWitness> span_morphism(const SpanFamily& family, const Span& from,
                                                 const Span& to);

// Swap the two legs: a span between Y and X.
Span reverse_span(const FinStructure& x, const FinStructure& y, const Span& s);
SpanFamily reverse_family(const SpanFamily& family);

// Center structure with its two leg morphisms.
struct SpanLegs {
  StructureRef center;
  Morphism left_leg;
  Morphism right_leg;
};
SpanLegs materialize_span(const SpanFamily& family, const Span& s);

// Rebuild the canonical form from a center with two mono legs.
Span canonicalize_span(const FinStructure& x, const FinStructure& y, CategoryMode mode,
                       const FinStructure& center, const Morphism& left_leg,
                       const Morphism& right_leg);

void sort_unique(SpanFamily& family);

}  // namespace bf

#endif
