#ifndef BACKFORTH_SERIALIZE_HPP
#define BACKFORTH_SERIALIZE_HPP

#include <string>

#include "backforth/span.hpp"

namespace bf {

// Families travel as JSON arrays of {domain:[...], map:[...], relations:{...}?}
// with `map` aligned to the ascending domain; `relations` appears in str
// mode only.
std::string family_to_json(const SpanFamily& family, bool pretty = true);

// Parses and validates; every span must be a valid canonical span between
// the given objects.
SpanFamily family_from_json(const std::string& text, StructureRef left, StructureRef right,
                            CategoryMode mode);

std::string test_object_to_json(const FinStructure& ambient, const TestObject& t, bool pretty);
std::string span_to_json(const SpanFamily& family, const Span& s, bool pretty);

}  // namespace bf

#endif
