#ifndef BACKFORTH_CAPS_HPP
#define BACKFORTH_CAPS_HPP

#include <cstddef>

namespace bf {

// Enumeration guards for the span calculus.  Exceeding a cap raises
// CapExceeded instead of letting a call run unbounded.
struct Caps {
  int max_carrier = 8;                  // largest carrier the span ops accept
  int max_arity = 3;                    // largest symbol arity the span ops accept
  std::size_t max_spans = 200000;       // canonical spans per object pair
  std::size_t max_test_objects = 50000; // subobjects per object
};

// Hard representation limit: carriers of structures entering the span
// calculus are indexed by 16-bit masks.
inline constexpr int kMaxSpanCarrier = 16;

}  // namespace bf

#endif
