#ifndef BACKFORTH_MORPHISM_HPP
#define BACKFORTH_MORPHISM_HPP

#include <optional>
#include <string>
#include <vector>

#include "backforth/structure.hpp"

namespace bf {

// A concrete map between structures over the same signature, as a total
// table on the source carrier.  Classification is always derived, never
// stored.
struct Morphism {
  StructureRef src;
  StructureRef dst;
  std::vector<int> map;
  std::string name;
};

// Ordered: everything to the right implies everything to its left except
// NotHom.  Iso is a bijective embedding whose inverse is an embedding.
enum class MorphClass { NotHom = 0, Hom = 1, MonoHom = 2, Embedding = 3, Iso = 4 };

std::string_view to_string(MorphClass c);
std::optional<MorphClass> morph_class_from_string(std::string_view s);

// Throws InvalidArgument on signature mismatch or a malformed map table.
MorphClass classify_morphism(const Morphism& f);

// Whether f is a morphism of the mode's category at all.
bool is_mode_morphism(const Morphism& f, CategoryMode mode);
// Whether f is a monomorphism there.
bool is_mode_mono(const Morphism& f, CategoryMode mode);

Morphism identity_morphism(StructureRef x);

// g after f; endpoint structures must agree structurally.
Morphism compose(const Morphism& g, const Morphism& f);

// Inverse of an isomorphism; throws InvalidArgument otherwise.
Morphism invert(const Morphism& f);

bool same_morphism(const Morphism& a, const Morphism& b);

}  // namespace bf

#endif
