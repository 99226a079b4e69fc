#include "backforth/morphism.hpp"

#include <algorithm>

#include "backforth/errors.hpp"

namespace bf {

std::string_view to_string(MorphClass c) {
  switch (c) {
    case MorphClass::NotHom: return "not-hom";
    case MorphClass::Hom: return "hom";
    case MorphClass::MonoHom: return "mono-hom";
    case MorphClass::Embedding: return "embedding";
    case MorphClass::Iso: return "iso";
  }
  return "?";
}

std::optional<MorphClass> morph_class_from_string(std::string_view s) {
  if (s == "not-hom") return MorphClass::NotHom;
  if (s == "hom") return MorphClass::Hom;
  if (s == "mono-hom") return MorphClass::MonoHom;
  if (s == "embedding") return MorphClass::Embedding;
  if (s == "iso") return MorphClass::Iso;
  return std::nullopt;
}

namespace {

void check_wellformed(const Morphism& f) {
  if (!f.src || !f.dst) throw InvalidArgument("morphism without endpoints");
  if (!same_signature(*f.src->sig(), *f.dst->sig())) {
    throw InvalidArgument("morphism '" + f.name + "': source and target signatures differ");
  }
  if (static_cast<int>(f.map.size()) != f.src->size()) {
    throw InvalidArgument("morphism '" + f.name + "': map table has wrong length");
  }
  for (int v : f.map) {
    if (v < 0 || v >= f.dst->size()) {
      throw InvalidArgument("morphism '" + f.name + "': map value " + std::to_string(v) +
                            " outside target carrier");
    }
  }
}

// Iterate all tuples of the given arity over carrier 0..n-1.
template <typename F>
void for_each_tuple(int n, int arity, F&& fn) {
  std::vector<int> t(static_cast<std::size_t>(arity), 0);
  if (arity == 0) {
    fn(t);
    return;
  }
  if (n == 0) return;
  for (;;) {
    fn(t);
    int i = arity - 1;
    while (i >= 0 && t[static_cast<std::size_t>(i)] == n - 1) {
      t[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    ++t[static_cast<std::size_t>(i)];
  }
}

bool is_hom(const Morphism& f) {
  const Signature& sig = *f.src->sig();
  std::vector<int> mapped;
  for (std::size_t r = 0; r < sig.relations().size(); ++r) {
    const int arity = sig.relations()[r].arity;
    for (std::uint32_t code : f.src->rel_tuples(static_cast<int>(r))) {
      std::vector<int> t = decode_tuple(code, arity, f.src->base());
      mapped.resize(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) mapped[i] = f.map[static_cast<std::size_t>(t[i])];
      if (!f.dst->rel_holds(static_cast<int>(r), mapped)) return false;
    }
  }
  for (std::size_t fi = 0; fi < sig.functions().size(); ++fi) {
    const int arity = sig.functions()[fi].arity;
    bool ok = true;
    for_each_tuple(f.src->size(), arity, [&](const std::vector<int>& args) {
      if (!ok) return;
      mapped.resize(args.size());
      for (std::size_t i = 0; i < args.size(); ++i) mapped[i] = f.map[static_cast<std::size_t>(args[i])];
      if (f.map[static_cast<std::size_t>(f.src->fun_eval(static_cast<int>(fi), args))] !=
          f.dst->fun_eval(static_cast<int>(fi), mapped)) {
        ok = false;
      }
    });
    if (!ok) return false;
  }
  return true;
}

bool is_injective(const Morphism& f) {
  std::vector<char> hit(static_cast<std::size_t>(f.dst->size()), 0);
  for (int v : f.map) {
    if (hit[static_cast<std::size_t>(v)]) return false;
    hit[static_cast<std::size_t>(v)] = 1;
  }
  return true;
}

// f is already a mono hom; check it reflects relations.
bool reflects_relations(const Morphism& f) {
  const Signature& sig = *f.src->sig();
  std::vector<int> preimage(static_cast<std::size_t>(f.dst->size()), -1);
  for (int x = 0; x < f.src->size(); ++x) preimage[static_cast<std::size_t>(f.map[static_cast<std::size_t>(x)])] = x;
  std::vector<int> pulled;
  for (std::size_t r = 0; r < sig.relations().size(); ++r) {
    const int arity = sig.relations()[r].arity;
    for (std::uint32_t code : f.dst->rel_tuples(static_cast<int>(r))) {
      std::vector<int> t = decode_tuple(code, arity, f.dst->base());
      bool in_image = true;
      pulled.resize(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) {
        int p = preimage[static_cast<std::size_t>(t[i])];
        if (p < 0) {
          in_image = false;
          break;
        }
        pulled[i] = p;
      }
      if (in_image && !f.src->rel_holds(static_cast<int>(r), pulled)) return false;
    }
  }
  return true;
}

}  // namespace

MorphClass classify_morphism(const Morphism& f) {
  check_wellformed(f);
  if (!is_hom(f)) return MorphClass::NotHom;
  if (!is_injective(f)) return MorphClass::Hom;
  if (!reflects_relations(f)) return MorphClass::MonoHom;
  if (f.src->size() != f.dst->size()) return MorphClass::Embedding;
  // Bijective embedding; accept iso only if the inverse is an embedding too.
  Morphism inv{f.dst, f.src, std::vector<int>(static_cast<std::size_t>(f.dst->size())), f.name + "^-1"};
  for (int x = 0; x < f.src->size(); ++x) inv.map[static_cast<std::size_t>(f.map[static_cast<std::size_t>(x)])] = x;
  if (is_hom(inv) && reflects_relations(inv)) return MorphClass::Iso;
  return MorphClass::Embedding;
}

bool is_mode_morphism(const Morphism& f, CategoryMode mode) {
  MorphClass c = classify_morphism(f);
  return mode == CategoryMode::Emb ? c >= MorphClass::Embedding : c >= MorphClass::Hom;
}

bool is_mode_mono(const Morphism& f, CategoryMode mode) {
  MorphClass c = classify_morphism(f);
  return mode == CategoryMode::Emb ? c >= MorphClass::Embedding : c >= MorphClass::MonoHom;
}

Morphism identity_morphism(StructureRef x) {
  Morphism f{x, x, std::vector<int>(static_cast<std::size_t>(x->size())), "id_" + x->name()};
  for (int i = 0; i < x->size(); ++i) f.map[static_cast<std::size_t>(i)] = i;
  return f;
}

Morphism compose(const Morphism& g, const Morphism& f) {
  if (!f.dst || !g.src || !same_structure(*f.dst, *g.src)) {
    throw InvalidArgument("compose: middle objects do not match");
  }
  Morphism h{f.src, g.dst, std::vector<int>(f.map.size()), g.name + "." + f.name};
  for (std::size_t i = 0; i < f.map.size(); ++i) {
    h.map[i] = g.map[static_cast<std::size_t>(f.map[i])];
  }
  return h;
}

Morphism invert(const Morphism& f) {
  if (classify_morphism(f) != MorphClass::Iso) {
    throw InvalidArgument("invert: '" + f.name + "' is not an isomorphism");
  }
  Morphism inv{f.dst, f.src, std::vector<int>(f.map.size()), f.name + "^-1"};
  for (std::size_t i = 0; i < f.map.size(); ++i) {
    inv.map[static_cast<std::size_t>(f.map[i])] = static_cast<int>(i);
  }
  return inv;
}

bool same_morphism(const Morphism& a, const Morphism& b) {
  return same_structure(*a.src, *b.src) && same_structure(*a.dst, *b.dst) && a.map == b.map;
}

}  // namespace bf
