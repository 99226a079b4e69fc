#include "backforth/span.hpp"

#include <algorithm>

#include "backforth/errors.hpp"

namespace bf {

namespace {

void check_pair_caps(const FinStructure& x, const FinStructure& y, const Caps& caps) {
  for (const FinStructure* s : {&x, &y}) {
    if (s->size() > caps.max_carrier) {
      throw CapExceeded("carrier " + std::to_string(s->size()) + " of '" + s->name() +
                        "' exceeds cap " + std::to_string(caps.max_carrier));
    }
    if (s->size() > kMaxSpanCarrier) {
      throw CapExceeded("carrier of '" + s->name() + "' exceeds engine limit");
    }
    if (s->sig()->max_arity() > caps.max_arity) {
      throw CapExceeded("arity in signature of '" + s->name() + "' exceeds cap " +
                        std::to_string(caps.max_arity));
    }
  }
  if (!same_signature(*x.sig(), *y.sig())) {
    throw InvalidArgument("span calculus: '" + x.name() + "' and '" + y.name() +
                          "' have different signatures");
  }
}

std::vector<int> mask_elements(std::uint32_t mask, int n) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    if ((mask >> i) & 1) out.push_back(i);
  }
  return out;
}

// Map an encoded tuple over X's base through the span map into Y's base.
std::uint32_t map_code(std::uint32_t code, int arity, int base_x, int base_y,
                       const std::array<std::int8_t, kMaxSpanCarrier>& map) {
  std::uint32_t out = 0;
  std::uint32_t pow = 1;
  for (int i = 1; i < arity; ++i) pow *= static_cast<std::uint32_t>(base_x);
  for (int i = 0; i < arity; ++i) {
    const int digit = static_cast<int>((code / pow) % static_cast<std::uint32_t>(base_x));
    out = out * static_cast<std::uint32_t>(base_y) +
          static_cast<std::uint32_t>(map[static_cast<std::size_t>(digit)]);
    if (i + 1 < arity) pow /= static_cast<std::uint32_t>(base_x);
  }
  return out;
}

bool emb_span_ok(const FinStructure& x, const FinStructure& y, const Span& s,
                 std::string* why) {
  // Relations must transfer both ways, functions must commute with the map.
  const Signature& sig = *x.sig();
  const auto elems = mask_elements(s.domain, x.size());
  for (std::size_t r = 0; r < sig.relations().size(); ++r) {
    const int arity = sig.relations()[r].arity;
    bool ok = true;
    std::vector<std::size_t> idx(static_cast<std::size_t>(arity), 0);
    std::vector<int> t(static_cast<std::size_t>(arity)), mt(static_cast<std::size_t>(arity));
    if (elems.empty() && arity > 0) continue;
    for (;;) {
      for (int i = 0; i < arity; ++i) t[static_cast<std::size_t>(i)] = elems[idx[static_cast<std::size_t>(i)]];
      for (int i = 0; i < arity; ++i) mt[static_cast<std::size_t>(i)] = s.map[static_cast<std::size_t>(t[static_cast<std::size_t>(i)])];
      if (x.rel_holds(static_cast<int>(r), t) != y.rel_holds(static_cast<int>(r), mt)) {
        ok = false;
        break;
      }
      int i = arity - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == elems.size() - 1) {
        idx[static_cast<std::size_t>(i)] = 0;
        --i;
      }
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
    }
    if (!ok) {
      if (why) *why = "relation '" + sig.relations()[r].name + "' not matched on the center";
      return false;
    }
  }
  for (std::size_t f = 0; f < sig.functions().size(); ++f) {
    const int arity = sig.functions()[f].arity;
    std::vector<std::size_t> idx(static_cast<std::size_t>(arity), 0);
    std::vector<int> t(static_cast<std::size_t>(arity)), mt(static_cast<std::size_t>(arity));
    if (elems.empty() && arity > 0) continue;
    bool ok = true;
    for (;;) {
      for (int i = 0; i < arity; ++i) t[static_cast<std::size_t>(i)] = elems[idx[static_cast<std::size_t>(i)]];
      for (int i = 0; i < arity; ++i) mt[static_cast<std::size_t>(i)] = s.map[static_cast<std::size_t>(t[static_cast<std::size_t>(i)])];
      const int v = x.fun_eval(static_cast<int>(f), t);
      if (((s.domain >> v) & 1) == 0) {
        ok = false;  // domain not function-closed
        break;
      }
      if (s.map[static_cast<std::size_t>(v)] != static_cast<std::int8_t>(y.fun_eval(static_cast<int>(f), mt))) {
        ok = false;
        break;
      }
      int i = arity - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == elems.size() - 1) {
        idx[static_cast<std::size_t>(i)] = 0;
        --i;
      }
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
    }
    if (!ok) {
      if (why) *why = "function '" + sig.functions()[f].name + "' not preserved on the center";
      return false;
    }
  }
  return true;
}

}  // namespace

bool valid_span(const FinStructure& x, const FinStructure& y, CategoryMode mode, const Span& s,
                std::string* why) {
  if (s.domain >> x.size()) {
    if (why) *why = "domain outside the left carrier";
    return false;
  }
  std::uint32_t image = 0;
  for (int i = 0; i < kMaxSpanCarrier; ++i) {
    const bool in = (s.domain >> i) & 1;
    const int v = s.map[static_cast<std::size_t>(i)];
    if (in) {
      if (v < 0 || v >= y.size()) {
        if (why) *why = "map value outside the right carrier";
        return false;
      }
      if ((image >> v) & 1) {
        if (why) *why = "map not injective";
        return false;
      }
      image |= (std::uint32_t{1} << v);
    } else if (v != -1) {
      if (why) *why = "map defined outside the domain";
      return false;
    }
  }
  if (image != s.image) {
    if (why) *why = "image mask inconsistent with the map";
    return false;
  }
  if (mode == CategoryMode::Emb) {
    if (!s.rels.empty()) {
      if (why) *why = "emb-mode span carries a relation choice";
      return false;
    }
    if (!is_closed_mask(x, s.domain)) {
      if (why) *why = "domain not closed under functions";
      return false;
    }
    return emb_span_ok(x, y, s, why);
  }
  // Str mode: relation choice within induced tuples whose image holds in Y.
  if (!x.sig()->relational()) {
    if (why) *why = "str mode needs a relational signature";
    return false;
  }
  const Signature& sig = *x.sig();
  if (s.rels.size() != sig.relations().size()) {
    if (why) *why = "relation choice has wrong shape";
    return false;
  }
  for (std::size_t r = 0; r < sig.relations().size(); ++r) {
    const int arity = sig.relations()[r].arity;
    for (std::uint32_t code : s.rels[r].codes()) {
      std::vector<int> t = decode_tuple(code, arity, x.base());
      for (int v : t) {
        if (((s.domain >> v) & 1) == 0) {
          if (why) *why = "chosen tuple leaves the domain";
          return false;
        }
      }
      if (!x.rel_holds_code(static_cast<int>(r), code)) {
        if (why) *why = "chosen tuple does not hold on the left";
        return false;
      }
      if (!y.rel_holds_code(static_cast<int>(r),
                            map_code(code, arity, x.base(), y.base(), s.map))) {
        if (why) *why = "chosen tuple's image does not hold on the right";
        return false;
      }
    }
  }
  return true;
}

namespace {

// Enumerate injective maps from `elems` into 0..m-1, in lexicographic order
// of the assignment vector.
template <typename F>
void for_each_injection(const std::vector<int>& elems, int m, Span& scratch, F&& fn) {
  if (elems.empty()) {
    fn();
    return;
  }
  std::vector<char> used(static_cast<std::size_t>(m), 0);
  std::vector<int> choice(elems.size(), -1);
  std::size_t depth = 0;
  for (;;) {
    int start = choice[depth] + 1;
    if (choice[depth] >= 0) {
      used[static_cast<std::size_t>(choice[depth])] = 0;
      scratch.map[static_cast<std::size_t>(elems[depth])] = -1;
      choice[depth] = -1;
    }
    int pick = -1;
    for (int v = start; v < m; ++v) {
      if (!used[static_cast<std::size_t>(v)]) {
        pick = v;
        break;
      }
    }
    if (pick < 0) {
      if (depth == 0) break;
      --depth;
      continue;
    }
    choice[depth] = pick;
    used[static_cast<std::size_t>(pick)] = 1;
    scratch.map[static_cast<std::size_t>(elems[depth])] = static_cast<std::int8_t>(pick);
    if (depth + 1 == elems.size()) {
      fn();
      // stay at this depth; next loop advances the last choice
    } else {
      ++depth;
    }
  }
}

}  // namespace

SpanFamily all_canonical_spans(const StructureRef& x, const StructureRef& y, CategoryMode mode,
                               const Caps& caps) {
  check_pair_caps(*x, *y, caps);
  if (mode == CategoryMode::Str && !x->sig()->relational()) {
    throw InvalidArgument("str mode is unsupported over signatures with function symbols");
  }
  SpanFamily family{x, y, mode, {}};
  const std::uint32_t full = x->size() == 0 ? 0 : ((std::uint32_t{1} << x->size()) - 1);
  const Signature& sig = *x->sig();

  for (std::uint32_t mask = 0;; ++mask) {
    const bool usable = mode == CategoryMode::Str || is_closed_mask(*x, mask);
    if (usable) {
      const auto elems = mask_elements(mask, x->size());
      Span proto;
      proto.domain = mask;
      for_each_injection(elems, y->size(), proto, [&]() {
        proto.image = 0;
        for (int e : elems) {
          proto.image |= (std::uint32_t{1} << proto.map[static_cast<std::size_t>(e)]);
        }
        if (mode == CategoryMode::Emb) {
          if (emb_span_ok(*x, *y, proto, nullptr)) {
            family.spans.push_back(proto);
          }
        } else {
          // Allowed tuples: induced on the domain and preserved by the map.
          std::vector<std::vector<std::uint32_t>> allowed(sig.relations().size());
          for (std::size_t r = 0; r < sig.relations().size(); ++r) {
            const int arity = sig.relations()[r].arity;
            for (std::uint32_t code : x->induced_tuples(static_cast<int>(r), mask).codes()) {
              if (y->rel_holds_code(static_cast<int>(r),
                                    map_code(code, arity, x->base(), y->base(), proto.map))) {
                allowed[r].push_back(code);
              }
            }
            if (allowed[r].size() >= 30) {
              throw CapExceeded("relation choice space too large between '" + x->name() +
                                "' and '" + y->name() + "'");
            }
          }
          std::vector<std::uint32_t> sub(sig.relations().size(), 0);
          for (;;) {
            Span s = proto;
            s.rels.resize(sig.relations().size());
            for (std::size_t r = 0; r < sig.relations().size(); ++r) {
              s.rels[r] = TupleSet(x->base(), sig.relations()[r].arity);
              for (std::size_t b = 0; b < allowed[r].size(); ++b) {
                if ((sub[r] >> b) & 1) s.rels[r].set(allowed[r][b]);
              }
            }
            family.spans.push_back(std::move(s));
            if (family.spans.size() > caps.max_spans) {
              throw CapExceeded("span enumeration between '" + x->name() + "' and '" +
                                y->name() + "' exceeds cap");
            }
            std::size_t r = 0;
            while (r < sig.relations().size()) {
              const std::uint32_t top = (std::uint32_t{1} << allowed[r].size()) - 1;
              if (sub[r] < top) {
                ++sub[r];
                break;
              }
              sub[r] = 0;
              ++r;
            }
            if (r == sig.relations().size()) break;
          }
        }
        if (family.spans.size() > caps.max_spans) {
          throw CapExceeded("span enumeration between '" + x->name() + "' and '" + y->name() +
                            "' exceeds cap");
        }
      });
    }
    if (mask == full) break;
  }
  sort_unique(family);
  return family;
}

std::optional<SpanMorphismWitness> span_morphism(const SpanFamily& family, const Span& from,
                                                 const Span& to) {
  if ((from.domain & to.domain) != from.domain) return std::nullopt;
  for (int i = 0; i < family.left->size(); ++i) {
    if ((from.domain >> i) & 1) {
      if (to.map[static_cast<std::size_t>(i)] != from.map[static_cast<std::size_t>(i)]) return std::nullopt;
    }
  }
  if (family.mode == CategoryMode::Str) {
    for (std::size_t r = 0; r < from.rels.size(); ++r) {
      if (!from.rels[r].subset_of(to.rels[r])) return std::nullopt;
    }
  }
  SpanMorphismWitness w{from, to, {}};
  for (int i = 0; i < family.left->size(); ++i) {
    if ((from.domain >> i) & 1) w.center_map.emplace_back(i, i);
  }
  return w;
}

Span reverse_span(const FinStructure& x, const FinStructure& y, const Span& s) {
  Span out;
  out.domain = s.image;
  out.image = s.domain;
  for (int i = 0; i < x.size(); ++i) {
    if ((s.domain >> i) & 1) {
      out.map[static_cast<std::size_t>(s.map[static_cast<std::size_t>(i)])] = static_cast<std::int8_t>(i);
    }
  }
  out.rels.reserve(s.rels.size());
  for (std::size_t r = 0; r < s.rels.size(); ++r) {
    const int arity = s.rels[r].arity();
    TupleSet rev(y.base(), arity);
    for (std::uint32_t code : s.rels[r].codes()) {
      rev.set(map_code(code, arity, x.base(), y.base(), s.map));
    }
    out.rels.push_back(std::move(rev));
  }
  return out;
}

SpanFamily reverse_family(const SpanFamily& family) {
  SpanFamily out{family.right, family.left, family.mode, {}};
  out.spans.reserve(family.spans.size());
  for (const Span& s : family.spans) {
    out.spans.push_back(reverse_span(*family.left, *family.right, s));
  }
  sort_unique(out);
  return out;
}

SpanLegs materialize_span(const SpanFamily& family, const Span& s) {
  TestObject t{s.domain, family.mode == CategoryMode::Str ? s.rels : std::vector<TupleSet>{}};
  SubobjectMono sub = materialize_subobject(family.left, t, family.mode);
  Morphism right{sub.object, family.right, {}, "span_right"};
  right.map.reserve(sub.inclusion.map.size());
  for (int e : sub.inclusion.map) right.map.push_back(s.map[static_cast<std::size_t>(e)]);
  return SpanLegs{sub.object, std::move(sub.inclusion), std::move(right)};
}

Span canonicalize_span(const FinStructure& x, const FinStructure& y, CategoryMode mode,
                       const FinStructure& center, const Morphism& left_leg,
                       const Morphism& right_leg) {
  if (!is_mode_mono(left_leg, mode) || !is_mode_mono(right_leg, mode)) {
    throw InvalidArgument("canonicalize_span: legs are not monomorphisms of the mode");
  }
  Span s;
  for (int u = 0; u < center.size(); ++u) {
    const int xv = left_leg.map[static_cast<std::size_t>(u)];
    s.domain |= (std::uint32_t{1} << xv);
    s.map[static_cast<std::size_t>(xv)] = static_cast<std::int8_t>(right_leg.map[static_cast<std::size_t>(u)]);
    s.image |= (std::uint32_t{1} << right_leg.map[static_cast<std::size_t>(u)]);
  }
  if (mode == CategoryMode::Str) {
    const Signature& sig = *center.sig();
    s.rels.resize(sig.relations().size());
    for (std::size_t r = 0; r < sig.relations().size(); ++r) {
      const int arity = sig.relations()[r].arity;
      s.rels[r] = TupleSet(x.base(), arity);
      for (std::uint32_t code : center.rel_tuples(static_cast<int>(r))) {
        std::vector<int> t = decode_tuple(code, arity, center.base());
        for (int& v : t) v = left_leg.map[static_cast<std::size_t>(v)];
        s.rels[r].set(encode_tuple(t, x.base()));
      }
    }
  }
  std::string why;
  if (!valid_span(x, y, mode, s, &why)) {
    throw InvalidArgument("canonicalize_span: result is not a valid span (" + why + ")");
  }
  return s;
}

void sort_unique(SpanFamily& family) {
  std::sort(family.spans.begin(), family.spans.end());
  family.spans.erase(std::unique(family.spans.begin(), family.spans.end()), family.spans.end());
}

}  // namespace bf
