#include "backforth/subobjects.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "backforth/errors.hpp"

namespace bf {

namespace {

void check_span_caps(const FinStructure& x, const Caps& caps) {
  if (x.size() > caps.max_carrier) {
    throw CapExceeded("carrier " + std::to_string(x.size()) + " of '" + x.name() +
                      "' exceeds cap " + std::to_string(caps.max_carrier));
  }
  if (x.size() > kMaxSpanCarrier) {
    throw CapExceeded("carrier " + std::to_string(x.size()) + " exceeds engine limit " +
                      std::to_string(kMaxSpanCarrier));
  }
  if (x.sig()->max_arity() > caps.max_arity) {
    throw CapExceeded("arity " + std::to_string(x.sig()->max_arity()) +
                      " in signature of '" + x.name() + "' exceeds cap " +
                      std::to_string(caps.max_arity));
  }
}

template <typename F>
void for_each_tuple_in_mask(const FinStructure& x, int arity, std::uint32_t mask, F&& fn) {
  std::vector<int> elems;
  for (int i = 0; i < x.size(); ++i) {
    if ((mask >> i) & 1) elems.push_back(i);
  }
  if (arity == 0) {
    std::vector<int> t;
    fn(t);
    return;
  }
  if (elems.empty()) return;
  std::vector<std::size_t> idx(static_cast<std::size_t>(arity), 0);
  std::vector<int> t(static_cast<std::size_t>(arity));
  for (;;) {
    for (int i = 0; i < arity; ++i) t[static_cast<std::size_t>(i)] = elems[idx[static_cast<std::size_t>(i)]];
    fn(t);
    int i = arity - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == elems.size() - 1) {
      idx[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
  }
}

}  // namespace

std::uint32_t closure_mask(const FinStructure& x, std::uint32_t seed) {
  const Signature& sig = *x.sig();
  std::uint32_t mask = seed;
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t f = 0; f < sig.functions().size(); ++f) {
      const int arity = sig.functions()[f].arity;
      for_each_tuple_in_mask(x, arity, mask, [&](const std::vector<int>& args) {
        int v = x.fun_eval(static_cast<int>(f), args);
        if (!((mask >> v) & 1)) {
          mask |= (std::uint32_t{1} << v);
          grew = true;
        }
      });
    }
  }
  return mask;
}

bool is_closed_mask(const FinStructure& x, std::uint32_t mask) {
  return closure_mask(x, mask) == mask;
}

std::vector<int> generated_substructure(const FinStructure& x, std::span<const int> seed) {
  std::uint32_t mask = 0;
  for (int v : seed) {
    if (v < 0 || v >= x.size()) {
      throw InvalidArgument("seed element " + std::to_string(v) + " outside carrier of '" +
                            x.name() + "'");
    }
    mask |= (std::uint32_t{1} << v);
  }
  if (x.size() > 31) throw CapExceeded("carrier too large for substructure generation");
  mask = closure_mask(x, mask);
  std::vector<int> out;
  for (int i = 0; i < x.size(); ++i) {
    if ((mask >> i) & 1) out.push_back(i);
  }
  return out;
}

std::vector<TestObject> enumerate_test_objects_compact(const FinStructure& x,
                                                       CategoryMode mode,
                                                       const Caps& caps) {
  check_span_caps(x, caps);
  if (mode == CategoryMode::Str && !x.sig()->relational()) {
    throw InvalidArgument("str mode is unsupported over signatures with function symbols");
  }
  const std::uint32_t full = (x.size() >= 31) ? 0x7fffffffu : ((std::uint32_t{1} << x.size()) - 1);
  std::vector<TestObject> out;
  for (std::uint32_t mask = 0;; ++mask) {
    if (mode == CategoryMode::Emb) {
      if (is_closed_mask(x, mask)) {
        out.push_back(TestObject{mask, {}});
        if (out.size() > caps.max_test_objects) {
          throw CapExceeded("test object enumeration for '" + x.name() + "' exceeds cap");
        }
      }
    } else {
      // Every choice of sub-induced relations is a distinct subobject.
      const auto& rels = x.sig()->relations();
      std::vector<std::vector<std::uint32_t>> induced(rels.size());
      for (std::size_t r = 0; r < rels.size(); ++r) {
        induced[r] = x.induced_tuples(static_cast<int>(r), mask).codes();
      }
      std::vector<TupleSet> choice(rels.size());
      for (std::size_t r = 0; r < rels.size(); ++r) {
        choice[r] = TupleSet(x.base(), rels[r].arity);
      }
      // Odometer over subsets of each relation's induced tuple list.
      std::vector<std::uint32_t> sub(rels.size(), 0);
      for (;;) {
        for (std::size_t r = 0; r < rels.size(); ++r) {
          choice[r] = TupleSet(x.base(), rels[r].arity);
          for (std::size_t b = 0; b < induced[r].size(); ++b) {
            if ((sub[r] >> b) & 1) choice[r].set(induced[r][b]);
          }
        }
        out.push_back(TestObject{mask, choice});
        if (out.size() > caps.max_test_objects) {
          throw CapExceeded("test object enumeration for '" + x.name() + "' exceeds cap");
        }
        std::size_t r = 0;
        while (r < rels.size()) {
          if (induced[r].size() >= 30) {
            throw CapExceeded("induced relation too large on '" + x.name() + "'");
          }
          const std::uint32_t top = (std::uint32_t{1} << induced[r].size()) - 1;
          if (sub[r] < top) {
            ++sub[r];
            break;
          }
          sub[r] = 0;
          ++r;
        }
        if (r == rels.size()) break;
      }
    }
    if (mask == full) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

SubobjectMono materialize_subobject(const StructureRef& x, const TestObject& t,
                                    CategoryMode mode) {
  std::vector<int> elems;
  for (int i = 0; i < x->size(); ++i) {
    if ((t.mask >> i) & 1) elems.push_back(i);
  }
  std::vector<int> local(static_cast<std::size_t>(x->size()), -1);
  for (std::size_t i = 0; i < elems.size(); ++i) local[static_cast<std::size_t>(elems[i])] = static_cast<int>(i);

  const Signature& sig = *x->sig();
  std::vector<std::vector<std::vector<int>>> rels(sig.relations().size());
  for (std::size_t r = 0; r < sig.relations().size(); ++r) {
    const int arity = sig.relations()[r].arity;
    TupleSet chosen = (mode == CategoryMode::Emb || t.rels.empty())
                          ? x->induced_tuples(static_cast<int>(r), t.mask)
                          : t.rels[r];
    for (std::uint32_t code : chosen.codes()) {
      std::vector<int> tuple = decode_tuple(code, arity, x->base());
      for (int& v : tuple) v = local[static_cast<std::size_t>(v)];
      rels[r].push_back(std::move(tuple));
    }
  }
  std::vector<std::vector<int>> funs(sig.functions().size());
  for (std::size_t f = 0; f < sig.functions().size(); ++f) {
    const int arity = sig.functions()[f].arity;
    std::vector<int> table;
    std::vector<std::size_t> idx(static_cast<std::size_t>(arity), 0);
    std::vector<int> args(static_cast<std::size_t>(arity));
    const std::size_t n = elems.size();
    std::size_t total = 1;
    for (int i = 0; i < arity; ++i) total *= n;
    if (arity == 0) total = 1;
    table.reserve(total);
    if (n == 0 && arity > 0) {
      funs[f] = {};
      continue;
    }
    for (std::size_t k = 0; k < total; ++k) {
      std::size_t rem = k;
      for (int i = arity - 1; i >= 0; --i) {
        idx[static_cast<std::size_t>(i)] = rem % n;
        rem /= n;
      }
      for (int i = 0; i < arity; ++i) args[static_cast<std::size_t>(i)] = elems[idx[static_cast<std::size_t>(i)]];
      table.push_back(local[static_cast<std::size_t>(x->fun_eval(static_cast<int>(f), args))]);
    }
    funs[f] = std::move(table);
  }

  std::string name = x->name() + "|" + std::to_string(t.mask);
  auto g = std::make_shared<FinStructure>(x->sig(), name, static_cast<int>(elems.size()),
                                          std::move(rels), std::move(funs));
  Morphism incl{g, x, {}, "incl_" + name};
  incl.map.reserve(elems.size());
  for (int e : elems) incl.map.push_back(e);
  return SubobjectMono{std::move(g), std::move(incl)};
}

std::vector<SubobjectMono> enumerate_test_objects(const StructureRef& x, CategoryMode mode,
                                                  const Caps& caps) {
  std::vector<SubobjectMono> out;
  for (const TestObject& t : enumerate_test_objects_compact(*x, mode, caps)) {
    out.push_back(materialize_subobject(x, t, mode));
  }
  return out;
}

namespace {

// Backtracking bijection search; assigns source elements in order, images
// ascending, pruning on relation tuples and function entries that are fully
// decided.
bool extend_iso(const FinStructure& x, const FinStructure& y, std::vector<int>& map,
                std::vector<char>& used, int next) {
  const int n = x.size();
  if (next == n) return true;
  const Signature& sig = *x.sig();
  for (int img = 0; img < n; ++img) {
    if (used[static_cast<std::size_t>(img)]) continue;
    map[static_cast<std::size_t>(next)] = img;
    used[static_cast<std::size_t>(img)] = 1;
    bool ok = true;
    std::vector<int> mapped;
    for (std::size_t r = 0; ok && r < sig.relations().size(); ++r) {
      const int arity = sig.relations()[r].arity;
      for_each_tuple_in_mask(x, arity,
                             (std::uint32_t{1} << (next + 1)) - 1, [&](const std::vector<int>& t) {
        if (!ok) return;
        bool uses_next = false;
        for (int v : t) {
          if (v == next) uses_next = true;
        }
        if (!uses_next) return;
        mapped.resize(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) mapped[i] = map[static_cast<std::size_t>(t[i])];
        if (x.rel_holds(static_cast<int>(r), t) != y.rel_holds(static_cast<int>(r), mapped)) ok = false;
      });
    }
    for (std::size_t f = 0; ok && f < sig.functions().size(); ++f) {
      const int arity = sig.functions()[f].arity;
      for_each_tuple_in_mask(x, arity,
                             (std::uint32_t{1} << (next + 1)) - 1, [&](const std::vector<int>& args) {
        if (!ok) return;
        int v = x.fun_eval(static_cast<int>(f), args);
        if (v > next) return;  // value not yet assigned
        bool decided = true;
        for (int a : args) {
          if (a > next) decided = false;
        }
        if (!decided) return;
        std::vector<int> margs(args.size());
        for (std::size_t i = 0; i < args.size(); ++i) margs[i] = map[static_cast<std::size_t>(args[i])];
        if (y.fun_eval(static_cast<int>(f), margs) != map[static_cast<std::size_t>(v)]) ok = false;
      });
    }
    if (ok && extend_iso(x, y, map, used, next + 1)) return true;
    used[static_cast<std::size_t>(img)] = 0;
  }
  map[static_cast<std::size_t>(next)] = -1;
  return false;
}

}  // namespace

std::optional<Morphism> iso_oracle(const StructureRef& x, const StructureRef& y) {
  if (!same_signature(*x->sig(), *y->sig())) {
    throw InvalidArgument("iso_oracle: signatures differ");
  }
  if (x->size() != y->size()) return std::nullopt;
  if (x->size() > 31) throw CapExceeded("iso_oracle: carrier too large");
  std::vector<int> map(static_cast<std::size_t>(x->size()), -1);
  std::vector<char> used(static_cast<std::size_t>(x->size()), 0);
  if (!extend_iso(*x, *y, map, used, 0)) return std::nullopt;
  Morphism f{x, y, std::move(map), "iso_" + x->name() + "_" + y->name()};
  if (classify_morphism(f) != MorphClass::Iso) {
    throw TheoremViolation("iso_oracle produced a non-isomorphism");
  }
  return f;
}

}  // namespace bf
