#include "backforth/functor.hpp"

#include <algorithm>
#include <numeric>

#include "backforth/errors.hpp"

namespace bf {

void Functor::check_source(const FinStructure& x) const {
  if (!same_signature(*x.sig(), *info().source_sig)) {
    throw InvalidArgument("functor '" + info().name + "': '" + x.name() +
                          "' is outside the source category (signature mismatch)");
  }
}

StructureRef Functor::apply(const StructureRef& x) const {
  check_source(*x);
  return apply_object(x);
}

Morphism Functor::apply(const Morphism& f) const {
  check_source(*f.src);
  check_source(*f.dst);
  if (!is_mode_morphism(f, info().source_mode)) {
    throw InvalidArgument("functor '" + info().name + "': '" + f.name +
                          "' is not a morphism of the source category");
  }
  return apply_morphism(f);
}

namespace {

class IdentityFunctor final : public Functor {
 public:
  IdentityFunctor(SignatureRef sig, CategoryMode mode)
      : Functor(Info{"identity", sig, sig, mode, mode, true, empty_theory(sig)}) {}

 protected:
  StructureRef apply_object(const StructureRef& x) const override { return x; }
  Morphism apply_morphism(const Morphism& f) const override { return f; }
};

class ReductFunctor final : public Functor {
 public:
  ReductFunctor(SignatureRef source, SignatureRef target, std::vector<int> keep_rels,
                std::vector<int> keep_funs, CategoryMode mode)
      : Functor(Info{"reduct", source, target, mode, mode, true, empty_theory(target)}),
        keep_rels_(std::move(keep_rels)),
        keep_funs_(std::move(keep_funs)) {}

 protected:
  StructureRef apply_object(const StructureRef& x) const override {
    std::vector<std::vector<std::vector<int>>> rels;
    for (int r : keep_rels_) rels.push_back(x->rel_tuples_decoded(r));
    std::vector<std::vector<int>> funs;
    for (int f : keep_funs_) funs.push_back(x->fun_table(f));
    return std::make_shared<FinStructure>(info().target_sig, x->name() + "~red", x->size(),
                                          std::move(rels), std::move(funs));
  }
  Morphism apply_morphism(const Morphism& f) const override {
    return Morphism{apply_object(f.src), apply_object(f.dst), f.map, f.name + "~red"};
  }

 private:
  std::vector<int> keep_rels_;
  std::vector<int> keep_funs_;
};

SignatureRef empty_signature() {
  static const SignatureRef sig = std::make_shared<Signature>("set", std::vector<Symbol>{},
                                                              std::vector<Symbol>{});
  return sig;
}

class UnderlyingSetFunctor final : public Functor {
 public:
  UnderlyingSetFunctor(SignatureRef source, CategoryMode mode)
      : Functor(Info{"uset", source, empty_signature(), mode, mode, true,
                     empty_theory(empty_signature())}) {}

 protected:
  StructureRef apply_object(const StructureRef& x) const override {
    return std::make_shared<FinStructure>(info().target_sig, x->name() + "~set", x->size(),
                                          std::vector<std::vector<std::vector<int>>>{},
                                          std::vector<std::vector<int>>{});
  }
  Morphism apply_morphism(const Morphism& f) const override {
    return Morphism{apply_object(f.src), apply_object(f.dst), f.map, f.name + "~set"};
  }
};

// Union-find.
struct UF {
  std::vector<int> parent;
  explicit UF(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int a) {
    while (parent[static_cast<std::size_t>(a)] != a) {
      parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
      a = parent[static_cast<std::size_t>(a)];
    }
    return a;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[static_cast<std::size_t>(b)] = a;  // keep least element as root
    return true;
  }
};

class AbelianizationFunctor final : public Functor {
 public:
  AbelianizationFunctor()
      : Functor(Info{"abelianization", group_signature(), group_signature(), CategoryMode::Emb,
                     CategoryMode::Emb, false, builtin_abelian_theory()}) {}

 protected:
  void check_source(const FinStructure& x) const override {
    Functor::check_source(x);
    if (!satisfies(x, builtin_group_theory()).ok) {
      throw InvalidArgument("abelianization: '" + x.name() + "' is not a group");
    }
  }

  StructureRef apply_object(const StructureRef& x) const override {
    const std::vector<int> cls = congruence_classes(*x);
    const int k = 1 + *std::max_element(cls.begin(), cls.end());
    const int m = x->sig()->function_index("m").value();
    const int inv = x->sig()->function_index("inv").value();
    const int e = x->sig()->function_index("e").value();

    // One representative per class, least element first.
    std::vector<int> rep(static_cast<std::size_t>(k), -1);
    for (int v = x->size() - 1; v >= 0; --v) rep[static_cast<std::size_t>(cls[static_cast<std::size_t>(v)])] = v;

    std::vector<int> mul(static_cast<std::size_t>(k * k));
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) {
        const int args[2] = {rep[static_cast<std::size_t>(a)], rep[static_cast<std::size_t>(b)]};
        mul[static_cast<std::size_t>(a * k + b)] = cls[static_cast<std::size_t>(x->fun_eval(m, args))];
      }
    }
    std::vector<int> invt(static_cast<std::size_t>(k));
    for (int a = 0; a < k; ++a) {
      const int arg[1] = {rep[static_cast<std::size_t>(a)]};
      invt[static_cast<std::size_t>(a)] = cls[static_cast<std::size_t>(x->fun_eval(inv, arg))];
    }
    std::vector<int> unit{cls[static_cast<std::size_t>(x->fun_eval(e, {}))]};

    std::vector<std::vector<int>> funs(3);
    funs[static_cast<std::size_t>(m)] = std::move(mul);
    funs[static_cast<std::size_t>(inv)] = std::move(invt);
    funs[static_cast<std::size_t>(e)] = std::move(unit);
    auto out = std::make_shared<FinStructure>(x->sig(), "ab(" + x->name() + ")", k,
                                              std::vector<std::vector<std::vector<int>>>{},
                                              std::move(funs));
    if (!satisfies(*out, builtin_abelian_theory()).ok) {
      throw TheoremViolation("abelianization produced a non-abelian quotient");
    }
    return out;
  }

  Morphism apply_morphism(const Morphism& f) const override {
    const std::vector<int> src_cls = congruence_classes(*f.src);
    const std::vector<int> dst_cls = congruence_classes(*f.dst);
    StructureRef fx = apply_object(f.src);
    StructureRef fy = apply_object(f.dst);
    std::vector<int> srep(static_cast<std::size_t>(fx->size()), -1);
    for (int v = f.src->size() - 1; v >= 0; --v) srep[static_cast<std::size_t>(src_cls[static_cast<std::size_t>(v)])] = v;
    Morphism out{fx, fy, std::vector<int>(static_cast<std::size_t>(fx->size())), "ab(" + f.name + ")"};
    for (int c = 0; c < fx->size(); ++c) {
      out.map[static_cast<std::size_t>(c)] = dst_cls[static_cast<std::size_t>(f.map[static_cast<std::size_t>(srep[static_cast<std::size_t>(c)])])];
    }
    return out;
  }

 private:
  // Smallest congruence identifying m(g,h) with m(h,g) for all g, h; the
  // quotient is the abelianization.  Classes are numbered by their least
  // element, in carrier order.
  static std::vector<int> congruence_classes(const FinStructure& x) {
    const int n = x.size();
    const int m = x.sig()->function_index("m").value();
    const int inv = x.sig()->function_index("inv").value();
    UF uf(n);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        const int ab[2] = {a, b};
        const int ba[2] = {b, a};
        uf.unite(x.fun_eval(m, ab), x.fun_eval(m, ba));
      }
    }
    // Close under the operations until stable.
    bool changed = true;
    while (changed) {
      changed = false;
      for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
          if (uf.find(a) != uf.find(b)) continue;
          const int ia[1] = {a};
          const int ib[1] = {b};
          if (uf.unite(x.fun_eval(inv, ia), x.fun_eval(inv, ib))) changed = true;
          for (int c = 0; c < n; ++c) {
            const int ac[2] = {a, c};
            const int bc[2] = {b, c};
            const int ca[2] = {c, a};
            const int cb[2] = {c, b};
            if (uf.unite(x.fun_eval(m, ac), x.fun_eval(m, bc))) changed = true;
            if (uf.unite(x.fun_eval(m, ca), x.fun_eval(m, cb))) changed = true;
          }
        }
      }
    }
    // Renumber classes 0..k-1 in order of least element.
    std::vector<int> cls(static_cast<std::size_t>(n), -1);
    int next = 0;
    for (int v = 0; v < n; ++v) {
      const int root = uf.find(v);
      if (cls[static_cast<std::size_t>(root)] < 0) cls[static_cast<std::size_t>(root)] = next++;
      cls[static_cast<std::size_t>(v)] = cls[static_cast<std::size_t>(root)];
    }
    return cls;
  }
};

}  // namespace

std::unique_ptr<Functor> make_identity_functor(SignatureRef sig, CategoryMode mode) {
  return std::make_unique<IdentityFunctor>(std::move(sig), mode);
}

std::unique_ptr<Functor> make_reduct_functor(SignatureRef source,
                                             const std::vector<std::string>& keep,
                                             CategoryMode mode) {
  std::vector<int> keep_rels;
  std::vector<int> keep_funs;
  std::vector<Symbol> rels;
  std::vector<Symbol> funs;
  for (const auto& name : keep) {
    if (auto r = source->relation_index(name)) {
      keep_rels.push_back(*r);
      rels.push_back(source->relations()[static_cast<std::size_t>(*r)]);
    } else if (auto f = source->function_index(name)) {
      keep_funs.push_back(*f);
      funs.push_back(source->functions()[static_cast<std::size_t>(*f)]);
    } else {
      throw InvalidArgument("reduct: unknown symbol '" + name + "'");
    }
  }
  auto target = std::make_shared<Signature>(source->name() + "~red", std::move(rels),
                                            std::move(funs));
  if (mode == CategoryMode::Str && !target->relational()) {
    throw InvalidArgument("reduct: str mode needs a relational target signature");
  }
  return std::make_unique<ReductFunctor>(std::move(source), std::move(target),
                                         std::move(keep_rels), std::move(keep_funs), mode);
}

std::unique_ptr<Functor> make_underlying_set_functor(SignatureRef source, CategoryMode mode) {
  return std::make_unique<UnderlyingSetFunctor>(std::move(source), mode);
}

std::unique_ptr<Functor> make_abelianization_functor() {
  return std::make_unique<AbelianizationFunctor>();
}

SpanFamily transport_direct(const Functor& f, const SpanFamily& family, const Caps& caps) {
  if (!f.info().preserves_monos) {
    throw InvalidArgument("transport_direct: functor '" + f.info().name +
                          "' does not preserve monomorphisms");
  }
  if (family.mode != f.info().source_mode) {
    throw InvalidArgument("transport_direct: family mode does not match the functor source");
  }
  if (!check_density(family, caps).dense) {
    throw InvalidArgument("transport_direct: input family is not dense");
  }
  StructureRef fx = f.apply(family.left);
  StructureRef fy = f.apply(family.right);
  SpanFamily out{fx, fy, f.info().target_mode, {}};
  for (const Span& s : family.spans) {
    SpanLegs legs = materialize_span(family, s);
    StructureRef fu = f.apply(legs.center);
    Morphism fl = f.apply(legs.left_leg);
    Morphism fr = f.apply(legs.right_leg);
    fl.dst = fx;  // identify the recomputed endpoints
    fr.dst = fy;
    fl.src = fu;
    fr.src = fu;
    out.spans.push_back(canonicalize_span(*fx, *fy, out.mode, *fu, fl, fr));
    if (out.spans.size() > caps.max_spans) {
      throw CapExceeded("transport_direct exceeds the span cap");
    }
  }
  sort_unique(out);
  return out;
}

ImageTransportResult transport_image(const Functor& f, const SpanFamily& family,
                                     const Caps& caps) {
  if (!f.info().target_theory) {
    throw InvalidArgument("transport_image: functor '" + f.info().name +
                          "' carries no target theory");
  }
  if (family.mode != f.info().source_mode) {
    throw InvalidArgument("transport_image: family mode does not match the functor source");
  }
  if (!check_density(family, caps).dense) {
    throw InvalidArgument("transport_image: input family is not dense");
  }
  const Theory& theory = *f.info().target_theory;
  StructureRef fx = f.apply(family.left);
  StructureRef fy = f.apply(family.right);
  if (!satisfies(*fx, theory).ok || !satisfies(*fy, theory).ok) {
    throw InvalidArgument("transport_image: functor images are not models of '" + theory.name +
                          "'");
  }
  ImageTransportResult result;
  result.family = SpanFamily{fx, fy, CategoryMode::Emb, {}};
  for (std::size_t i = 0; i < family.spans.size(); ++i) {
    SpanLegs legs = materialize_span(family, family.spans[i]);
    StructureRef fu = f.apply(legs.center);
    Morphism fl = f.apply(legs.left_leg);
    Morphism fr = f.apply(legs.right_leg);
    fl.src = fu;
    fr.src = fu;
    fl.dst = fx;
    fr.dst = fy;
    ImageFactorization left = image_factorization(fl, theory);
    ImageFactorization right = image_factorization(fr, theory);

    ImageCertificate cert;
    cert.span_index = i;
    // w sends F(left-leg)(z) to F(right-leg)(z); well-defined iff the two
    // kernels agree on F(U).
    std::vector<int> w(static_cast<std::size_t>(left.image->size()), -1);
    cert.well_defined = true;
    for (int z = 0; z < fu->size(); ++z) {
      const int u0 = left.surjection.map[static_cast<std::size_t>(z)];
      const int u1 = right.surjection.map[static_cast<std::size_t>(z)];
      if (w[static_cast<std::size_t>(u0)] < 0) {
        w[static_cast<std::size_t>(u0)] = u1;
      } else if (w[static_cast<std::size_t>(u0)] != u1) {
        cert.well_defined = false;
        break;
      }
    }
    if (cert.well_defined) {
      Morphism wm{left.image, right.image, w, "w"};
      cert.is_iso = classify_morphism(wm) == MorphClass::Iso;
      if (cert.is_iso) {
        Morphism right_composite = compose(right.inclusion, wm);
        result.family.spans.push_back(canonicalize_span(*fx, *fy, CategoryMode::Emb,
                                                        *left.image, left.inclusion,
                                                        right_composite));
      }
    }
    result.certificates.push_back(cert);
    if (!cert.well_defined || !cert.is_iso) {
      throw TheoremViolation("transport_image: canonical map failed for span " +
                             std::to_string(i));
    }
  }
  sort_unique(result.family);
  return result;
}

}  // namespace bf
