#ifndef BACKFORTH_FUNCTOR_HPP
#define BACKFORTH_FUNCTOR_HPP

#include <memory>
#include <optional>
#include <string>

#include "backforth/density.hpp"
#include "backforth/theory.hpp"

namespace bf {

// A concrete functor between supported categories.  Built-ins: reduct,
// underlying-set, abelianization, identity.  Custom functors are defined in
// code by subclassing.
class Functor {
 public:
  struct Info {
    std::string name;
    SignatureRef source_sig;
    SignatureRef target_sig;
    CategoryMode source_mode = CategoryMode::Emb;
    CategoryMode target_mode = CategoryMode::Emb;
    bool preserves_monos = false;
    std::optional<Theory> target_theory;  // required for the image route
  };

  virtual ~Functor() = default;

  const Info& info() const { return info_; }

  // Object and morphism actions; both validate source membership.
  StructureRef apply(const StructureRef& x) const;
  Morphism apply(const Morphism& f) const;

 protected:
  explicit Functor(Info info) : info_(std::move(info)) {}

  virtual StructureRef apply_object(const StructureRef& x) const = 0;
  virtual Morphism apply_morphism(const Morphism& f) const = 0;
  // Extra membership conditions beyond the signature (e.g. group axioms).
  virtual void check_source(const FinStructure& x) const;

 private:
  Info info_;
};

std::unique_ptr<Functor> make_identity_functor(SignatureRef sig, CategoryMode mode);
// Keeps the named symbols, forgets the rest.
std::unique_ptr<Functor> make_reduct_functor(SignatureRef source,
                                             const std::vector<std::string>& keep,
                                             CategoryMode mode);
std::unique_ptr<Functor> make_underlying_set_functor(SignatureRef source, CategoryMode mode);
// Finite groups as (m, inv, e)-structures with embeddings; target are
// abelian groups.  Does not preserve monos.
std::unique_ptr<Functor> make_abelianization_functor();

// Push a dense family through a mono-preserving functor span by span.
SpanFamily transport_direct(const Functor& f, const SpanFamily& family, const Caps& caps = {});

// Image-factorization route: for each span, factor both transported legs,
// certify the canonical map between the two images, and emit the factored
// span.  Output spans live in emb mode over the target signature.
struct ImageCertificate {
  std::size_t span_index = 0;
  bool well_defined = false;
  bool is_iso = false;
};

struct ImageTransportResult {
  SpanFamily family;
  std::vector<ImageCertificate> certificates;
};

ImageTransportResult transport_image(const Functor& f, const SpanFamily& family,
                                     const Caps& caps = {});

}  // namespace bf

#endif
