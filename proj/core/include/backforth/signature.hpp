#ifndef BACKFORTH_SIGNATURE_HPP
#define BACKFORTH_SIGNATURE_HPP

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bf {

// Which category the calculus runs in.  Emb: morphisms are embeddings, every
// morphism is mono.  Str: morphisms are homomorphisms, monos are the
// injective ones.  Str is only supported over purely relational signatures.
enum class CategoryMode { Emb, Str };

std::string_view to_string(CategoryMode mode);
std::optional<CategoryMode> mode_from_string(std::string_view s);

struct Symbol {
  std::string name;
  int arity = 0;
};

// A single-sorted signature: relation symbols of arity >= 1 and function
// symbols of arity >= 0 (arity 0 = constant).  Symbol names are unique
// across both kinds.
class Signature {
 public:
  Signature(std::string name, std::vector<Symbol> relations,
            std::vector<Symbol> functions);

  const std::string& name() const { return name_; }
  const std::vector<Symbol>& relations() const { return relations_; }
  const std::vector<Symbol>& functions() const { return functions_; }
  bool relational() const { return functions_.empty(); }
  int max_arity() const;

  std::optional<int> relation_index(std::string_view name) const;
  std::optional<int> function_index(std::string_view name) const;

 private:
  std::string name_;
  std::vector<Symbol> relations_;
  std::vector<Symbol> functions_;
};

using SignatureRef = std::shared_ptr<const Signature>;

// Structural equality: same symbol lists in the same order, names ignored
// at the signature level but not at the symbol level.
bool same_signature(const Signature& a, const Signature& b);

}  // namespace bf

#endif
