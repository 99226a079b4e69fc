#include "backforth/signature.hpp"

#include <set>

#include "backforth/errors.hpp"

namespace bf {

std::string_view to_string(CategoryMode mode) {
  return mode == CategoryMode::Emb ? "emb" : "str";
}

std::optional<CategoryMode> mode_from_string(std::string_view s) {
  if (s == "emb") return CategoryMode::Emb;
  if (s == "str") return CategoryMode::Str;
  return std::nullopt;
}

Signature::Signature(std::string name, std::vector<Symbol> relations,
                     std::vector<Symbol> functions)
    : name_(std::move(name)),
      relations_(std::move(relations)),
      functions_(std::move(functions)) {
  std::set<std::string> seen;
  for (const auto& r : relations_) {
    if (r.arity < 1) {
      throw SemanticError("relation symbol '" + r.name + "' must have arity >= 1");
    }
    if (!seen.insert(r.name).second) {
      throw SemanticError("duplicate symbol name '" + r.name + "' in signature '" + name_ + "'");
    }
  }
  for (const auto& f : functions_) {
    if (f.arity < 0) {
      throw SemanticError("function symbol '" + f.name + "' has negative arity");
    }
    if (!seen.insert(f.name).second) {
      throw SemanticError("duplicate symbol name '" + f.name + "' in signature '" + name_ + "'");
    }
  }
}

int Signature::max_arity() const {
  int m = 0;
  for (const auto& r : relations_) m = std::max(m, r.arity);
  for (const auto& f : functions_) m = std::max(m, f.arity);
  return m;
}

std::optional<int> Signature::relation_index(std::string_view name) const {
  for (std::size_t i = 0; i < relations_.size(); ++i) {
    if (relations_[i].name == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::optional<int> Signature::function_index(std::string_view name) const {
  for (std::size_t i = 0; i < functions_.size(); ++i) {
    if (functions_[i].name == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

bool same_signature(const Signature& a, const Signature& b) {
  if (a.relations().size() != b.relations().size()) return false;
  if (a.functions().size() != b.functions().size()) return false;
  for (std::size_t i = 0; i < a.relations().size(); ++i) {
    if (a.relations()[i].name != b.relations()[i].name) return false;
    if (a.relations()[i].arity != b.relations()[i].arity) return false;
  }
  for (std::size_t i = 0; i < a.functions().size(); ++i) {
    if (a.functions()[i].name != b.functions()[i].name) return false;
    if (a.functions()[i].arity != b.functions()[i].arity) return false;
  }
  return true;
}

}  // namespace bf
