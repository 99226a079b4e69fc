#include "backforth/structure.hpp"

#include <algorithm>

#include "backforth/errors.hpp"

namespace bf {

namespace {

std::size_t table_size(int size, int arity) {
  std::size_t s = 1;
  for (int i = 0; i < arity; ++i) s *= static_cast<std::size_t>(size);
  return s;
}

}  // namespace

FinStructure::FinStructure(SignatureRef sig, std::string name, int size,
                           std::vector<std::vector<std::vector<int>>> relations,
                           std::vector<std::vector<int>> functions)
    : sig_(std::move(sig)), name_(std::move(name)), size_(size) {
  if (!sig_) throw InvalidArgument("structure '" + name_ + "' has no signature");
  if (size_ < 0) throw SemanticError("structure '" + name_ + "' has negative size");
  if (relations.size() != sig_->relations().size()) {
    throw SemanticError("structure '" + name_ + "': wrong number of relation interpretations");
  }
  if (functions.size() != sig_->functions().size()) {
    throw SemanticError("structure '" + name_ + "': wrong number of function interpretations");
  }

  relations_.resize(relations.size());
  for (std::size_t r = 0; r < relations.size(); ++r) {
    const Symbol& sym = sig_->relations()[r];
    std::vector<std::uint32_t>& enc = relations_[r];
    for (const auto& tuple : relations[r]) {
      if (static_cast<int>(tuple.size()) != sym.arity) {
        throw SemanticError("structure '" + name_ + "': tuple of wrong arity for relation '" +
                            sym.name + "'");
      }
      for (int v : tuple) {
        if (v < 0 || v >= size_) {
          throw SemanticError("structure '" + name_ + "': tuple element " + std::to_string(v) +
                              " outside carrier 0.." + std::to_string(size_ - 1) +
                              " in relation '" + sym.name + "'");
        }
      }
      enc.push_back(encode_tuple(tuple, base()));
    }
    std::sort(enc.begin(), enc.end());
    enc.erase(std::unique(enc.begin(), enc.end()), enc.end());
  }

  functions_ = std::move(functions);
  for (std::size_t f = 0; f < functions_.size(); ++f) {
    const Symbol& sym = sig_->functions()[f];
    const std::size_t expect = table_size(size_, sym.arity);
    if (sym.arity == 0 && size_ == 0) {
      throw SemanticError("structure '" + name_ + "': constant '" + sym.name +
                          "' needs a non-empty carrier");
    }
    if (functions_[f].size() != expect) {
      throw SemanticError("structure '" + name_ + "': function '" + sym.name +
                          "' table has " + std::to_string(functions_[f].size()) +
                          " entries, expected " + std::to_string(expect));
    }
    for (int v : functions_[f]) {
      if (v < 0 || v >= size_) {
        throw SemanticError("structure '" + name_ + "': function '" + sym.name +
                            "' value " + std::to_string(v) + " outside carrier");
      }
    }
  }
}

bool FinStructure::rel_holds(int rel, std::span<const int> args) const {
  return rel_holds_code(rel, encode_tuple(args, base()));
}

bool FinStructure::rel_holds_code(int rel, std::uint32_t code) const {
  const auto& enc = relations_[static_cast<std::size_t>(rel)];
  return std::binary_search(enc.begin(), enc.end(), code);
}

std::vector<std::vector<int>> FinStructure::rel_tuples_decoded(int rel) const {
  const Symbol& sym = sig_->relations()[static_cast<std::size_t>(rel)];
  std::vector<std::vector<int>> out;
  for (std::uint32_t code : relations_[static_cast<std::size_t>(rel)]) {
    out.push_back(decode_tuple(code, sym.arity, base()));
  }
  return out;
}

int FinStructure::fun_eval(int fun, std::span<const int> args) const {
  return functions_[static_cast<std::size_t>(fun)][encode_tuple(args, base())];
}

TupleSet FinStructure::induced_tuples(int rel, std::uint32_t mask) const {
  const Symbol& sym = sig_->relations()[static_cast<std::size_t>(rel)];
  TupleSet out(base(), sym.arity);
  for (std::uint32_t code : relations_[static_cast<std::size_t>(rel)]) {
    std::vector<int> t = decode_tuple(code, sym.arity, base());
    bool inside = true;
    for (int v : t) {
      if (!((mask >> v) & 1)) {
        inside = false;
        break;
      }
    }
    if (inside) out.set(code);
  }
  return out;
}

bool same_structure(const FinStructure& a, const FinStructure& b) {
  if (!same_signature(*a.sig(), *b.sig())) return false;
  if (a.size() != b.size()) return false;
  for (std::size_t r = 0; r < a.sig()->relations().size(); ++r) {
    if (a.rel_tuples(static_cast<int>(r)) != b.rel_tuples(static_cast<int>(r))) return false;
  }
  for (std::size_t f = 0; f < a.sig()->functions().size(); ++f) {
    if (a.fun_table(static_cast<int>(f)) != b.fun_table(static_cast<int>(f))) return false;
  }
  return true;
}

}  // namespace bf
