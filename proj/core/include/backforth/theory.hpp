#ifndef BACKFORTH_THEORY_HPP
#define BACKFORTH_THEORY_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "backforth/morphism.hpp"
#include "backforth/structure.hpp"

namespace bf {

// Terms are variables or function applications.
struct Term {
  int var = -1;             // >= 0 when a variable
  int fun = -1;             // >= 0 when a function symbol
  std::vector<Term> args;
};

// Positive quantifier-free formulas: atoms, equality, finite and/or, true,
// false.  No negation, no quantifiers.
struct Formula {
  enum class Kind { True, False, Rel, Eq, And, Or };
  Kind kind = Kind::True;
  int rel = -1;                    // Kind::Rel
  std::vector<Term> args;          // Kind::Rel (arity terms) or Kind::Eq (2 terms)
  std::vector<Formula> children;   // Kind::And / Kind::Or
};

// forall vars . antecedent -> consequent
struct Sentence {
  std::vector<std::string> vars;
  Formula antecedent;
  Formula consequent;
  std::string text;  // original source, for reports
};

struct Theory {
  std::string name;
  SignatureRef sig;
  std::vector<Sentence> sentences;
};

// Parses a `;`-separated list of sentences over the given signature.
// Throws ParseError / SemanticError.
Theory parse_theory(std::string_view text, SignatureRef sig, std::string name = "theory");

struct Satisfaction {
  bool ok = true;
  int sentence = -1;            // first failing sentence
  std::vector<int> assignment;  // witness assignment for its variables
};

// Direct evaluation of every sentence under all assignments.
Satisfaction satisfies(const FinStructure& m, const Theory& t);

struct ImageFactorization {
  StructureRef image;    // induced substructure of the target on im(f)
  Morphism surjection;   // src ->> image
  Morphism inclusion;    // image >-> dst, an embedding
};

// Factor a homomorphism between T-models through its image.  The image of a
// model of a universal theory is again a model; this is asserted and a
// TheoremViolation would indicate an engine bug.
ImageFactorization image_factorization(const Morphism& f, const Theory& t);

// Same splitting without any theory bookkeeping.
ImageFactorization image_factor(const Morphism& f);

// Built-in axiom sets over the group signature (m/2, inv/1, e/0).
SignatureRef group_signature();
Theory builtin_group_theory();
Theory builtin_abelian_theory();
Theory empty_theory(SignatureRef sig);

}  // namespace bf

#endif
