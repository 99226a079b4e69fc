#include "backforth/theory.hpp"

#include <algorithm>
#include <map>

#include "backforth/errors.hpp"
#include "theory_parser.hpp"

namespace bf {

namespace detail {

namespace {

int lookup_var(const std::vector<std::string>& vars, std::string_view name) {
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i] == name) return static_cast<int>(i);
  }
  return -1;
}

Term parse_term(TokenStream& ts, const Signature& sig, const std::vector<std::string>& vars) {
  const Token& t = ts.expect(Tok::Ident, "a term");
  Term out;
  int v = lookup_var(vars, t.text);
  if (v >= 0) {
    out.var = v;
    if (ts.at(Tok::LParen)) {
      throw ParseError(ts.peek().line, ts.peek().column,
                       "variable '" + t.text + "' cannot take arguments");
    }
    return out;
  }
  auto f = sig.function_index(t.text);
  if (!f) {
    throw SemanticError("undeclared symbol '" + t.text + "' at " + std::to_string(t.line) + ":" +
                        std::to_string(t.column) + " (not a variable or function symbol)");
  }
  out.fun = *f;
  const int arity = sig.functions()[static_cast<std::size_t>(*f)].arity;
  if (arity == 0) {
    if (ts.accept(Tok::LParen)) ts.expect(Tok::RParen, "')'");
    return out;
  }
  ts.expect(Tok::LParen, "'(' after function symbol '" + t.text + "'");
  out.args.push_back(parse_term(ts, sig, vars));
  while (ts.accept(Tok::Comma)) out.args.push_back(parse_term(ts, sig, vars));
  ts.expect(Tok::RParen, "')'");
  if (static_cast<int>(out.args.size()) != arity) {
    throw SemanticError("function '" + t.text + "' expects " + std::to_string(arity) +
                        " arguments, got " + std::to_string(out.args.size()));
  }
  return out;
}

Formula parse_formula(TokenStream& ts, const Signature& sig, const std::vector<std::string>& vars);

Formula parse_atom(TokenStream& ts, const Signature& sig, const std::vector<std::string>& vars) {
  if (ts.at(Tok::Ident) && (ts.peek().text == "not" || ts.peek().text == "exists" ||
                            ts.peek().text == "forall")) {
    throw SemanticError("'" + ts.peek().text +
                        "' is not allowed inside a sentence matrix (only positive "
                        "quantifier-free formulas)");
  }
  if (ts.at(Tok::Ident) && ts.peek().text == "true") {
    ts.next();
    Formula f;
    f.kind = Formula::Kind::True;
    return f;
  }
  if (ts.at(Tok::Ident) && ts.peek().text == "false") {
    ts.next();
    Formula f;
    f.kind = Formula::Kind::False;
    return f;
  }
  if (ts.accept(Tok::LParen)) {
    Formula f = parse_formula(ts, sig, vars);
    ts.expect(Tok::RParen, "')'");
    return f;
  }
  if (ts.at(Tok::Ident)) {
    // Relation atom if the name is a relation symbol; otherwise an equality
    // between terms.
    auto r = sig.relation_index(ts.peek().text);
    if (r && ts.peek(1).kind == Tok::LParen) {
      const Token& name = ts.next();
      ts.next();  // (
      Formula f;
      f.kind = Formula::Kind::Rel;
      f.rel = *r;
      f.args.push_back(parse_term(ts, sig, vars));
      while (ts.accept(Tok::Comma)) f.args.push_back(parse_term(ts, sig, vars));
      ts.expect(Tok::RParen, "')'");
      const int arity = sig.relations()[static_cast<std::size_t>(*r)].arity;
      if (static_cast<int>(f.args.size()) != arity) {
        throw SemanticError("relation '" + name.text + "' expects " + std::to_string(arity) +
                            " arguments, got " + std::to_string(f.args.size()));
      }
      return f;
    }
    Formula f;
    f.kind = Formula::Kind::Eq;
    f.args.push_back(parse_term(ts, sig, vars));
    ts.expect(Tok::Equals, "'=' between terms");
    f.args.push_back(parse_term(ts, sig, vars));
    return f;
  }
  ts.fail("expected a formula");
}

Formula parse_conjunct(TokenStream& ts, const Signature& sig,
                       const std::vector<std::string>& vars) {
  Formula first = parse_atom(ts, sig, vars);
  if (!(ts.at(Tok::Ident) && ts.peek().text == "and")) return first;
  Formula out;
  out.kind = Formula::Kind::And;
  out.children.push_back(std::move(first));
  while (ts.at(Tok::Ident) && ts.peek().text == "and") {
    ts.next();
    out.children.push_back(parse_atom(ts, sig, vars));
  }
  return out;
}

Formula parse_formula(TokenStream& ts, const Signature& sig,
                      const std::vector<std::string>& vars) {
  Formula first = parse_conjunct(ts, sig, vars);
  if (!(ts.at(Tok::Ident) && ts.peek().text == "or")) return first;
  Formula out;
  out.kind = Formula::Kind::Or;
  out.children.push_back(std::move(first));
  while (ts.at(Tok::Ident) && ts.peek().text == "or") {
    ts.next();
    out.children.push_back(parse_conjunct(ts, sig, vars));
  }
  return out;
}

std::string print_term(const Term& t, const Sentence& s, const Signature& sig) {
  if (t.var >= 0) return s.vars[static_cast<std::size_t>(t.var)];
  std::string out = sig.functions()[static_cast<std::size_t>(t.fun)].name;
  if (!t.args.empty()) {
    out += "(";
    for (std::size_t i = 0; i < t.args.size(); ++i) {
      if (i) out += ",";
      out += print_term(t.args[i], s, sig);
    }
    out += ")";
  }
  return out;
}

std::string print_formula(const Formula& f, const Sentence& s, const Signature& sig) {
  switch (f.kind) {
    case Formula::Kind::True: return "true";
    case Formula::Kind::False: return "false";
    case Formula::Kind::Eq:
      return print_term(f.args[0], s, sig) + " = " + print_term(f.args[1], s, sig);
    case Formula::Kind::Rel: {
      std::string out = sig.relations()[static_cast<std::size_t>(f.rel)].name + "(";
      for (std::size_t i = 0; i < f.args.size(); ++i) {
        if (i) out += ",";
        out += print_term(f.args[i], s, sig);
      }
      return out + ")";
    }
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::string op = f.kind == Formula::Kind::And ? " and " : " or ";
      std::string out = "(";
      for (std::size_t i = 0; i < f.children.size(); ++i) {
        if (i) out += op;
        out += print_formula(f.children[i], s, sig);
      }
      return out + ")";
    }
  }
  return "?";
}

}  // namespace

Sentence parse_sentence(TokenStream& ts, const Signature& sig) {
  const Token& kw = ts.expect(Tok::Ident, "'forall'");
  if (kw.text != "forall") {
    throw ParseError(kw.line, kw.column, "expected 'forall', got '" + kw.text + "'");
  }
  Sentence s;
  while (ts.at(Tok::Ident)) {
    const std::string& v = ts.peek().text;
    if (v == "true" || v == "false" || v == "and" || v == "or") break;
    if (std::find(s.vars.begin(), s.vars.end(), v) != s.vars.end()) {
      throw SemanticError("duplicate bound variable '" + v + "'");
    }
    if (sig.relation_index(v) || sig.function_index(v)) {
      throw SemanticError("bound variable '" + v + "' shadows a signature symbol");
    }
    s.vars.push_back(v);
    ts.next();
  }
  ts.expect(Tok::Dot, "'.' after the variable list");
  s.antecedent = parse_formula(ts, sig, s.vars);
  ts.expect(Tok::Arrow, "'->' between antecedent and consequent");
  s.consequent = parse_formula(ts, sig, s.vars);
  s.text = print_sentence(s, sig);
  return s;
}

std::string print_sentence(const Sentence& s, const Signature& sig) {
  std::string out = "forall";
  for (const auto& v : s.vars) out += " " + v;
  out += " . " + print_formula(s.antecedent, s, sig) + " -> " + print_formula(s.consequent, s, sig);
  return out;
}

}  // namespace detail

Theory parse_theory(std::string_view text, SignatureRef sig, std::string name) {
  detail::TokenStream ts(detail::tokenize(text));
  Theory t;
  t.name = std::move(name);
  t.sig = std::move(sig);
  if (!ts.at(detail::Tok::End)) {
    t.sentences.push_back(detail::parse_sentence(ts, *t.sig));
    while (ts.accept(detail::Tok::Semi)) {
      if (ts.at(detail::Tok::End)) break;
      t.sentences.push_back(detail::parse_sentence(ts, *t.sig));
    }
  }
  if (!ts.at(detail::Tok::End)) ts.fail("trailing input after the last sentence");
  return t;
}

namespace {

int eval_term(const Term& t, const FinStructure& m, const std::vector<int>& assignment) {
  if (t.var >= 0) return assignment[static_cast<std::size_t>(t.var)];
  std::vector<int> args(t.args.size());
  for (std::size_t i = 0; i < t.args.size(); ++i) args[i] = eval_term(t.args[i], m, assignment);
  return m.fun_eval(t.fun, args);
}

bool eval_formula(const Formula& f, const FinStructure& m, const std::vector<int>& assignment) {
  switch (f.kind) {
    case Formula::Kind::True: return true;
    case Formula::Kind::False: return false;
    case Formula::Kind::Eq:
      return eval_term(f.args[0], m, assignment) == eval_term(f.args[1], m, assignment);
    case Formula::Kind::Rel: {
      std::vector<int> args(f.args.size());
      for (std::size_t i = 0; i < f.args.size(); ++i) args[i] = eval_term(f.args[i], m, assignment);
      return m.rel_holds(f.rel, args);
    }
    case Formula::Kind::And:
      for (const auto& c : f.children) {
        if (!eval_formula(c, m, assignment)) return false;
      }
      return true;
    case Formula::Kind::Or:
      for (const auto& c : f.children) {
        if (eval_formula(c, m, assignment)) return true;
      }
      return false;
  }
  return false;
}

}  // namespace

Satisfaction satisfies(const FinStructure& m, const Theory& t) {
  if (!same_signature(*m.sig(), *t.sig)) {
    throw InvalidArgument("satisfies: structure '" + m.name() + "' and theory '" + t.name +
                          "' have different signatures");
  }
  for (std::size_t s = 0; s < t.sentences.size(); ++s) {
    const Sentence& sen = t.sentences[s];
    const std::size_t k = sen.vars.size();
    std::vector<int> assignment(k, 0);
    if (m.size() == 0 && k > 0) continue;  // no assignments, vacuously true
    // Lexicographic order, first variable most significant, so the reported
    // witness is the least failing assignment.
    for (;;) {
      if (eval_formula(sen.antecedent, m, assignment) &&
          !eval_formula(sen.consequent, m, assignment)) {
        return Satisfaction{false, static_cast<int>(s), assignment};
      }
      std::size_t i = k;
      while (i > 0 && assignment[i - 1] == m.size() - 1) {
        assignment[i - 1] = 0;
        --i;
      }
      if (i == 0) break;
      ++assignment[i - 1];
    }
  }
  return Satisfaction{};
}

ImageFactorization image_factor(const Morphism& f) {
  if (classify_morphism(f) < MorphClass::Hom) {
    throw InvalidArgument("image factorization requires a homomorphism");
  }
  std::uint32_t image_mask = 0;
  if (f.dst->size() > 31) throw CapExceeded("image factorization: carrier too large");
  for (int v : f.map) image_mask |= (std::uint32_t{1} << v);

  // Target-side induced substructure on the image.
  std::vector<int> elems;
  for (int i = 0; i < f.dst->size(); ++i) {
    if ((image_mask >> i) & 1) elems.push_back(i);
  }
  std::vector<int> local(static_cast<std::size_t>(f.dst->size()), -1);
  for (std::size_t i = 0; i < elems.size(); ++i) local[static_cast<std::size_t>(elems[i])] = static_cast<int>(i);

  const Signature& sig = *f.dst->sig();
  std::vector<std::vector<std::vector<int>>> rels(sig.relations().size());
  for (std::size_t r = 0; r < sig.relations().size(); ++r) {
    const int arity = sig.relations()[r].arity;
    for (std::uint32_t code : f.dst->induced_tuples(static_cast<int>(r), image_mask).codes()) {
      std::vector<int> tuple = decode_tuple(code, arity, f.dst->base());
      for (int& v : tuple) v = local[static_cast<std::size_t>(v)];
      rels[r].push_back(std::move(tuple));
    }
  }
  std::vector<std::vector<int>> funs(sig.functions().size());
  for (std::size_t fi = 0; fi < sig.functions().size(); ++fi) {
    const int arity = sig.functions()[fi].arity;
    const std::size_t n = elems.size();
    std::size_t total = 1;
    for (int i = 0; i < arity; ++i) total *= n;
    std::vector<int> table;
    table.reserve(total);
    std::vector<int> args(static_cast<std::size_t>(arity));
    for (std::size_t k = 0; k < total; ++k) {
      std::size_t rem = k;
      for (int i = arity - 1; i >= 0; --i) {
        args[static_cast<std::size_t>(i)] = elems[rem % n];
        rem /= n;
      }
      int v = f.dst->fun_eval(static_cast<int>(fi), args);
      if (local[static_cast<std::size_t>(v)] < 0) {
        // Image of a hom is always closed under functions.
        throw TheoremViolation("image of a homomorphism not function-closed");
      }
      table.push_back(local[static_cast<std::size_t>(v)]);
    }
    funs[fi] = std::move(table);
  }

  auto image = std::make_shared<FinStructure>(f.dst->sig(), "im(" + f.name + ")",
                                              static_cast<int>(elems.size()), std::move(rels),
                                              std::move(funs));
  Morphism surj{f.src, image, std::vector<int>(f.map.size()), f.name + ".onto"};
  for (std::size_t i = 0; i < f.map.size(); ++i) surj.map[i] = local[static_cast<std::size_t>(f.map[i])];
  Morphism incl{image, f.dst, {}, f.name + ".into"};
  incl.map = elems;
  return ImageFactorization{std::move(image), std::move(surj), std::move(incl)};
}

ImageFactorization image_factorization(const Morphism& f, const Theory& t) {
  if (!satisfies(*f.src, t).ok || !satisfies(*f.dst, t).ok) {
    throw InvalidArgument("image_factorization: endpoints are not models of '" + t.name + "'");
  }
  ImageFactorization out = image_factor(f);
  if (!satisfies(*out.image, t).ok) {
    throw TheoremViolation("image of a model of the universal theory '" + t.name +
                           "' fails the theory");
  }
  return out;
}

SignatureRef group_signature() {
  static const SignatureRef sig = std::make_shared<Signature>(
      "group", std::vector<Symbol>{},
      std::vector<Symbol>{{"m", 2}, {"inv", 1}, {"e", 0}});
  return sig;
}

Theory builtin_group_theory() {
  static const Theory t = parse_theory(
      "forall x y z . true -> m(m(x,y),z) = m(x,m(y,z)) ;"
      "forall x . true -> m(e,x) = x ;"
      "forall x . true -> m(x,e) = x ;"
      "forall x . true -> m(x,inv(x)) = e ;"
      "forall x . true -> m(inv(x),x) = e",
      group_signature(), "group");
  return t;
}

Theory builtin_abelian_theory() {
  Theory t = builtin_group_theory();
  Theory comm = parse_theory("forall x y . true -> m(x,y) = m(y,x)", group_signature(), "abelian");
  for (auto& s : comm.sentences) t.sentences.push_back(std::move(s));
  t.name = "abelian";
  return t;
}

Theory empty_theory(SignatureRef sig) {
  Theory t;
  t.name = "empty";
  t.sig = std::move(sig);
  return t;
}

}  // namespace bf
