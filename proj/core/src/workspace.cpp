#include "backforth/workspace.hpp"

#include <set>

#include "backforth/errors.hpp"
#include "lexer.hpp"
#include "theory_parser.hpp"

namespace bf {

using detail::Tok;
using detail::Token;
using detail::TokenStream;

namespace {

const std::set<std::string>& reserved_words() {
  static const std::set<std::string> words{
      "signature", "structure", "morphism", "theory", "chain", "ladder",
      "rel",       "fun",       "size",     "map",    "forall", "components",
      "and",       "or",        "true",     "false"};
  return words;
}

std::string fresh_name(TokenStream& ts, const std::set<std::string>& taken) {
  const Token& t = ts.expect(Tok::Ident, "a name");
  if (reserved_words().count(t.text)) {
    throw ParseError(t.line, t.column, "'" + t.text + "' is a reserved word");
  }
  if (taken.count(t.text)) {
    throw SemanticError("duplicate name '" + t.text + "' at " + std::to_string(t.line) + ":" +
                        std::to_string(t.column));
  }
  return t.text;
}

int parse_nat(TokenStream& ts, const std::string& what) {
  const Token& t = ts.expect(Tok::Number, what);
  long v = std::stol(t.text);
  if (v < 0 || v > 1000000) {
    throw ParseError(t.line, t.column, what + " out of range");
  }
  return static_cast<int>(v);
}

SignatureRef parse_signature_decl(TokenStream& ts, const std::set<std::string>& taken,
                                  std::string* name_out) {
  *name_out = fresh_name(ts, taken);
  ts.expect(Tok::Colon, "':'");
  std::vector<Symbol> rels;
  std::vector<Symbol> funs;
  for (;;) {
    const Token& kw = ts.peek();
    if (kw.kind != Tok::Ident || (kw.text != "rel" && kw.text != "fun")) break;
    ts.next();
    const Token& sym = ts.expect(Tok::Ident, "a symbol name");
    if (reserved_words().count(sym.text)) {
      throw ParseError(sym.line, sym.column, "'" + sym.text + "' is a reserved word");
    }
    ts.expect(Tok::Slash, "'/' before the arity");
    int arity = parse_nat(ts, "arity");
    if (kw.text == "rel") {
      rels.push_back(Symbol{sym.text, arity});
    } else {
      funs.push_back(Symbol{sym.text, arity});
    }
    if (!ts.accept(Tok::Semi)) break;
  }
  return std::make_shared<Signature>(*name_out, std::move(rels), std::move(funs));
}

std::vector<int> parse_flat_table(TokenStream& ts, int size, int arity,
                                  const std::string& fun_name) {
  // Nested brackets, first argument outermost; arity 0 is a one-entry list.
  std::vector<int> out;
  auto parse_level = [&](auto&& self, int depth) -> void {
    if (depth == arity) {
      out.push_back(parse_nat(ts, "a table entry"));
      return;
    }
    const Token& open = ts.expect(Tok::LBracket, "'['");
    int count = 0;
    if (!ts.at(Tok::RBracket)) {
      self(self, depth + 1);
      ++count;
      while (ts.accept(Tok::Comma)) {
        self(self, depth + 1);
        ++count;
      }
    }
    ts.expect(Tok::RBracket, "']'");
    const int expect = depth == 0 && arity == 0 ? 1 : size;
    if (count != expect) {
      throw SemanticError("function '" + fun_name + "': row at " + std::to_string(open.line) +
                          ":" + std::to_string(open.column) + " has " + std::to_string(count) +
                          " entries, expected " + std::to_string(expect));
    }
  };
  if (arity == 0) {
    ts.expect(Tok::LBracket, "'['");
    out.push_back(parse_nat(ts, "the constant value"));
    ts.expect(Tok::RBracket, "']'");
  } else {
    parse_level(parse_level, 0);
  }
  return out;
}

StructureRef parse_structure_decl(TokenStream& ts, const Workspace& ws,
                                  const std::set<std::string>& taken, std::string* name_out) {
  *name_out = fresh_name(ts, taken);
  ts.expect(Tok::Colon, "':'");
  const Token& signame = ts.expect(Tok::Ident, "a signature name");
  auto sig_it = ws.signatures.find(signame.text);
  if (sig_it == ws.signatures.end()) {
    throw SemanticError("undeclared signature '" + signame.text + "' at " +
                        std::to_string(signame.line) + ":" + std::to_string(signame.column));
  }
  const SignatureRef& sig = sig_it->second;
  ts.expect(Tok::Semi, "';'");
  const Token& szkw = ts.expect(Tok::Ident, "'size'");
  if (szkw.text != "size") {
    throw ParseError(szkw.line, szkw.column, "expected 'size'");
  }
  const int size = parse_nat(ts, "the carrier size");

  std::vector<std::vector<std::vector<int>>> rels(sig->relations().size());
  std::vector<std::vector<int>> funs(sig->functions().size());
  std::vector<char> fun_seen(sig->functions().size(), 0);

  while (ts.accept(Tok::Semi)) {
    if (!ts.at(Tok::Ident)) break;
    // Stop when the next token opens a new declaration.
    const std::string& word = ts.peek().text;
    if (word == "signature" || word == "structure" || word == "morphism" || word == "theory" ||
        word == "chain" || word == "ladder") {
      break;
    }
    const Token& sym = ts.next();
    ts.expect(Tok::Equals, "'='");
    if (auto r = sig->relation_index(sym.text)) {
      const int arity = sig->relations()[static_cast<std::size_t>(*r)].arity;
      ts.expect(Tok::LBrace, "'{'");
      std::vector<std::vector<int>>& tuples = rels[static_cast<std::size_t>(*r)];
      while (!ts.at(Tok::RBrace)) {
        ts.expect(Tok::LParen, "'('");
        std::vector<int> tuple;
        tuple.push_back(parse_nat(ts, "a tuple element"));
        while (ts.accept(Tok::Comma)) tuple.push_back(parse_nat(ts, "a tuple element"));
        ts.expect(Tok::RParen, "')'");
        if (static_cast<int>(tuple.size()) != arity) {
          throw SemanticError("relation '" + sym.text + "': tuple of arity " +
                              std::to_string(tuple.size()) + ", expected " +
                              std::to_string(arity));
        }
        tuples.push_back(std::move(tuple));
        if (!ts.accept(Tok::Comma)) break;
      }
      ts.expect(Tok::RBrace, "'}'");
    } else if (auto f = sig->function_index(sym.text)) {
      const int arity = sig->functions()[static_cast<std::size_t>(*f)].arity;
      funs[static_cast<std::size_t>(*f)] = parse_flat_table(ts, size, arity, sym.text);
      fun_seen[static_cast<std::size_t>(*f)] = 1;
    } else {
      throw SemanticError("undeclared symbol '" + sym.text + "' at " + std::to_string(sym.line) +
                          ":" + std::to_string(sym.column) + " in structure '" + *name_out + "'");
    }
  }
  for (std::size_t f = 0; f < fun_seen.size(); ++f) {
    const Symbol& s = sig->functions()[f];
    const bool empty_ok = size == 0 && s.arity > 0;
    if (!fun_seen[f] && !empty_ok) {
      throw SemanticError("structure '" + *name_out + "': function '" + s.name +
                          "' has no (total) table");
    }
  }
  return std::make_shared<FinStructure>(sig, *name_out, size, std::move(rels), std::move(funs));
}

Morphism parse_morphism_decl(TokenStream& ts, const Workspace& ws,
                             const std::set<std::string>& taken, std::string* name_out) {
  *name_out = fresh_name(ts, taken);
  ts.expect(Tok::Colon, "':'");
  const Token& src = ts.expect(Tok::Ident, "a source structure");
  ts.expect(Tok::Arrow, "'->'");
  const Token& dst = ts.expect(Tok::Ident, "a target structure");
  auto si = ws.structures.find(src.text);
  auto di = ws.structures.find(dst.text);
  if (si == ws.structures.end()) {
    throw SemanticError("undeclared structure '" + src.text + "' at " + std::to_string(src.line) +
                        ":" + std::to_string(src.column));
  }
  if (di == ws.structures.end()) {
    throw SemanticError("undeclared structure '" + dst.text + "' at " + std::to_string(dst.line) +
                        ":" + std::to_string(dst.column));
  }
  ts.expect(Tok::Semi, "';'");
  const Token& mapkw = ts.expect(Tok::Ident, "'map'");
  if (mapkw.text != "map") throw ParseError(mapkw.line, mapkw.column, "expected 'map'");
  ts.expect(Tok::LBracket, "'['");
  Morphism m{si->second, di->second, {}, *name_out};
  if (!ts.at(Tok::RBracket)) {
    m.map.push_back(parse_nat(ts, "a map entry"));
    while (ts.accept(Tok::Comma)) m.map.push_back(parse_nat(ts, "a map entry"));
  }
  ts.expect(Tok::RBracket, "']'");
  if (static_cast<int>(m.map.size()) != m.src->size()) {
    throw SemanticError("morphism '" + *name_out + "': map has " + std::to_string(m.map.size()) +
                        " entries for a source of size " + std::to_string(m.src->size()));
  }
  for (int v : m.map) {
    if (v < 0 || v >= m.dst->size()) {
      throw SemanticError("morphism '" + *name_out + "': map value " + std::to_string(v) +
                          " outside the target carrier");
    }
  }
  if (!same_signature(*m.src->sig(), *m.dst->sig())) {
    throw SemanticError("morphism '" + *name_out + "': endpoint signatures differ");
  }
  return m;
}

Theory parse_theory_decl(TokenStream& ts, const Workspace& ws,
                         const std::set<std::string>& taken, std::string* name_out) {
  *name_out = fresh_name(ts, taken);
  ts.expect(Tok::Colon, "':'");
  const Token& signame = ts.expect(Tok::Ident, "a signature name");
  auto sig_it = ws.signatures.find(signame.text);
  if (sig_it == ws.signatures.end()) {
    throw SemanticError("undeclared signature '" + signame.text + "' at " +
                        std::to_string(signame.line) + ":" + std::to_string(signame.column));
  }
  Theory t;
  t.name = *name_out;
  t.sig = sig_it->second;
  ts.expect(Tok::Semi, "';'");
  t.sentences.push_back(detail::parse_sentence(ts, *t.sig));
  while (ts.at(Tok::Semi) && ts.peek(1).kind == Tok::Ident && ts.peek(1).text == "forall") {
    ts.next();
    t.sentences.push_back(detail::parse_sentence(ts, *t.sig));
  }
  return t;
}

ChainDiagram parse_chain_decl(TokenStream& ts, const Workspace& ws,
                              const std::set<std::string>& taken, std::string* name_out) {
  *name_out = fresh_name(ts, taken);
  ts.expect(Tok::Colon, "':'");
  ChainDiagram c;
  c.name = *name_out;
  const Token& first = ts.expect(Tok::Ident, "a structure name");
  auto it = ws.structures.find(first.text);
  if (it == ws.structures.end()) {
    throw SemanticError("undeclared structure '" + first.text + "' at " +
                        std::to_string(first.line) + ":" + std::to_string(first.column));
  }
  c.objects.push_back(it->second);
  while (ts.at(Tok::Dash)) {
    ts.next();
    const Token& mor = ts.expect(Tok::Ident, "a morphism name inside the arrow");
    ts.expect(Tok::Arrow, "'->'");
    const Token& nxt = ts.expect(Tok::Ident, "a structure name");
    auto mi = ws.morphisms.find(mor.text);
    if (mi == ws.morphisms.end()) {
      throw SemanticError("undeclared morphism '" + mor.text + "' at " +
                          std::to_string(mor.line) + ":" + std::to_string(mor.column));
    }
    auto ni = ws.structures.find(nxt.text);
    if (ni == ws.structures.end()) {
      throw SemanticError("undeclared structure '" + nxt.text + "' at " +
                          std::to_string(nxt.line) + ":" + std::to_string(nxt.column));
    }
    if (!same_structure(*mi->second.src, *c.objects.back()) ||
        !same_structure(*mi->second.dst, *ni->second)) {
      throw SemanticError("chain '" + *name_out + "': morphism '" + mor.text +
                          "' does not connect the adjacent structures");
    }
    c.maps.push_back(mi->second);
    c.objects.push_back(ni->second);
  }
  validate_chain(c);
  return c;
}

LadderInstance parse_ladder_decl(TokenStream& ts, const Workspace& ws,
                                 const std::set<std::string>& taken, std::string* name_out) {
  *name_out = fresh_name(ts, taken);
  ts.expect(Tok::Colon, "':'");
  const Token& c1 = ts.expect(Tok::Ident, "a chain name");
  ts.expect(Tok::FatArrow, "'=>'");
  const Token& c2 = ts.expect(Tok::Ident, "a chain name");
  auto i1 = ws.chains.find(c1.text);
  auto i2 = ws.chains.find(c2.text);
  if (i1 == ws.chains.end()) {
    throw SemanticError("undeclared chain '" + c1.text + "' at " + std::to_string(c1.line) + ":" +
                        std::to_string(c1.column));
  }
  if (i2 == ws.chains.end()) {
    throw SemanticError("undeclared chain '" + c2.text + "' at " + std::to_string(c2.line) + ":" +
                        std::to_string(c2.column));
  }
  ts.expect(Tok::Semi, "';'");
  const Token& kw = ts.expect(Tok::Ident, "'components'");
  if (kw.text != "components") throw ParseError(kw.line, kw.column, "expected 'components'");
  ts.expect(Tok::LBracket, "'['");
  LadderInstance l;
  l.name = *name_out;
  l.first = i1->second;
  l.second = i2->second;
  if (!ts.at(Tok::RBracket)) {
    for (;;) {
      const Token& h = ts.expect(Tok::Ident, "a morphism name");
      auto hi = ws.morphisms.find(h.text);
      if (hi == ws.morphisms.end()) {
        throw SemanticError("undeclared morphism '" + h.text + "' at " + std::to_string(h.line) +
                            ":" + std::to_string(h.column));
      }
      l.components.push_back(hi->second);
      if (!ts.accept(Tok::Comma)) break;
    }
  }
  ts.expect(Tok::RBracket, "']'");
  if (l.components.size() != l.first.objects.size()) {
    throw SemanticError("ladder '" + *name_out + "': " + std::to_string(l.components.size()) +
                        " components for " + std::to_string(l.first.objects.size()) + " stages");
  }
  return l;
}

}  // namespace

const StructureRef& Workspace::structure(const std::string& name) const {
  auto it = structures.find(name);
  if (it == structures.end()) throw InvalidArgument("no structure named '" + name + "'");
  return it->second;
}

const Morphism& Workspace::morphism(const std::string& name) const {
  auto it = morphisms.find(name);
  if (it == morphisms.end()) throw InvalidArgument("no morphism named '" + name + "'");
  return it->second;
}

const Theory& Workspace::theory(const std::string& name) const {
  auto it = theories.find(name);
  if (it == theories.end()) throw InvalidArgument("no theory named '" + name + "'");
  return it->second;
}

const ChainDiagram& Workspace::chain(const std::string& name) const {
  auto it = chains.find(name);
  if (it == chains.end()) throw InvalidArgument("no chain named '" + name + "'");
  return it->second;
}

const LadderInstance& Workspace::ladder(const std::string& name) const {
  auto it = ladders.find(name);
  if (it == ladders.end()) throw InvalidArgument("no ladder named '" + name + "'");
  return it->second;
}

Workspace parse_workspace(std::string_view text) {
  TokenStream ts(detail::tokenize(text));
  Workspace ws;
  std::set<std::string> taken;
  while (!ts.at(Tok::End)) {
    if (ts.accept(Tok::Semi)) continue;  // stray separators between items
    const Token& kw = ts.expect(Tok::Ident, "a declaration keyword");
    std::string name;
    if (kw.text == "signature") {
      SignatureRef sig = parse_signature_decl(ts, taken, &name);
      ws.signatures.emplace(name, std::move(sig));
    } else if (kw.text == "structure") {
      StructureRef s = parse_structure_decl(ts, ws, taken, &name);
      ws.structures.emplace(name, std::move(s));
    } else if (kw.text == "morphism") {
      Morphism m = parse_morphism_decl(ts, ws, taken, &name);
      ws.morphisms.emplace(name, std::move(m));
    } else if (kw.text == "theory") {
      Theory t = parse_theory_decl(ts, ws, taken, &name);
      ws.theories.emplace(name, std::move(t));
    } else if (kw.text == "chain") {
      ChainDiagram c = parse_chain_decl(ts, ws, taken, &name);
      ws.chains.emplace(name, std::move(c));
    } else if (kw.text == "ladder") {
      LadderInstance l = parse_ladder_decl(ts, ws, taken, &name);
      ws.ladders.emplace(name, std::move(l));
    } else {
      throw ParseError(kw.line, kw.column, "unknown declaration '" + kw.text + "'");
    }
    taken.insert(name);
  }
  return ws;
}

}  // namespace bf
