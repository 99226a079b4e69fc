#include <doctest.h>

#include "backforth/errors.hpp"
#include "backforth/workspace.hpp"

using namespace bf;

TEST_CASE("workspace grammar round trip") {
  const std::string text =
      "# a digraph, a group, and friends\n"
      "signature gph : rel E/2\n"
      "structure X : gph ; size 2 ; E = {(0,1)}\n"
      "structure Y : gph ; size 2 ; E = {(1,0)}\n"
      "morphism swap : X -> Y ; map [1,0]\n"
      "signature grp : fun m/2 ; fun inv/1 ; fun e/0\n"
      "structure G : grp ; size 2 ; m = [[0,1],[1,0]] ; inv = [0,1] ; e = [0]\n"
      "theory sym : gph ; forall x y . E(x,y) -> E(y,x)\n"
      "chain C : X -swap-> Y\n";
  Workspace ws = parse_workspace(text);
  CHECK(ws.signatures.size() == 2);
  CHECK(ws.structures.size() == 3);
  CHECK(ws.morphisms.size() == 1);
  CHECK(ws.theories.size() == 1);
  CHECK(ws.chains.size() == 1);

  const auto& x = ws.structure("X");
  CHECK(x->size() == 2);
  CHECK(x->rel_holds(0, std::vector<int>{0, 1}));
  CHECK_FALSE(x->rel_holds(0, std::vector<int>{1, 0}));

  const auto& g = ws.structure("G");
  CHECK(g->fun_eval(0, std::vector<int>{1, 1}) == 0);  // 1+1 = 0 in Z/2
  CHECK(g->fun_eval(2, std::vector<int>{}) == 0);

  CHECK(classify_morphism(ws.morphism("swap")) == MorphClass::Iso);
  CHECK(ws.chain("C").objects.size() == 2);
}

TEST_CASE("tuple element outside the carrier is a semantic error") {
  const std::string text =
      "signature gph : rel E/2\n"
      "structure X : gph ; size 2 ; E = {(0,2)}\n";
  CHECK_THROWS_AS(parse_workspace(text), SemanticError);
}

TEST_CASE("syntax errors carry a position") {
  try {
    parse_workspace("signature gph : rel E/2\nstructure X gph");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.column > 1);
  }
}

TEST_CASE("undeclared names are rejected") {
  CHECK_THROWS_AS(parse_workspace("structure X : nosig ; size 1"), SemanticError);
  CHECK_THROWS_AS(parse_workspace("signature s : rel E/2\n"
                                  "structure X : s ; size 1 ; F = {}"),
                  SemanticError);
  CHECK_THROWS_AS(parse_workspace("signature s : rel E/2\n"
                                  "structure X : s ; size 1\n"
                                  "morphism f : X -> Zed ; map [0]"),
                  SemanticError);
}

TEST_CASE("non-total function tables are rejected") {
  const std::string text =
      "signature grp : fun m/2\n"
      "structure G : grp ; size 2 ; m = [[0,1]]\n";
  CHECK_THROWS_AS(parse_workspace(text), SemanticError);
  CHECK_THROWS_AS(parse_workspace("signature grp : fun m/2\nstructure G : grp ; size 2"),
                  SemanticError);
}

TEST_CASE("arity mismatches are rejected") {
  CHECK_THROWS_AS(parse_workspace("signature s : rel E/2\n"
                                  "structure X : s ; size 2 ; E = {(0,1,1)}"),
                  SemanticError);
}

TEST_CASE("morphism maps are validated") {
  const std::string prefix =
      "signature s : rel E/2\n"
      "structure X : s ; size 2\n"
      "structure Y : s ; size 1\n";
  CHECK_THROWS_AS(parse_workspace(prefix + "morphism f : X -> Y ; map [0]"), SemanticError);
  CHECK_THROWS_AS(parse_workspace(prefix + "morphism f : X -> Y ; map [0,4]"), SemanticError);
  CHECK_NOTHROW(parse_workspace(prefix + "morphism f : X -> Y ; map [0,0]"));
}

TEST_CASE("duplicate and reserved names are rejected") {
  CHECK_THROWS_AS(parse_workspace("signature s : rel E/2\nsignature s : rel F/1"),
                  SemanticError);
  CHECK_THROWS_AS(parse_workspace("signature size : rel E/2"), ParseError);
}

TEST_CASE("chains must connect consecutive structures") {
  const std::string text =
      "signature s : rel E/2\n"
      "structure X : s ; size 2\n"
      "structure Y : s ; size 2 ; E = {(0,0)}\n"
      "morphism f : X -> Y ; map [0,1]\n"
      "chain C : Y -f-> X\n";
  CHECK_THROWS_AS(parse_workspace(text), SemanticError);
}

TEST_CASE("ladders parse and validate component counts") {
  const std::string text =
      "signature s : rel E/2\n"
      "structure X : s ; size 2\n"
      "morphism id2 : X -> X ; map [0,1]\n"
      "chain C : X -id2-> X\n"
      "chain D : X -id2-> X\n"
      "ladder L : C => D ; components [id2, id2]\n";
  Workspace ws = parse_workspace(text);
  CHECK(ws.ladder("L").components.size() == 2);
  CHECK_THROWS_AS(parse_workspace(text + "ladder M : C => D ; components [id2]\n"),
                  SemanticError);
}

TEST_CASE("theories take several sentences and stop at the next declaration") {
  Workspace ws = parse_workspace(
      "signature gph : rel E/2\n"
      "theory t : gph ; forall x y . E(x,y) -> E(y,x) ; forall x . E(x,x) -> false\n"
      "structure X : gph ; size 1\n");
  CHECK(ws.theory("t").sentences.size() == 2);
  CHECK(ws.structures.size() == 1);
}

TEST_CASE("empty carriers parse when the signature allows them") {
  Workspace ws = parse_workspace(
      "signature s : rel E/2\n"
      "structure N : s ; size 0\n"
      "structure M : s ; size 0 ; E = {}\n"
      "morphism f : N -> M ; map []\n");
  CHECK(ws.structure("N")->size() == 0);
  CHECK(classify_morphism(ws.morphism("f")) == MorphClass::Iso);
  // ... but constants require one.
  CHECK_THROWS_AS(parse_workspace("signature g : fun e/0\nstructure N : g ; size 0 ; e = [0]"),
                  SemanticError);
}
