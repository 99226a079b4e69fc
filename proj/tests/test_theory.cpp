#include <doctest.h>

#include <random>

#include "backforth/corpus.hpp"
#include "backforth/errors.hpp"
#include "backforth/subobjects.hpp"
#include "backforth/theory.hpp"

using namespace bf;

namespace {

Theory symmetry() {
  return parse_theory("forall x y . E(x,y) -> E(y,x)", corpus::digraph_signature(), "sym");
}

}  // namespace

TEST_CASE("theory parsing covers the sentence forms") {
  auto sig = corpus::digraph_signature();
  SUBCASE("symmetry axiom") {
    Theory t = symmetry();
    REQUIRE(t.sentences.size() == 1);
    CHECK(t.sentences[0].vars == std::vector<std::string>{"x", "y"});
  }
  SUBCASE("tautology with equality") {
    Theory t = parse_theory("forall x . true -> x = x", sig);
    CHECK(t.sentences[0].antecedent.kind == Formula::Kind::True);
    CHECK(t.sentences[0].consequent.kind == Formula::Kind::Eq);
  }
  SUBCASE("irreflexivity via false") {
    Theory t = parse_theory("forall x . E(x,x) -> false", sig);
    CHECK(t.sentences[0].consequent.kind == Formula::Kind::False);
  }
  SUBCASE("and/or nesting") {
    Theory t = parse_theory("forall x y . E(x,y) and E(y,x) -> E(x,x) or E(y,y)", sig);
    CHECK(t.sentences[0].antecedent.kind == Formula::Kind::And);
    CHECK(t.sentences[0].consequent.kind == Formula::Kind::Or);
  }
  SUBCASE("unbound variables are rejected") {
    CHECK_THROWS_AS(parse_theory("forall x . E(x,z) -> true", sig), SemanticError);
  }
  SUBCASE("negation and quantifiers inside the matrix are rejected") {
    CHECK_THROWS_AS(parse_theory("forall x . not E(x,x) -> true", sig), SemanticError);
    CHECK_THROWS_AS(parse_theory("forall x . true -> exists y", sig), SemanticError);
  }
  SUBCASE("terms over function symbols resolve arities") {
    auto grp = group_signature();
    CHECK_NOTHROW(parse_theory("forall x . true -> m(x, inv(x)) = e", grp));
    CHECK_THROWS_AS(parse_theory("forall x . true -> m(x) = e", grp), SemanticError);
  }
}

TEST_CASE("satisfies evaluates all assignments") {
  Theory sym = symmetry();
  SUBCASE("a symmetric digraph is a model") {
    auto m = corpus::digraph(2, {{0, 1}, {1, 0}}, "s");
    CHECK(satisfies(*m, sym).ok);
  }
  SUBCASE("a one-way edge fails with the least witness") {
    auto m = corpus::digraph(2, {{0, 1}}, "a");
    Satisfaction sat = satisfies(*m, sym);
    REQUIRE_FALSE(sat.ok);
    CHECK(sat.sentence == 0);
    CHECK(sat.assignment == std::vector<int>{0, 1});
  }
  SUBCASE("everything models the empty theory") {
    Theory empty = empty_theory(corpus::digraph_signature());
    for (const auto& m : corpus::all_digraphs(2)) CHECK(satisfies(*m, empty).ok);
  }
  SUBCASE("signature mismatch is rejected") {
    CHECK_THROWS_AS(satisfies(*corpus::bare_set(2), sym), InvalidArgument);
  }
}

TEST_CASE("builtin group theories hold on the group corpus") {
  for (const auto& g : corpus::groups_up_to_order8()) {
    CHECK(satisfies(*g, builtin_group_theory()).ok);
  }
  CHECK(satisfies(*corpus::sym3(), builtin_abelian_theory()).ok == false);
  CHECK(satisfies(*corpus::klein_four(), builtin_abelian_theory()).ok);
}

TEST_CASE("image factorization splits a hom through its image") {
  SUBCASE("identity factors as (iso, iso)") {
    auto x = corpus::digraph(2, {{0, 1}}, "x");
    Theory empty = empty_theory(x->sig());
    ImageFactorization fac = image_factorization(identity_morphism(x), empty);
    CHECK(classify_morphism(fac.surjection) == MorphClass::Iso);
    CHECK(classify_morphism(fac.inclusion) == MorphClass::Iso);
    CHECK(same_morphism(compose(fac.inclusion, fac.surjection), identity_morphism(x)));
  }
  SUBCASE("Z/4 onto Z/2") {
    auto z4 = corpus::cyclic_group(4);
    auto z2 = corpus::cyclic_group(2);
    Morphism f{z4, z2, {0, 1, 0, 1}, "mod2"};
    REQUIRE(classify_morphism(f) == MorphClass::Hom);
    ImageFactorization fac = image_factorization(f, builtin_group_theory());
    CHECK(fac.image->size() == 2);
    CHECK(classify_morphism(fac.surjection) == MorphClass::Hom);
    CHECK(classify_morphism(fac.inclusion) == MorphClass::Iso);  // image is all of Z/2
    CHECK(iso_oracle(fac.image, z2).has_value());
    CHECK(same_morphism(compose(fac.inclusion, fac.surjection), f));
  }
  SUBCASE("digraph path onto a loop") {
    auto p = corpus::digraph(2, {{0, 1}}, "p");
    auto loop = corpus::digraph(1, {{0, 0}}, "loop");
    Morphism f{p, loop, {0, 0}, "collapse"};
    Theory empty = empty_theory(p->sig());
    ImageFactorization fac = image_factorization(f, empty);
    CHECK(fac.image->size() == 1);
    CHECK(fac.image->rel_holds(0, std::vector<int>{0, 0}));
  }
  SUBCASE("endpoints must model the theory") {
    auto m = corpus::digraph(2, {{0, 1}}, "a");
    CHECK_THROWS_AS(image_factorization(identity_morphism(m), symmetry()), InvalidArgument);
  }
}

TEST_CASE("images of models of universal theories are models") {
  // Corpus: symmetric digraphs on <= 3 nodes with all homs found by
  // enumeration.
  Theory sym = symmetry();
  std::vector<StructureRef> models;
  for (const auto& g : corpus::all_digraphs(3)) {
    if (satisfies(*g, sym).ok) models.push_back(g);
  }
  REQUIRE(models.size() > 10);
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<std::size_t> pick(0, models.size() - 1);
  int homs_seen = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto& x = models[pick(rng)];
    const auto& y = models[pick(rng)];
    std::uniform_int_distribution<int> elem(0, y->size() - 1);
    Morphism f{x, y, {}, "f"};
    for (int i = 0; i < x->size(); ++i) f.map.push_back(elem(rng));
    if (classify_morphism(f) < MorphClass::Hom) continue;
    ++homs_seen;
    ImageFactorization fac = image_factorization(f, sym);
    CHECK(satisfies(*fac.image, sym).ok);
    CHECK(same_morphism(compose(fac.inclusion, fac.surjection), f));
  }
  CHECK(homs_seen > 20);
}

TEST_CASE("factoring an embedding returns an iso followed by an embedding") {
  auto g = corpus::digraph(3, {{0, 1}}, "g");
  auto h = corpus::digraph(3, {{1, 2}}, "h");
  Morphism f{g, h, {1, 2, 0}, "f"};
  REQUIRE(classify_morphism(f) >= MorphClass::Embedding);
  ImageFactorization fac = image_factorization(f, empty_theory(g->sig()));
  CHECK(classify_morphism(fac.surjection) == MorphClass::Iso);
  CHECK(classify_morphism(fac.inclusion) >= MorphClass::Embedding);
}

TEST_CASE("satisfies is monotone under induced closed substructures") {
  Theory sym = symmetry();
  for (const auto& m : corpus::all_digraphs(3)) {
    if (!satisfies(*m, sym).ok) continue;
    for (const auto& sub : enumerate_test_objects(m, CategoryMode::Emb)) {
      CHECK(satisfies(*sub.object, sym).ok);
    }
  }
}
