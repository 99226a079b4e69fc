#include <doctest.h>

#include <random>

#include "backforth/chain.hpp"
#include "backforth/corpus.hpp"
#include "backforth/errors.hpp"

using namespace bf;

TEST_CASE("colimit_of_chain basics") {
  SUBCASE("an inclusion tower has the last object as colimit") {
    auto a = corpus::bare_set(1, "a");
    auto b = corpus::bare_set(2, "b");
    auto c = corpus::bare_set(3, "c");
    ChainDiagram chain{"t", {a, b, c}, {Morphism{a, b, {0}, "i"}, Morphism{b, c, {0, 1}, "j"}}};
    ChainColimit col = colimit_of_chain(chain, CategoryMode::Emb);
    CHECK(col.object->size() == 3);
    CHECK(col.cocone.size() == 3);
    CHECK(col.cocone[0].map == std::vector<int>{0});
    CHECK(col.cocone[1].map == std::vector<int>{0, 1});
    CHECK(col.cocone[2].map == std::vector<int>{0, 1, 2});
  }
  SUBCASE("a constant chain of identities") {
    auto x = corpus::digraph(2, {{0, 1}}, "x");
    ChainDiagram chain{"k", {x, x}, {identity_morphism(x)}};
    CHECK(colimit_of_chain(chain, CategoryMode::Emb).object->size() == 2);
  }
  SUBCASE("a single object chain") {
    auto x = corpus::bare_set(2, "x");
    ChainDiagram chain{"s", {x}, {}};
    ChainColimit col = colimit_of_chain(chain, CategoryMode::Emb);
    CHECK(col.object.get() == x.get());
    CHECK(col.cocone.size() == 1);
  }
  SUBCASE("non-mono connecting maps are rejected") {
    auto two = corpus::bare_set(2, "two");
    auto one = corpus::bare_set(1, "one");
    ChainDiagram chain{"bad", {two, one}, {Morphism{two, one, {0, 0}, "collapse"}}};
    CHECK_THROWS_AS(colimit_of_chain(chain, CategoryMode::Str), InvalidArgument);
  }
}

TEST_CASE("colimit universal property against competing cocones") {
  auto a = corpus::bare_set(1, "a");
  auto b = corpus::bare_set(2, "b");
  auto e = corpus::bare_set(3, "e");
  ChainDiagram chain{"t", {a, b}, {Morphism{a, b, {1}, "i"}}};
  ChainColimit col = colimit_of_chain(chain, CategoryMode::Emb);
  std::vector<Morphism> good{Morphism{a, e, {2}, "l0"}, Morphism{b, e, {0, 2}, "l1"}};
  CHECK(verify_colimit_universal(chain, col, e, good));
  std::vector<Morphism> bad{Morphism{a, e, {1}, "l0"}, Morphism{b, e, {0, 2}, "l1"}};
  CHECK_FALSE(verify_colimit_universal(chain, col, e, bad));
}

TEST_CASE("verify_ladder basics") {
  auto x = corpus::bare_set(2, "x");
  const Morphism id = identity_morphism(x);
  SUBCASE("constant chains with identity components") {
    LadderInstance l{ChainDiagram{"a", {x, x}, {id}}, ChainDiagram{"b", {x, x}, {id}},
                     {id, id}, "l"};
    LadderReport r = verify_ladder(l, CategoryMode::Emb);
    CHECK(r.hypothesis_ok);
    CHECK(r.conclusion_ok == true);
  }
  SUBCASE("iso chains with iso components") {
    auto c3 = corpus::digraph(3, {{0, 1}, {1, 2}, {2, 0}}, "c3");
    Morphism rot{c3, c3, {1, 2, 0}, "rot"};
    Morphism rot2{c3, c3, {2, 0, 1}, "rot2"};
    // Components h0=rot, h1, h2 follow from naturality.
    Morphism h1 = compose(compose(rot2, rot), invert(rot));
    Morphism h2 = compose(compose(rot, h1), invert(rot2));
    LadderInstance l{ChainDiagram{"a", {c3, c3, c3}, {rot, rot2}},
                     ChainDiagram{"b", {c3, c3, c3}, {rot2, rot}},
                     {rot, h1, h2},
                     "l"};
    LadderReport r = verify_ladder(l, CategoryMode::Emb);
    CHECK(r.hypothesis_ok);
    CHECK(r.conclusion_ok == true);
  }
  SUBCASE("a merging component fails the hypothesis; no conclusion is claimed") {
    auto one = corpus::bare_set(1, "one");
    Morphism collapse{x, one, {0, 0}, "collapse"};
    LadderInstance l{ChainDiagram{"a", {x, x}, {id}},
                     ChainDiagram{"b", {one, one}, {identity_morphism(one)}},
                     {collapse, collapse},
                     "l"};
    LadderReport r = verify_ladder(l, CategoryMode::Str);
    CHECK_FALSE(r.hypothesis_ok);
    CHECK_FALSE(r.conclusion_ok.has_value());
  }
  SUBCASE("naturality violations are malformed instances") {
    Morphism swap{x, x, {1, 0}, "swap"};
    LadderInstance l{ChainDiagram{"a", {x, x}, {id}}, ChainDiagram{"b", {x, x}, {swap}},
                     {id, id}, "l"};
    CHECK_THROWS_AS(verify_ladder(l, CategoryMode::Emb), InvalidArgument);
  }
}

TEST_CASE("verify_smooth_composition basics") {
  SUBCASE("identities compose smoothly") {
    auto x = corpus::bare_set(2, "x");
    ChainDiagram chain{"c", {x, x, x}, {identity_morphism(x), identity_morphism(x)}};
    SmoothReport r = verify_smooth_composition(chain, CategoryMode::Emb);
    CHECK(r.hypothesis_ok);
    CHECK(r.composite_ok == true);
  }
  SUBCASE("iso chains of a 3-cycle") {
    auto c3 = corpus::digraph(3, {{0, 1}, {1, 2}, {2, 0}}, "c3");
    Morphism rot{c3, c3, {1, 2, 0}, "rot"};
    ChainDiagram chain{"c", {c3, c3, c3}, {rot, rot}};
    SmoothReport r = verify_smooth_composition(chain, CategoryMode::Str);
    CHECK(r.hypothesis_ok);
    CHECK(r.composite_ok == true);
  }
  SUBCASE("a non-surjective step is a hypothesis failure") {
    auto two = corpus::bare_set(2, "two");
    auto three = corpus::bare_set(3, "three");
    ChainDiagram chain{"c", {two, three}, {Morphism{two, three, {0, 1}, "incl"}}};
    SmoothReport r = verify_smooth_composition(chain, CategoryMode::Emb);
    CHECK_FALSE(r.hypothesis_ok);
    CHECK_FALSE(r.composite_ok.has_value());
  }
}

TEST_CASE("cocone components embed when the chain does") {
  auto v4 = corpus::klein_four();
  std::mt19937_64 rng(60);
  auto v4b = corpus::random_relabel(v4, rng);
  auto f = iso_oracle(v4, v4b);
  REQUIRE(f);
  ChainDiagram chain{"c", {v4, v4b, v4b}, {*f, identity_morphism(v4b)}};
  ChainColimit col = colimit_of_chain(chain, CategoryMode::Emb);
  for (const auto& leg : col.cocone) {
    CHECK(decide_lambda_embedding(leg, CategoryMode::Emb));
  }
}

TEST_CASE("equivalent stages give equivalent colimits") {
  auto c3 = corpus::digraph(3, {{0, 1}, {1, 2}, {2, 0}}, "c3");
  std::mt19937_64 rng(61);
  auto c3b = corpus::random_relabel(c3, rng);
  Morphism rot{c3, c3, {1, 2, 0}, "rot"};
  ChainDiagram first{"a", {c3, c3}, {rot}};
  ChainDiagram second{"b", {c3b, c3b}, {identity_morphism(c3b)}};
  // Both hypothesis-satisfying; stages are equivalent.
  REQUIRE(decide_equivalent(c3, c3b, CategoryMode::Emb));
  auto col1 = colimit_of_chain(first, CategoryMode::Emb);
  auto col2 = colimit_of_chain(second, CategoryMode::Emb);
  CHECK(decide_equivalent(col1.object, col2.object, CategoryMode::Emb));
}
