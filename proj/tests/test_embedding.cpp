#include <doctest.h>

#include "backforth/corpus.hpp"
#include "backforth/embedding.hpp"
#include "backforth/errors.hpp"

using namespace bf;

TEST_CASE("check_embedding_condition basics") {
  auto a = corpus::bare_set(2, "A");
  SUBCASE("identity against the greatest family") {
    const SpanFamily greatest = greatest_dense_family(a, a, CategoryMode::Emb);
    const Morphism id = identity_morphism(a);
    EmbeddingVerdict v = check_embedding_condition(id, greatest);
    CHECK(v.ok);
    CHECK(v.witnesses.size() == 4);  // one per subobject
    // Each witness commutes by table: the span covers the test object and
    // agrees with f on it.
    for (const auto& w : v.witnesses) {
      const Span& s = greatest.spans[w.span_index];
      CHECK((s.domain & w.test.mask) == w.test.mask);
      for (int e = 0; e < a->size(); ++e) {
        if ((w.test.mask >> e) & 1) {
          CHECK(s.map[static_cast<std::size_t>(e)] == id.map[static_cast<std::size_t>(e)]);
        }
      }
    }
  }
  SUBCASE("an inclusion into a bigger set is rejected: the greatest family is empty") {
    auto b = corpus::bare_set(2, "B");
    auto one = corpus::bare_set(1, "pt");
    const SpanFamily greatest = greatest_dense_family(one, b, CategoryMode::Emb);
    CHECK(greatest.spans.empty());
    Morphism incl{one, b, {0}, "incl"};
    CHECK_THROWS_AS(check_embedding_condition(incl, greatest), InvalidArgument);
    CHECK_FALSE(decide_lambda_embedding(incl, CategoryMode::Emb));
  }
  SUBCASE("the swap automorphism against all seven spans") {
    const SpanFamily all = all_canonical_spans(a, a, CategoryMode::Emb);
    Morphism swap{a, a, {1, 0}, "swap"};
    CHECK(check_embedding_condition(swap, all).ok);
  }
  SUBCASE("a non-dense family is rejected input") {
    SpanFamily not_dense{a, a, CategoryMode::Emb, {Span{}}};
    CHECK_THROWS_AS(check_embedding_condition(identity_morphism(a), not_dense),
                    InvalidArgument);
  }
}

TEST_CASE("decide_lambda_embedding basics") {
  SUBCASE("isomorphisms embed") {
    auto c3 = corpus::digraph(3, {{0, 1}, {1, 2}, {2, 0}}, "c3");
    Morphism rot{c3, c3, {1, 2, 0}, "rot"};
    CHECK(decide_lambda_embedding(rot, CategoryMode::Emb));
    CHECK(decide_lambda_embedding(rot, CategoryMode::Str));
  }
  SUBCASE("non-surjective embeddings between finite structures do not") {
    auto two = corpus::bare_set(2, "two");
    auto three = corpus::bare_set(3, "three");
    Morphism incl{two, three, {0, 1}, "incl"};
    CHECK_FALSE(decide_lambda_embedding(incl, CategoryMode::Emb));
  }
  SUBCASE("a collapsing hom is not a lambda-embedding (str mode)") {
    auto two = corpus::bare_set(2, "two");
    auto one = corpus::bare_set(1, "one");
    Morphism collapse{two, one, {0, 0}, "collapse"};
    CHECK_FALSE(decide_lambda_embedding(collapse, CategoryMode::Str));
    // In emb mode the map is not even a morphism.
    CHECK_THROWS_AS(decide_lambda_embedding(collapse, CategoryMode::Emb), InvalidArgument);
  }
}

TEST_CASE("check_purity basics") {
  auto a = corpus::bare_set(2, "A");
  SUBCASE("isomorphisms and identities are pure") {
    Morphism swap{a, a, {1, 0}, "swap"};
    CHECK(check_purity(swap, CategoryMode::Emb));
    CHECK(check_purity(identity_morphism(a), CategoryMode::Emb));
  }
  SUBCASE("the singleton inclusion is not pure") {
    auto one = corpus::bare_set(1, "pt");
    Morphism incl{one, a, {0}, "incl"};
    CHECK_FALSE(check_purity(incl, CategoryMode::Emb));
  }
  SUBCASE("non-monos are rejected") {
    auto one = corpus::bare_set(1, "pt");
    Morphism collapse{a, one, {0, 0}, "collapse"};
    CHECK_THROWS_AS(check_purity(collapse, CategoryMode::Str), InvalidArgument);
  }
}

TEST_CASE("lambda-embeddings imply equivalence of the endpoints") {
  auto v4 = corpus::klein_four();
  std::mt19937_64 rng(42);
  auto v4b = corpus::random_relabel(v4, rng);
  auto iso = iso_oracle(v4, v4b);
  REQUIRE(iso.has_value());
  CHECK(decide_lambda_embedding(*iso, CategoryMode::Emb));
  CHECK(decide_equivalent(v4, v4b, CategoryMode::Emb));
}
