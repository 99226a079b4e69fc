#include <doctest.h>

#include <random>

#include "backforth/corpus.hpp"
#include "backforth/embedding.hpp"
#include "backforth/errors.hpp"
#include "backforth/functor.hpp"
#include "backforth/subobjects.hpp"

using namespace bf;

namespace {

// Independent abelianization oracle: find the commutator subgroup by
// enumeration and build the coset quotient directly.
StructureRef abelianization_oracle(const StructureRef& g) {
  const int n = g->size();
  const int m = g->sig()->function_index("m").value();
  const int inv = g->sig()->function_index("inv").value();
  auto mul = [&](int a, int b) {
    const int args[2] = {a, b};
    return g->fun_eval(m, args);
  };
  auto invv = [&](int a) {
    const int args[1] = {a};
    return g->fun_eval(inv, args);
  };
  // Commutators, then closure under multiplication (finite, so this is the
  // generated subgroup).
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      in[static_cast<std::size_t>(mul(mul(invv(a), invv(b)), mul(a, b)))] = 1;
    }
  }
  bool grew = true;
  while (grew) {
    grew = false;
    for (int a = 0; a < n; ++a) {
      if (!in[static_cast<std::size_t>(a)]) continue;
      for (int b = 0; b < n; ++b) {
        if (!in[static_cast<std::size_t>(b)]) continue;
        if (!in[static_cast<std::size_t>(mul(a, b))]) {
          in[static_cast<std::size_t>(mul(a, b))] = 1;
          grew = true;
        }
      }
    }
  }
  // Left cosets index the quotient.
  std::vector<int> coset(static_cast<std::size_t>(n), -1);
  int classes = 0;
  for (int a = 0; a < n; ++a) {
    if (coset[static_cast<std::size_t>(a)] >= 0) continue;
    for (int h = 0; h < n; ++h) {
      if (in[static_cast<std::size_t>(h)]) coset[static_cast<std::size_t>(mul(a, h))] = classes;
    }
    ++classes;
  }
  std::vector<int> rep(static_cast<std::size_t>(classes), -1);
  for (int a = n - 1; a >= 0; --a) rep[static_cast<std::size_t>(coset[static_cast<std::size_t>(a)])] = a;
  std::vector<int> qmul(static_cast<std::size_t>(classes * classes));
  for (int a = 0; a < classes; ++a) {
    for (int b = 0; b < classes; ++b) {
      qmul[static_cast<std::size_t>(a * classes + b)] =
          coset[static_cast<std::size_t>(mul(rep[static_cast<std::size_t>(a)], rep[static_cast<std::size_t>(b)]))];
    }
  }
  std::vector<int> qinv(static_cast<std::size_t>(classes));
  for (int a = 0; a < classes; ++a) {
    qinv[static_cast<std::size_t>(a)] = coset[static_cast<std::size_t>(invv(rep[static_cast<std::size_t>(a)]))];
  }
  std::vector<int> qe{coset[static_cast<std::size_t>(g->fun_eval(
      g->sig()->function_index("e").value(), {}))]};
  return std::make_shared<FinStructure>(group_signature(), "oracle_ab", classes,
                                        std::vector<std::vector<std::vector<int>>>{},
                                        std::vector<std::vector<int>>{qmul, qinv, qe});
}

}  // namespace

TEST_CASE("abelianization matches the commutator-quotient oracle") {
  auto ab = make_abelianization_functor();
  for (const auto& g : corpus::groups_up_to_order8()) {
    StructureRef got = ab->apply(g);
    StructureRef expected = abelianization_oracle(g);
    CHECK(got->size() == expected->size());
    CHECK(iso_oracle(got, expected).has_value());
  }
  // Frozen sizes for the classics.
  CHECK(ab->apply(corpus::cyclic_group(4))->size() == 4);
  CHECK(ab->apply(corpus::sym3())->size() == 2);
  CHECK(ab->apply(corpus::quaternion8())->size() == 4);
  CHECK(ab->apply(corpus::dihedral8())->size() == 4);
}

TEST_CASE("abelianization rejects non-groups") {
  auto ab = make_abelianization_functor();
  CHECK_THROWS_AS(ab->apply(corpus::bare_set(2)), InvalidArgument);
  std::vector<int> bad_mul{0, 0, 0, 0};
  auto not_group = std::make_shared<FinStructure>(
      group_signature(), "bad", 2, std::vector<std::vector<std::vector<int>>>{},
      std::vector<std::vector<int>>{bad_mul, {0, 1}, {0}});
  CHECK_THROWS_AS(ab->apply(not_group), InvalidArgument);
}

TEST_CASE("reduct and underlying-set actions") {
  auto colored = std::make_shared<FinStructure>(
      corpus::two_rel_signature(), "cg", 3,
      std::vector<std::vector<std::vector<int>>>{{{0, 1}, {1, 2}}, {{0}}},
      std::vector<std::vector<int>>{});
  SUBCASE("reduct keeps the named symbols") {
    auto red = make_reduct_functor(colored->sig(), {"E"}, CategoryMode::Emb);
    StructureRef g = red->apply(colored);
    CHECK(g->sig()->relations().size() == 1);
    CHECK(g->size() == 3);
    CHECK(g->rel_holds(0, std::vector<int>{0, 1}));
  }
  SUBCASE("underlying set forgets everything") {
    auto uset = make_underlying_set_functor(colored->sig(), CategoryMode::Emb);
    StructureRef s = uset->apply(colored);
    CHECK(s->sig()->relations().empty());
    CHECK(s->size() == 3);
  }
  SUBCASE("unknown symbols are rejected") {
    CHECK_THROWS_AS(make_reduct_functor(colored->sig(), {"Z"}, CategoryMode::Emb),
                    InvalidArgument);
  }
}

TEST_CASE("functoriality: identities and composites") {
  auto ab = make_abelianization_functor();
  auto s3 = corpus::sym3();
  std::mt19937_64 rng(7);
  auto s3b = corpus::random_relabel(s3, rng);
  auto s3c = corpus::random_relabel(s3, rng);
  auto f = iso_oracle(s3, s3b);
  auto g = iso_oracle(s3b, s3c);
  REQUIRE(f);
  REQUIRE(g);
  CHECK(same_morphism(ab->apply(identity_morphism(s3)), identity_morphism(ab->apply(s3))));
  CHECK(same_morphism(ab->apply(compose(*g, *f)), compose(ab->apply(*g), ab->apply(*f))));
}

TEST_CASE("transport_direct pushes dense families to dense families") {
  SUBCASE("identity transport returns the same family") {
    auto a = corpus::bare_set(2, "A");
    auto ident = make_identity_functor(a->sig(), CategoryMode::Emb);
    const SpanFamily greatest = greatest_dense_family(a, a, CategoryMode::Emb);
    CHECK(transport_direct(*ident, greatest).spans == greatest.spans);
  }
  SUBCASE("reduct of a colored digraph pair") {
    auto mk = [](const std::string& name, std::vector<std::vector<int>> edges,
                 std::vector<std::vector<int>> colors) {
      return std::make_shared<FinStructure>(
          corpus::two_rel_signature(), name,
          3, std::vector<std::vector<std::vector<int>>>{std::move(edges), std::move(colors)},
          std::vector<std::vector<int>>{});
    };
    auto x = mk("X", {{0, 1}, {1, 2}, {2, 0}}, {{0}});
    auto y = mk("Y", {{1, 2}, {2, 0}, {0, 1}}, {{1}});
    const SpanFamily greatest = greatest_dense_family(x, y, CategoryMode::Emb);
    REQUIRE_FALSE(greatest.spans.empty());
    auto red = make_reduct_functor(x->sig(), {"E"}, CategoryMode::Emb);
    const SpanFamily transported = transport_direct(*red, greatest);
    CHECK(check_density(transported).dense);
  }
  SUBCASE("underlying set of a group family") {
    auto v4 = corpus::klein_four();
    std::mt19937_64 rng(9);
    auto v4b = corpus::random_relabel(v4, rng);
    const SpanFamily greatest = greatest_dense_family(v4, v4b, CategoryMode::Emb);
    auto uset = make_underlying_set_functor(v4->sig(), CategoryMode::Emb);
    const SpanFamily transported = transport_direct(*uset, greatest);
    CHECK(check_density(transported).dense);
    CHECK(transported.left->size() == 4);
  }
  SUBCASE("str-mode reduct keeps relation choices") {
    auto mk = [](const std::string& name, std::vector<std::vector<int>> edges,
                 std::vector<std::vector<int>> colors) {
      return std::make_shared<FinStructure>(
          corpus::two_rel_signature(), name, 2,
          std::vector<std::vector<std::vector<int>>>{std::move(edges), std::move(colors)},
          std::vector<std::vector<int>>{});
    };
    auto x = mk("X", {{0, 1}}, {{0}});
    auto y = mk("Y", {{1, 0}}, {{1}});
    const SpanFamily greatest = greatest_dense_family(x, y, CategoryMode::Str);
    REQUIRE_FALSE(greatest.spans.empty());
    auto red = make_reduct_functor(x->sig(), {"E"}, CategoryMode::Str);
    const SpanFamily transported = transport_direct(*red, greatest);
    CHECK(transported.mode == CategoryMode::Str);
    CHECK(check_density(transported).dense);
    for (const Span& s : transported.spans) {
      CHECK(s.rels.size() == 1);  // only E survives the reduct
    }
  }
  SUBCASE("functors that do not preserve monos are rejected") {
    auto ab = make_abelianization_functor();
    auto s3 = corpus::sym3();
    const SpanFamily greatest = greatest_dense_family(s3, s3, CategoryMode::Emb);
    CHECK_THROWS_AS(transport_direct(*ab, greatest), InvalidArgument);
  }
  SUBCASE("non-dense input is rejected") {
    auto a = corpus::bare_set(2, "A");
    auto ident = make_identity_functor(a->sig(), CategoryMode::Emb);
    SpanFamily junk{a, a, CategoryMode::Emb, {Span{}}};
    CHECK_THROWS_AS(transport_direct(*ident, junk), InvalidArgument);
  }
}

TEST_CASE("transport_image factors spans through their images") {
  SUBCASE("abelianization of the S3 greatest family") {
    auto s3 = corpus::sym3();
    const SpanFamily greatest = greatest_dense_family(s3, s3, CategoryMode::Emb);
    auto ab = make_abelianization_functor();
    ImageTransportResult result = transport_image(*ab, greatest);
    CHECK(result.family.left->size() == 2);
    CHECK(result.family.right->size() == 2);
    for (const auto& cert : result.certificates) {
      CHECK(cert.well_defined);
      CHECK(cert.is_iso);
    }
    CHECK(check_density(result.family).dense);
  }
  SUBCASE("identity functor with the empty theory recovers image factorizations") {
    auto x = corpus::digraph(2, {{0, 1}}, "X");
    auto y = corpus::digraph(2, {{1, 0}}, "Y");
    const SpanFamily str_family = greatest_dense_family(x, y, CategoryMode::Str);
    REQUIRE_FALSE(str_family.spans.empty());
    auto ident = make_identity_functor(x->sig(), CategoryMode::Str);
    ImageTransportResult result = transport_image(*ident, str_family);
    CHECK(result.family.mode == CategoryMode::Emb);
    CHECK(check_density(result.family).dense);
    // The factored spans agree with the emb-mode greatest family here.
    CHECK(result.family.spans == greatest_dense_family(x, y, CategoryMode::Emb).spans);
  }
  SUBCASE("a single identity span maps to a single identity span") {
    auto a = corpus::bare_set(2, "A");
    Span id2;
    id2.domain = 3;
    id2.image = 3;
    id2.map[0] = 0;
    id2.map[1] = 1;
    SpanFamily ids{a, a, CategoryMode::Emb, {id2}};
    REQUIRE(check_density(ids).dense);  // a full-domain span extends everything
    auto ident = make_identity_functor(a->sig(), CategoryMode::Emb);
    ImageTransportResult result = transport_image(*ident, ids);
    REQUIRE(result.family.spans.size() == 1);
    CHECK(result.family.spans == ids.spans);
  }
  SUBCASE("functor without a theory is rejected") {
    auto a = corpus::bare_set(2, "A");
    class NoTheory final : public Functor {
     public:
      explicit NoTheory(SignatureRef sig)
          : Functor(Info{"bare", sig, sig, CategoryMode::Emb, CategoryMode::Emb, true,
                         std::nullopt}) {}

     protected:
      StructureRef apply_object(const StructureRef& x) const override { return x; }
      Morphism apply_morphism(const Morphism& f) const override { return f; }
    };
    NoTheory f(a->sig());
    const SpanFamily greatest = greatest_dense_family(a, a, CategoryMode::Emb);
    CHECK_THROWS_AS(transport_image(f, greatest), InvalidArgument);
  }
}

TEST_CASE("lambda-embeddings survive both transport routes") {
  auto v4 = corpus::klein_four();
  std::mt19937_64 rng(31);
  auto v4b = corpus::random_relabel(v4, rng);
  auto f = iso_oracle(v4, v4b);
  REQUIRE(f);
  REQUIRE(decide_lambda_embedding(*f, CategoryMode::Emb));
  auto uset = make_underlying_set_functor(v4->sig(), CategoryMode::Emb);
  CHECK(decide_lambda_embedding(uset->apply(*f), CategoryMode::Emb));
  auto ab = make_abelianization_functor();
  CHECK(decide_lambda_embedding(ab->apply(*f), CategoryMode::Emb));
}
