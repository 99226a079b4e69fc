#include <doctest.h>

#include "backforth/corpus.hpp"
#include "backforth/density.hpp"
#include "backforth/errors.hpp"
#include "backforth/symbolic.hpp"

using namespace bf;

namespace {
const CardToken INF = CardToken::infinite();
CardToken fin(std::uint64_t n) { return CardToken::fin(n); }
}  // namespace

TEST_CASE("card token arithmetic") {
  CHECK(token_minus(INF, 5) == INF);
  CHECK(token_minus(fin(5), 2) == fin(3));
  CHECK_THROWS_AS(token_minus(fin(1), 2), InvalidArgument);
  CHECK(token_plus(INF, 3) == INF);
  CHECK(fin(3) <= INF);
  CHECK_FALSE(INF <= fin(3));
  CHECK(token_min(fin(2), INF) == fin(2));
  CHECK(card_from_string("INF") == INF);
  CHECK(card_from_string("7") == fin(7));
  CHECK_FALSE(card_from_string("x").has_value());
}

TEST_CASE("sym_equivalent follows the size rule") {
  CHECK(sym_equivalent(fin(3), fin(3)));
  CHECK_FALSE(sym_equivalent(fin(2), fin(5)));
  CHECK(sym_equivalent(INF, INF));
  CHECK_FALSE(sym_equivalent(fin(4), INF));
  CHECK_FALSE(sym_equivalent(INF, fin(0)));
}

TEST_CASE("sym_density_check basics") {
  SUBCASE("INF vs INF is dense") {
    CHECK(sym_density_check(INF, INF).dense);
  }
  SUBCASE("2 vs 3 fails at the maximally extended span") {
    SymDensityVerdict v = sym_density_check(fin(2), fin(3));
    REQUIRE_FALSE(v.dense);
    REQUIRE(v.counterexample.has_value());
    CHECK(v.counterexample->span_center == 2);  // full on the left
    CHECK(v.counterexample->direction == SymDirection::Forth);
    CHECK(v.counterexample->test_size == 1);
  }
  SUBCASE("empty vs empty is dense via the empty span") {
    CHECK(sym_density_check(fin(0), fin(0)).dense);
  }
  SUBCASE("the verdict always agrees with the rule") {
    std::vector<CardToken> grid;
    for (int n = 0; n <= 6; ++n) grid.push_back(fin(static_cast<std::uint64_t>(n)));
    grid.push_back(INF);
    for (CardToken a : grid) {
      for (CardToken b : grid) {
        CHECK(sym_density_check(a, b).dense == sym_equivalent(a, b));
      }
    }
  }
}

TEST_CASE("sym spans validate their complements") {
  auto s = make_sym_span(fin(5), INF, 3);
  REQUIRE(s.has_value());
  CHECK(s->left_complement == fin(2));
  CHECK(s->right_complement == INF);
  CHECK_FALSE(make_sym_span(fin(2), fin(3), 3).has_value());
}

TEST_CASE("sym_embedding follows the bijective-or-both-infinite rule") {
  CHECK(sym_embedding(INF, INF, false));
  CHECK(sym_embedding(INF, INF, true));
  CHECK_FALSE(sym_embedding(fin(2), fin(3), false));
  CHECK(sym_embedding(fin(4), fin(4), true));
  CHECK_FALSE(sym_embedding(fin(3), INF, false));
  CHECK_THROWS_AS(sym_embedding(fin(3), fin(2), false), InvalidArgument);
}

TEST_CASE("sym_embedding implies sym_equivalent") {
  std::vector<CardToken> grid;
  for (int n = 0; n <= 6; ++n) grid.push_back(fin(static_cast<std::uint64_t>(n)));
  grid.push_back(INF);
  for (CardToken a : grid) {
    for (CardToken b : grid) {
      if (!(a <= b)) continue;
      for (bool bij : {false, true}) {
        if (sym_embedding(a, b, bij)) CHECK(sym_equivalent(a, b));
      }
    }
  }
}

TEST_CASE("sym_chain_colimit basics") {
  CHECK(sym_chain_colimit(SymChain{{fin(1), fin(2), fin(3)}, TailBehavior::StrictlyIncreasing}) ==
        INF);
  CHECK(sym_chain_colimit(SymChain{{fin(3)}, TailBehavior::Constant}) == fin(3));
  CHECK(sym_chain_colimit(SymChain{{INF}, TailBehavior::StrictlyIncreasing}) == INF);
  CHECK_THROWS_AS(sym_chain_colimit(SymChain{{fin(3), fin(1)}, TailBehavior::Constant}),
                  InvalidArgument);
  CHECK_THROWS_AS(sym_chain_colimit(SymChain{{}, TailBehavior::Constant}), InvalidArgument);
}

TEST_CASE("sym chain parsing") {
  SymChain c = sym_chain_from_string("1,2,3,+");
  CHECK(c.prefix.size() == 3);
  CHECK(c.tail == TailBehavior::StrictlyIncreasing);
  CHECK(sym_chain_from_string("INF,=").tail == TailBehavior::Constant);
  CHECK_THROWS_AS(sym_chain_from_string("1,2"), InvalidArgument);
  CHECK_THROWS_AS(sym_chain_from_string("x,+"), InvalidArgument);
}

TEST_CASE("sym_verify_ladder basics") {
  SUBCASE("two all-INF chains") {
    SymChain c{{INF, INF}, TailBehavior::StrictlyIncreasing};
    SymLadderReport r = sym_verify_ladder(c, c);
    CHECK(r.hypothesis_ok);
    CHECK(r.conclusion_ok == true);
  }
  SUBCASE("constant chains at 3") {
    SymChain c{{fin(3), fin(3)}, TailBehavior::Constant};
    SymLadderReport r = sym_verify_ladder(c, c);
    CHECK(r.hypothesis_ok);
    CHECK(r.conclusion_ok == true);
  }
  SUBCASE("growing finite chains fail the hypothesis") {
    SymChain c{{fin(1), fin(2)}, TailBehavior::StrictlyIncreasing};
    SymLadderReport r = sym_verify_ladder(c, c);
    CHECK_FALSE(r.hypothesis_ok);
    CHECK_FALSE(r.conclusion_ok.has_value());
  }
  SUBCASE("mismatched constant chains fail the hypothesis") {
    SymChain a{{fin(3)}, TailBehavior::Constant};
    SymChain b{{fin(5)}, TailBehavior::Constant};
    SymLadderReport r = sym_verify_ladder(a, b);
    CHECK_FALSE(r.hypothesis_ok);
  }
  SUBCASE("a finite chain against an all-INF chain fails the hypothesis") {
    SymChain a{{fin(3)}, TailBehavior::Constant};
    SymChain b{{INF}, TailBehavior::Constant};
    CHECK_FALSE(sym_verify_ladder(a, b).hypothesis_ok);
  }
  SUBCASE("a diverging tail shows up one step past the prefix") {
    SymChain a{{INF}, TailBehavior::Constant};
    SymChain b{{INF}, TailBehavior::StrictlyIncreasing};
    SymLadderReport r = sym_verify_ladder(a, b);
    CHECK(r.hypothesis_ok);  // INF + j stays INF
    CHECK(r.conclusion_ok == true);
  }
}

TEST_CASE("symbolic and concrete equivalence agree on bare sets") {
  for (std::uint64_t m = 0; m <= 5; ++m) {
    for (std::uint64_t n = 0; n <= 5; ++n) {
      const bool concrete = decide_equivalent(corpus::bare_set(static_cast<int>(m)),
                                              corpus::bare_set(static_cast<int>(n)),
                                              CategoryMode::Emb);
      CHECK(concrete == sym_equivalent(fin(m), fin(n)));
    }
  }
}
