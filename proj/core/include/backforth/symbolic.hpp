#ifndef BACKFORTH_SYMBOLIC_HPP
#define BACKFORTH_SYMBOLIC_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bf {

// A finite cardinal or INF ("at least lambda", lambda = omega).  A single
// infinite token suffices: the equivalence rule only consults whether a side
// reaches lambda.
struct CardToken {
  bool inf = false;
  std::uint64_t n = 0;

  static CardToken fin(std::uint64_t v) { return CardToken{false, v}; }
  static CardToken infinite() { return CardToken{true, 0}; }

  bool operator==(const CardToken& o) const {
    return inf == o.inf && (inf || n == o.n);
  }
  bool operator<=(const CardToken& o) const {
    if (o.inf) return true;
    if (inf) return false;
    return n <= o.n;
  }
  bool operator<(const CardToken& o) const { return *this <= o && !(*this == o); }
};

std::string to_string(CardToken t);
std::optional<CardToken> card_from_string(std::string_view s);

// INF - n = INF; finite subtraction requires k <= n.
CardToken token_minus(CardToken a, std::uint64_t k);
CardToken token_plus(CardToken a, std::uint64_t k);
CardToken token_min(CardToken a, CardToken b);

// A finite-center span between symbolic sets, kept as the center size plus
// both complements.
struct SymSpan {
  std::uint64_t center = 0;
  CardToken left_complement;
  CardToken right_complement;
};

// Valid iff center <= both sizes.
std::optional<SymSpan> make_sym_span(CardToken left, CardToken right, std::uint64_t center);

// |X| = |Y| < lambda, or both at least lambda.
bool sym_equivalent(CardToken a, CardToken b);

enum class SymDirection { Back, Forth };

struct SymCounterexample {
  std::uint64_t span_center = 0;
  SymDirection direction = SymDirection::Back;
  std::uint64_t test_size = 0;
};

struct SymDensityVerdict {
  bool dense = false;
  std::optional<SymCounterexample> counterexample;
};

// Back-and-forth over the family of all finite-center spans, in complement
// arithmetic: extending a span of center u against a test set of size g
// needs a center of size u + min(g, complement) with valid complements.
// The reported counterexample is the failing span of largest center.
SymDensityVerdict sym_density_check(CardToken a, CardToken b);

// An injection src -> dst (src <= dst required) is a lambda-embedding iff
// it is bijective or both sides are infinite.
bool sym_embedding(CardToken src, CardToken dst, bool bijective);

enum class TailBehavior { Constant, StrictlyIncreasing };

// A lambda-directed diagram of injections described by a finite prefix of
// sizes and its tail behavior.
struct SymChain {
  std::vector<CardToken> prefix;
  TailBehavior tail = TailBehavior::Constant;
};

// Last prefix size for constant tails, INF for strictly increasing ones.
CardToken sym_chain_colimit(const SymChain& c);

struct SymLadderReport {
  bool hypothesis_ok = false;
  std::optional<bool> conclusion_ok;
  std::string detail;
};

// Component sizes are read off the two chains index by index; an optional
// bijectivity flag per index refines the INF -> INF components (the verdict
// does not depend on it).
SymLadderReport sym_verify_ladder(const SymChain& c1, const SymChain& c2,
                                  const std::vector<bool>& bijective = {});

// Parses "1,2,3,+" / "4,4,=" / "INF,=".
SymChain sym_chain_from_string(std::string_view s);

}  // namespace bf

#endif
