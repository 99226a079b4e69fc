#include "backforth/symbolic.hpp"

#include <algorithm>
#include <charconv>

#include "backforth/errors.hpp"

namespace bf {

std::string to_string(CardToken t) {
  return t.inf ? "INF" : std::to_string(t.n);
}

std::optional<CardToken> card_from_string(std::string_view s) {
  if (s == "INF" || s == "inf") return CardToken::infinite();
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return CardToken::fin(v);
}

CardToken token_minus(CardToken a, std::uint64_t k) {
  if (a.inf) return a;
  if (k > a.n) throw InvalidArgument("token subtraction underflow");
  return CardToken::fin(a.n - k);
}

CardToken token_plus(CardToken a, std::uint64_t k) {
  return a.inf ? a : CardToken::fin(a.n + k);
}

CardToken token_min(CardToken a, CardToken b) { return a <= b ? a : b; }

std::optional<SymSpan> make_sym_span(CardToken left, CardToken right, std::uint64_t center) {
  const CardToken c = CardToken::fin(center);
  if (!(c <= left) || !(c <= right)) return std::nullopt;
  return SymSpan{center, token_minus(left, center), token_minus(right, center)};
}

bool sym_equivalent(CardToken a, CardToken b) {
  if (a.inf && b.inf) return true;
  return !a.inf && !b.inf && a.n == b.n;
}

namespace {

// Extending the span against a test set of size g on the `from` side: the
// new center must absorb up to min(g, from-complement) fresh elements, all
// of which need room in the `to` complement.
bool extension_exists(const SymSpan& s, std::uint64_t g, SymDirection dir) {
  const CardToken from = dir == SymDirection::Back ? s.left_complement : s.right_complement;
  const CardToken to = dir == SymDirection::Back ? s.right_complement : s.left_complement;
  return token_min(CardToken::fin(g), from) <= to;
}

// Least failing test size against a span, if any: with A = from-complement
// and B = to-complement, failures exist iff A > B, first at g = B + 1.
std::optional<std::uint64_t> least_failing_test(const SymSpan& s, SymDirection dir) {
  const CardToken from = dir == SymDirection::Back ? s.left_complement : s.right_complement;
  const CardToken to = dir == SymDirection::Back ? s.right_complement : s.left_complement;
  if (from <= to) return std::nullopt;
  return to.n + 1;  // `to` is finite here, otherwise from <= to
}

}  // namespace

SymDensityVerdict sym_density_check(CardToken a, CardToken b) {
  // Every center size up to min(a, b) realizes a distinct complement pair
  // when the minimum is finite; with both sides INF the complements do not
  // depend on the center, so probing a fixed range is exhaustive.
  const CardToken limit = token_min(a, b);
  const std::uint64_t top = limit.inf ? 4 : limit.n;
  // Scan from the largest center down: the essential obstruction is the
  // maximally extended span.
  for (std::uint64_t u = top + 1; u-- > 0;) {
    const auto span = make_sym_span(a, b, u);
    if (!span) continue;
    for (SymDirection dir : {SymDirection::Back, SymDirection::Forth}) {
      if (auto g = least_failing_test(*span, dir)) {
        if (!extension_exists(*span, *g, dir)) {
          return SymDensityVerdict{false, SymCounterexample{u, dir, *g}};
        }
      }
    }
  }
  return SymDensityVerdict{true, std::nullopt};
}

bool sym_embedding(CardToken src, CardToken dst, bool bijective) {
  if (!(src <= dst)) {
    throw InvalidArgument("sym_embedding: no injection from " + to_string(src) + " into " +
                          to_string(dst));
  }
  // A bijective map needs equal tokens; an inconsistent flag describes no
  // morphism at all and decides to false.
  return (bijective && src == dst) || (src.inf && dst.inf);
}

CardToken sym_chain_colimit(const SymChain& c) {
  if (c.prefix.empty()) throw InvalidArgument("sym chain has an empty prefix");
  for (std::size_t i = 0; i + 1 < c.prefix.size(); ++i) {
    if (!(c.prefix[i] <= c.prefix[i + 1])) {
      throw InvalidArgument("sym chain prefix is not monotone nondecreasing");
    }
  }
  if (c.tail == TailBehavior::Constant) return c.prefix.back();
  return CardToken::infinite();  // a strictly increasing union is unbounded
}

namespace {

CardToken chain_size_at(const SymChain& c, std::size_t i) {
  if (i < c.prefix.size()) return c.prefix[i];
  const std::uint64_t steps = i - c.prefix.size() + 1;
  return c.tail == TailBehavior::Constant ? c.prefix.back()
                                          : token_plus(c.prefix.back(), steps);
}

bool component_embeds(CardToken s1, CardToken s2, std::optional<bool> bij) {
  if (!(s1 <= s2)) return false;  // no injection at all
  const bool bijective = bij.value_or(s1 == s2 && !s1.inf);
  if (bijective && !(s1 == s2)) return false;  // no such map
  return sym_embedding(s1, s2, bijective);
}

}  // namespace

SymLadderReport sym_verify_ladder(const SymChain& c1, const SymChain& c2,
                                  const std::vector<bool>& bijective) {
  const CardToken col1 = sym_chain_colimit(c1);  // validates c1
  const CardToken col2 = sym_chain_colimit(c2);
  SymLadderReport report;
  // One virtual index past the longer prefix covers every tail case: sizes
  // evolve affinely, so any divergence shows up within one extra step.
  const std::size_t L = std::max(c1.prefix.size(), c2.prefix.size()) + 1;
  for (std::size_t i = 0; i + 1 < L; ++i) {
    for (const SymChain* c : {&c1, &c2}) {
      const CardToken s = chain_size_at(*c, i);
      const CardToken t = chain_size_at(*c, i + 1);
      if (!component_embeds(s, t, std::nullopt)) {
        report.hypothesis_ok = false;
        report.detail = "chain step " + std::to_string(i) + " (" + to_string(s) + " -> " +
                        to_string(t) + ") is not a lambda-embedding";
        return report;
      }
    }
  }
  for (std::size_t i = 0; i < L; ++i) {
    const CardToken s1 = chain_size_at(c1, i);
    const CardToken s2 = chain_size_at(c2, i);
    std::optional<bool> bij;
    if (i < bijective.size()) bij = bijective[i];
    if (!component_embeds(s1, s2, bij)) {
      report.hypothesis_ok = false;
      report.detail = "component " + std::to_string(i) + " (" + to_string(s1) + " -> " +
                      to_string(s2) + ") is not a lambda-embedding";
      return report;
    }
  }
  report.hypothesis_ok = true;
  const bool induced_bijective = col1 == col2 && !col1.inf;
  report.conclusion_ok = sym_embedding(col1, col2, induced_bijective);
  return report;
}

SymChain sym_chain_from_string(std::string_view s) {
  SymChain out;
  std::size_t start = 0;
  std::vector<std::string_view> parts;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ',') {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  if (parts.size() < 2) {
    throw InvalidArgument("sym chain needs at least one size and a tail marker");
  }
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    auto tok = card_from_string(parts[i]);
    if (!tok) throw InvalidArgument("bad cardinal '" + std::string(parts[i]) + "'");
    out.prefix.push_back(*tok);
  }
  if (parts.back() == "+") {
    out.tail = TailBehavior::StrictlyIncreasing;
  } else if (parts.back() == "=") {
    out.tail = TailBehavior::Constant;
  } else {
    throw InvalidArgument("sym chain tail must be '+' or '='");
  }
  return out;
}

}  // namespace bf
