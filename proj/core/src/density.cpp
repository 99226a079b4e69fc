#include "backforth/density.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "backforth/errors.hpp"

namespace bf {

std::string_view to_string(Direction d) {
  return d == Direction::Back ? "back" : "forth";
}

namespace {

struct DensityContext {
  std::vector<TestObject> left_tests;
  std::vector<TestObject> right_tests;
  // Span indices grouped by domain mask and by image mask; within a bucket,
  // spans with larger relation choices come first so that the most
  // extendable candidates are tried early.
  std::vector<std::vector<int>> by_domain;
  std::vector<std::vector<int>> by_image;
  std::uint32_t left_full = 0;
  std::uint32_t right_full = 0;
};

int rel_weight(const Span& s) {
  int w = 0;
  for (const auto& r : s.rels) w += r.count();
  return w;
}

DensityContext make_context(const SpanFamily& family, const Caps& caps) {
  DensityContext ctx;
  ctx.left_tests = enumerate_test_objects_compact(*family.left, family.mode, caps);
  ctx.right_tests = enumerate_test_objects_compact(*family.right, family.mode, caps);
  ctx.left_full = family.left->size() == 0 ? 0 : ((std::uint32_t{1} << family.left->size()) - 1);
  ctx.right_full = family.right->size() == 0 ? 0 : ((std::uint32_t{1} << family.right->size()) - 1);
  ctx.by_domain.assign(ctx.left_full + 1, {});
  ctx.by_image.assign(ctx.right_full + 1, {});
  for (std::size_t i = 0; i < family.spans.size(); ++i) {
    ctx.by_domain[family.spans[i].domain].push_back(static_cast<int>(i));
    ctx.by_image[family.spans[i].image].push_back(static_cast<int>(i));
  }
  if (family.mode == CategoryMode::Str) {
    auto heavier = [&](int a, int b) {
      const int wa = rel_weight(family.spans[static_cast<std::size_t>(a)]);
      const int wb = rel_weight(family.spans[static_cast<std::size_t>(b)]);
      if (wa != wb) return wa > wb;
      return a < b;
    };
    for (auto& bucket : ctx.by_domain) std::sort(bucket.begin(), bucket.end(), heavier);
    for (auto& bucket : ctx.by_image) std::sort(bucket.begin(), bucket.end(), heavier);
  }
  return ctx;
}

bool map_extends(const Span& big, const Span& small, int n) {
  for (int i = 0; i < n; ++i) {
    if ((small.domain >> i) & 1) {
      if (big.map[static_cast<std::size_t>(i)] != small.map[static_cast<std::size_t>(i)]) return false;
    }
  }
  return true;
}

bool rels_contain(const Span& big, const std::vector<TupleSet>& need) {
  for (std::size_t r = 0; r < need.size(); ++r) {
    if (!need[r].subset_of(big.rels[r])) return false;
  }
  return true;
}

// Forth-side relation condition: every chosen tuple of the right-hand test
// object must pull back into the candidate's relation choice.
bool pullback_ok(const SpanFamily& family, const Span& cand, const TestObject& g) {
  if (g.rels.empty()) return true;
  const Signature& sig = *family.left->sig();
  std::array<std::int8_t, kMaxSpanCarrier> inv{};
  inv.fill(-1);
  for (int i = 0; i < family.left->size(); ++i) {
    if ((cand.domain >> i) & 1) inv[static_cast<std::size_t>(cand.map[static_cast<std::size_t>(i)])] = static_cast<std::int8_t>(i);
  }
  for (std::size_t r = 0; r < g.rels.size(); ++r) {
    const int arity = sig.relations()[r].arity;
    for (std::uint32_t code : g.rels[r].codes()) {
      std::vector<int> t = decode_tuple(code, arity, family.right->base());
      std::uint32_t pulled = 0;
      for (int i = 0; i < arity; ++i) {
        pulled = pulled * static_cast<std::uint32_t>(family.left->base()) +
                 static_cast<std::uint32_t>(inv[static_cast<std::size_t>(t[static_cast<std::size_t>(i)])]);
      }
      if (!cand.rels[r].test(pulled)) return false;
    }
  }
  return true;
}

template <typename Alive>
bool extension_exists(const SpanFamily& family, const DensityContext& ctx, const Span& s,
                      const TestObject& g, Direction dir, Alive&& alive) {
  const int n = family.left->size();
  if (dir == Direction::Back) {
    const std::uint32_t need = s.domain | g.mask;
    // Enumerate supersets of `need` inside the left carrier.
    std::uint32_t m = need;
    for (;;) {
      for (int idx : ctx.by_domain[m]) {
        if (!alive(idx)) continue;
        const Span& cand = family.spans[static_cast<std::size_t>(idx)];
        if (!map_extends(cand, s, n)) continue;
        if (family.mode == CategoryMode::Str) {
          if (!rels_contain(cand, s.rels)) continue;
          if (!rels_contain(cand, g.rels)) continue;
        }
        return true;
      }
      if (m == ctx.left_full) break;
      m = (m + 1) | need;
    }
    return false;
  }
  // Forth: candidates indexed by image mask.
  const std::uint32_t need = g.mask;
  std::uint32_t m = need;
  for (;;) {
    for (int idx : ctx.by_image[m]) {
      if (!alive(idx)) continue;
      const Span& cand = family.spans[static_cast<std::size_t>(idx)];
      if ((cand.domain & s.domain) != s.domain) continue;
      if (!map_extends(cand, s, n)) continue;
      if (family.mode == CategoryMode::Str) {
        if (!rels_contain(cand, s.rels)) continue;
        if (!pullback_ok(family, cand, g)) continue;
      }
      return true;
    }
    if (m == ctx.right_full) break;
    m = (m + 1) | need;
  }
  return false;
}

template <typename Alive>
bool survives(const SpanFamily& family, const DensityContext& ctx, const Span& s, Alive&& alive,
              DensityCounterexample* why) {
  for (const TestObject& g : ctx.left_tests) {
    if (!extension_exists(family, ctx, s, g, Direction::Back, alive)) {
      if (why) *why = DensityCounterexample{s, Direction::Back, g};
      return false;
    }
  }
  for (const TestObject& g : ctx.right_tests) {
    if (!extension_exists(family, ctx, s, g, Direction::Forth, alive)) {
      if (why) *why = DensityCounterexample{s, Direction::Forth, g};
      return false;
    }
  }
  return true;
}

void check_family_shape(const SpanFamily& family) {
  if (!family.left || !family.right) throw InvalidArgument("family without objects");
  if (family.mode == CategoryMode::Str && !family.left->sig()->relational()) {
    throw InvalidArgument("str mode is unsupported over signatures with function symbols");
  }
}

}  // namespace

bool has_extension(const SpanFamily& family, const Span& s, const TestObject& g, Direction dir) {
  check_family_shape(family);
  DensityContext ctx = make_context(family, Caps{});
  return extension_exists(family, ctx, s, g, dir, [](int) { return true; });
}

DensityVerdict check_density(const SpanFamily& family, const Caps& caps) {
  check_family_shape(family);
  if (family.spans.empty()) {
    return DensityVerdict{false, std::nullopt};  // fails the non-emptiness clause
  }
  DensityContext ctx = make_context(family, caps);
  auto all = [](int) { return true; };
  for (const Span& s : family.spans) {
    DensityCounterexample why;
    if (!survives(family, ctx, s, all, &why)) {
      return DensityVerdict{false, why};
    }
  }
  return DensityVerdict{true, std::nullopt};
}

SpanFamily greatest_dense_family(const StructureRef& x, const StructureRef& y,
                                 CategoryMode mode, const Caps& caps) {
  SpanFamily family = all_canonical_spans(x, y, mode, caps);
  DensityContext ctx = make_context(family, caps);
  std::vector<char> alive(family.spans.size(), 1);
  auto alive_fn = [&](int i) { return alive[static_cast<std::size_t>(i)] != 0; };
  for (;;) {
    std::vector<int> removed;
    for (std::size_t i = 0; i < family.spans.size(); ++i) {
      if (!alive[i]) continue;
      if (!survives(family, ctx, family.spans[i], alive_fn, nullptr)) {
        removed.push_back(static_cast<int>(i));
      }
    }
    if (removed.empty()) break;
    for (int i : removed) alive[static_cast<std::size_t>(i)] = 0;
  }
  SpanFamily out{x, y, mode, {}};
  for (std::size_t i = 0; i < family.spans.size(); ++i) {
    if (alive[i]) out.spans.push_back(family.spans[i]);
  }
  return out;
}

bool decide_equivalent(const StructureRef& x, const StructureRef& y, CategoryMode mode,
                       const Caps& caps) {
  return !greatest_dense_family(x, y, mode, caps).spans.empty();
}

SpanFamily sieve_closure(const SpanFamily& family, const Caps& caps) {
  check_family_shape(family);
  std::set<Span> seen;
  const int n = family.left->size();
  for (const Span& s : family.spans) {
    // Enumerate subsets of the domain; Emb keeps only function-closed ones.
    std::uint32_t sub = s.domain;
    for (;;) {
      const bool usable = family.mode == CategoryMode::Str || is_closed_mask(*family.left, sub);
      if (usable) {
        Span t;
        t.domain = sub;
        for (int i = 0; i < n; ++i) {
          if ((sub >> i) & 1) {
            t.map[static_cast<std::size_t>(i)] = s.map[static_cast<std::size_t>(i)];
            t.image |= (std::uint32_t{1} << s.map[static_cast<std::size_t>(i)]);
          }
        }
        if (family.mode == CategoryMode::Str) {
          const Signature& sig = *family.left->sig();
          // Restrict the relation choice to tuples inside the sub-domain,
          // then take every subset of it.
          std::vector<std::uint32_t> inside;
          for (std::size_t r = 0; r < s.rels.size(); ++r) {
            const int arity = sig.relations()[r].arity;
            for (std::uint32_t code : s.rels[r].codes()) {
              std::vector<int> tup = decode_tuple(code, arity, family.left->base());
              bool in = true;
              for (int v : tup) {
                if (((sub >> v) & 1) == 0) in = false;
              }
              if (in) inside.push_back(code | (static_cast<std::uint32_t>(r) << 24));
            }
          }
          if (inside.size() >= 25) {
            throw CapExceeded("sieve closure: relation choice space too large");
          }
          for (std::uint32_t pick = 0;; ++pick) {
            Span u = t;
            u.rels.resize(s.rels.size());
            for (std::size_t r = 0; r < s.rels.size(); ++r) {
              u.rels[r] = TupleSet(family.left->base(), sig.relations()[r].arity);
            }
            for (std::size_t b = 0; b < inside.size(); ++b) {
              if ((pick >> b) & 1) {
                u.rels[inside[b] >> 24].set(inside[b] & 0xffffffu);
              }
            }
            seen.insert(std::move(u));
            if (seen.size() > caps.max_spans) {
              throw CapExceeded("sieve closure exceeds the span cap");
            }
            if (pick == (std::uint32_t{1} << inside.size()) - 1) break;
          }
        } else {
          seen.insert(std::move(t));
          if (seen.size() > caps.max_spans) {
            throw CapExceeded("sieve closure exceeds the span cap");
          }
        }
      }
      if (sub == 0) break;
      sub = (sub - 1) & s.domain;
    }
  }
  SpanFamily out{family.left, family.right, family.mode, {seen.begin(), seen.end()}};
  return out;
}

SpanFamily star_compose(const SpanFamily& s_xy, const SpanFamily& s_yz, const Caps& caps) {
  check_family_shape(s_xy);
  check_family_shape(s_yz);
  if (!same_structure(*s_xy.right, *s_yz.left)) {
    throw InvalidArgument("star_compose: middle objects do not match");
  }
  if (s_xy.mode != s_yz.mode) {
    throw InvalidArgument("star_compose: families live in different modes");
  }
  std::set<Span> pullback_set;
  const int n = s_xy.left->size();
  for (const Span& s : s_xy.spans) {
    for (const Span& t : s_yz.spans) {
      Span u;
      for (int i = 0; i < n; ++i) {
        if (((s.domain >> i) & 1) == 0) continue;
        const int mid = s.map[static_cast<std::size_t>(i)];
        if (((t.domain >> mid) & 1) == 0) continue;
        u.domain |= (std::uint32_t{1} << i);
        u.map[static_cast<std::size_t>(i)] = t.map[static_cast<std::size_t>(mid)];
        u.image |= (std::uint32_t{1} << t.map[static_cast<std::size_t>(mid)]);
      }
      if (s_xy.mode == CategoryMode::Str) {
        const Signature& sig = *s_xy.left->sig();
        u.rels.resize(s.rels.size());
        for (std::size_t r = 0; r < s.rels.size(); ++r) {
          const int arity = sig.relations()[r].arity;
          u.rels[r] = TupleSet(s_xy.left->base(), arity);
          for (std::uint32_t code : s.rels[r].codes()) {
            std::vector<int> tup = decode_tuple(code, arity, s_xy.left->base());
            bool in = true;
            for (int v : tup) {
              if (((u.domain >> v) & 1) == 0) in = false;
            }
            if (!in) continue;
            // Keep the tuple when its middle image is chosen by t.
            std::vector<int> mid(tup.size());
            for (std::size_t i = 0; i < tup.size(); ++i) mid[i] = s.map[static_cast<std::size_t>(tup[i])];
            if (t.rels[r].test(encode_tuple(mid, s_yz.left->base()))) {
              u.rels[r].set(code);
            }
          }
        }
      } else {
        // The pullback of function-closed domains along embeddings is
        // function-closed.
        if (!is_closed_mask(*s_xy.left, u.domain)) {
          throw TheoremViolation("pullback center not function-closed");
        }
      }
      pullback_set.insert(std::move(u));
      if (pullback_set.size() > caps.max_spans) {
        throw CapExceeded("star_compose exceeds the span cap");
      }
    }
  }
  SpanFamily pullbacks{s_xy.left, s_yz.right, s_xy.mode,
                       {pullback_set.begin(), pullback_set.end()}};
  return sieve_closure(pullbacks, caps);
}

}  // namespace bf
