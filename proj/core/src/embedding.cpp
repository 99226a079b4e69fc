#include "backforth/embedding.hpp"

#include <algorithm>

#include "backforth/errors.hpp"

namespace bf {

namespace {

bool rels_contain(const Span& big, const std::vector<TupleSet>& need) {
  for (std::size_t r = 0; r < need.size(); ++r) {
    if (!need[r].subset_of(big.rels[r])) return false;
  }
  return true;
}

EmbeddingVerdict run_condition(const Morphism& f, const SpanFamily& family, const Caps& caps) {
  EmbeddingVerdict verdict;
  const auto tests = enumerate_test_objects_compact(*f.src, family.mode, caps);
  const int n = f.src->size();
  for (const TestObject& g : tests) {
    std::optional<std::size_t> found;
    for (std::size_t i = 0; i < family.spans.size(); ++i) {
      const Span& s = family.spans[i];
      if ((s.domain & g.mask) != g.mask) continue;
      bool agrees = true;
      for (int e = 0; e < n && agrees; ++e) {
        if ((g.mask >> e) & 1) {
          if (s.map[static_cast<std::size_t>(e)] != f.map[static_cast<std::size_t>(e)]) agrees = false;
        }
      }
      if (!agrees) continue;
      if (family.mode == CategoryMode::Str && !rels_contain(s, g.rels)) continue;
      found = i;
      break;
    }
    if (!found) {
      verdict.ok = false;
      verdict.failing = g;
      return verdict;
    }
    verdict.witnesses.push_back(EmbeddingWitness{g, *found});
  }
  verdict.ok = true;
  return verdict;
}

}  // namespace

EmbeddingVerdict check_embedding_condition(const Morphism& f, const SpanFamily& family,
                                           const Caps& caps) {
  if (!same_structure(*f.src, *family.left) || !same_structure(*f.dst, *family.right)) {
    throw InvalidArgument("check_embedding_condition: family endpoints do not match f");
  }
  if (!is_mode_morphism(f, family.mode)) {
    throw InvalidArgument("check_embedding_condition: f is not a morphism of the mode");
  }
  DensityVerdict d = check_density(family, caps);
  if (!d.dense) {
    throw InvalidArgument("check_embedding_condition: the family is not dense");
  }
  return run_condition(f, family, caps);
}

EmbeddingVerdict check_embedding_condition_trusted(const Morphism& f, const SpanFamily& family,
                                                   const Caps& caps) {
  if (!same_structure(*f.src, *family.left) || !same_structure(*f.dst, *family.right)) {
    throw InvalidArgument("check_embedding_condition: family endpoints do not match f");
  }
  if (family.spans.empty()) {
    throw InvalidArgument("check_embedding_condition: the family is empty");
  }
  return run_condition(f, family, caps);
}

bool decide_lambda_embedding(const Morphism& f, CategoryMode mode, const Caps& caps) {
  if (!is_mode_morphism(f, mode)) {
    throw InvalidArgument("decide_lambda_embedding: f is not a morphism of " +
                          std::string(to_string(mode)));
  }
  SpanFamily greatest = greatest_dense_family(f.src, f.dst, mode, caps);
  if (greatest.spans.empty()) return false;
  return run_condition(f, greatest, caps).ok;
}

namespace {

// All injective extensions of a fixed partial assignment of GB into X.
template <typename F>
bool some_extension(const std::vector<int>& fixed, const FinStructure& x, F&& accept) {
  const int nb = static_cast<int>(fixed.size());
  std::vector<char> used(static_cast<std::size_t>(x.size()), 0);
  std::vector<int> t = fixed;
  std::vector<int> free_pos;
  for (int i = 0; i < nb; ++i) {
    if (t[static_cast<std::size_t>(i)] >= 0) {
      if (used[static_cast<std::size_t>(t[static_cast<std::size_t>(i)])]) return false;  // fixed part not injective
      used[static_cast<std::size_t>(t[static_cast<std::size_t>(i)])] = 1;
    } else {
      free_pos.push_back(i);
    }
  }
  if (free_pos.empty()) return accept(t);
  std::vector<int> choice(free_pos.size(), -1);
  std::size_t depth = 0;
  for (;;) {
    int start = choice[depth] + 1;
    if (choice[depth] >= 0) {
      used[static_cast<std::size_t>(choice[depth])] = 0;
      t[static_cast<std::size_t>(free_pos[depth])] = -1;
      choice[depth] = -1;
    }
    int pick = -1;
    for (int v = start; v < x.size(); ++v) {
      if (!used[static_cast<std::size_t>(v)]) {
        pick = v;
        break;
      }
    }
    if (pick < 0) {
      if (depth == 0) return false;
      --depth;
      continue;
    }
    choice[depth] = pick;
    used[static_cast<std::size_t>(pick)] = 1;
    t[static_cast<std::size_t>(free_pos[depth])] = pick;
    if (depth + 1 == free_pos.size()) {
      if (accept(t)) return true;
    } else {
      ++depth;
    }
  }
}

}  // namespace

bool check_purity(const Morphism& f, CategoryMode mode, const Caps& caps) {
  if (!is_mode_mono(f, mode)) {
    throw InvalidArgument("check_purity: f is not a monomorphism of the mode");
  }
  // f is injective in both modes; invert it on its image.
  std::vector<int> f_inv(static_cast<std::size_t>(f.dst->size()), -1);
  for (int i = 0; i < f.src->size(); ++i) f_inv[static_cast<std::size_t>(f.map[static_cast<std::size_t>(i)])] = i;

  const auto b_tests = enumerate_test_objects_compact(*f.dst, mode, caps);
  for (const TestObject& tb : b_tests) {
    SubobjectMono b = materialize_subobject(f.dst, tb, mode);
    const auto a_tests = enumerate_test_objects_compact(*b.object, mode, caps);
    for (const TestObject& ta : a_tests) {
      SubobjectMono a = materialize_subobject(b.object, ta, mode);
      // The square forces u = f^-1 . v . g; if that map is missing or not a
      // mono of the mode, there is no square to fill.
      Morphism u{a.object, f.src, std::vector<int>(a.inclusion.map.size()), "u"};
      bool square = true;
      for (std::size_t i = 0; i < a.inclusion.map.size(); ++i) {
        const int y = b.inclusion.map[static_cast<std::size_t>(a.inclusion.map[i])];
        if (f_inv[static_cast<std::size_t>(y)] < 0) {
          square = false;
          break;
        }
        u.map[i] = f_inv[static_cast<std::size_t>(y)];
      }
      if (!square || !is_mode_mono(u, mode)) continue;
      // Search a mono filler t : B -> X with t . g = u.
      std::vector<int> fixed(static_cast<std::size_t>(b.object->size()), -1);
      for (std::size_t i = 0; i < a.inclusion.map.size(); ++i) {
        fixed[static_cast<std::size_t>(a.inclusion.map[i])] = u.map[i];
      }
      const bool filled = some_extension(fixed, *f.src, [&](const std::vector<int>& t) {
        Morphism cand{b.object, f.src, t, "t"};
        return is_mode_mono(cand, mode);
      });
      if (!filled) return false;
    }
  }
  return true;
}

}  // namespace bf
