#include "backforth/acceptance.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <json.hpp>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "backforth/cli.hpp"
#include "backforth/corpus.hpp"
#include "backforth/errors.hpp"
#include "backforth/functor.hpp"
#include "backforth/serialize.hpp"
#include "backforth/symbolic.hpp"
#include "backforth/workspace.hpp"

namespace bf::acceptance {

namespace {

using corpus::all_digraphs;
using corpus::bare_set;
using corpus::groups_up_to_order8;
using corpus::random_digraph;
using corpus::random_relabel;
using corpus::random_two_rel;

struct Check {
  bool pass = true;
  long cases = 0;
  std::string first_failure;
  std::string note;

  void expect(bool ok, const std::string& what) {
    ++cases;
    if (!ok && pass) {
      pass = false;
      first_failure = what;
    }
  }
  std::string summary() const {
    std::string s = std::to_string(cases) + " cases";
    if (!note.empty()) s += "; " + note;
    if (!pass) s += "; first failure: " + first_failure;
    return s;
  }
};

// Shared pair corpus for the oracle-equivalence and mode-agreement
// criteria.  Deterministic: fixed seeds only.
struct CorpusPair {
  StructureRef left;
  StructureRef right;
  bool relational = false;
};

const std::vector<CorpusPair>& oracle_corpus_pairs() {
  static const std::vector<CorpusPair> cached = [] {
    std::vector<CorpusPair> pairs;
    std::mt19937_64 rng(20260810);

    // All digraphs on <= 2 nodes, exhaustively paired.
    std::vector<StructureRef> small;
    for (int n = 0; n <= 2; ++n) {
      for (const auto& g : all_digraphs(n)) small.push_back(g);
    }
    for (const auto& a : small) {
      for (const auto& b : small) pairs.push_back(CorpusPair{a, b, true});
    }

    // All digraphs on 3 nodes: every one appears, paired with another member
    // of the exhaustive list; every eighth also meets a relabeled copy.
    const auto cubic = all_digraphs(3);
    for (std::size_t i = 0; i < cubic.size(); ++i) {
      pairs.push_back(CorpusPair{cubic[i], cubic[(i + 37) % cubic.size()], true});
      if (i % 8 == 0) {
        pairs.push_back(CorpusPair{cubic[i], random_relabel(cubic[i], rng), true});
      }
    }

    // Seeded sparse digraphs and two-relational structures on <= 5 nodes.
    for (int n = 4; n <= 5; ++n) {
      for (int k = 0; k < 10; ++k) {
        pairs.push_back(
            CorpusPair{random_digraph(n, 0.2, rng), random_digraph(n, 0.2, rng), true});
      }
      for (int k = 0; k < 5; ++k) {
        auto g = random_digraph(n, 0.2, rng);
        pairs.push_back(CorpusPair{g, random_relabel(g, rng), true});
      }
      for (int k = 0; k < 5; ++k) {
        pairs.push_back(
            CorpusPair{random_two_rel(n, 0.15, rng), random_two_rel(n, 0.15, rng), true});
      }
      auto t = random_two_rel(n, 0.15, rng);
      pairs.push_back(CorpusPair{t, random_relabel(t, rng), true});
    }

    // Groups of order <= 8, exhaustively paired (functional signature).
    const auto groups = groups_up_to_order8();
    for (const auto& a : groups) {
      for (const auto& b : groups) pairs.push_back(CorpusPair{a, b, false});
    }
    return pairs;
  }();
  return cached;
}

// Verdict cache shared between criteria 2 and 5.
struct PairVerdicts {
  std::map<std::pair<const FinStructure*, const FinStructure*>, bool> emb;
  std::map<std::pair<const FinStructure*, const FinStructure*>, bool> str;
};

PairVerdicts& verdict_cache() {
  static PairVerdicts cache;
  return cache;
}

bool cached_equivalent(const StructureRef& x, const StructureRef& y, CategoryMode mode) {
  auto& cache = mode == CategoryMode::Emb ? verdict_cache().emb : verdict_cache().str;
  const auto key = std::make_pair(x.get(), y.get());
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const bool v = decide_equivalent(x, y, mode);
  cache.emplace(key, v);
  return v;
}

// --- criterion 1 ---------------------------------------------------------

Check criterion_set_example() {
  Check c;
  std::vector<CardToken> grid;
  for (int n = 0; n <= 6; ++n) grid.push_back(CardToken::fin(static_cast<std::uint64_t>(n)));
  grid.push_back(CardToken::infinite());
  for (const CardToken a : grid) {
    for (const CardToken b : grid) {
      const bool rule = (a.inf && b.inf) || (!a.inf && !b.inf && a.n == b.n);
      c.expect(sym_equivalent(a, b) == rule,
               "sym_equivalent(" + to_string(a) + "," + to_string(b) + ")");
      c.expect(sym_density_check(a, b).dense == rule,
               "sym_density_check(" + to_string(a) + "," + to_string(b) + ")");
    }
  }
  return c;
}

// --- criterion 2 ---------------------------------------------------------

Check criterion_simiso_oracle() {
  Check c;
  for (const CorpusPair& p : oracle_corpus_pairs()) {
    const bool iso = iso_oracle(p.left, p.right).has_value();
    c.expect(cached_equivalent(p.left, p.right, CategoryMode::Emb) == iso,
             "emb verdict vs iso oracle on " + p.left->name() + " / " + p.right->name());
    if (p.relational) {
      c.expect(cached_equivalent(p.left, p.right, CategoryMode::Str) == iso,
               "str verdict vs iso oracle on " + p.left->name() + " / " + p.right->name());
    }
  }
  return c;
}

// --- criterion 3 ---------------------------------------------------------

// Independent oracle: the spans extendable to a full isomorphism, found by
// enumerating all bijections.
std::vector<Span> extendable_spans_oracle(const StructureRef& x, const StructureRef& y) {
  std::vector<Span> out;
  if (x->size() != y->size()) return out;
  std::vector<std::vector<int>> isos;
  std::vector<int> perm(static_cast<std::size_t>(x->size()));
  for (int i = 0; i < x->size(); ++i) perm[static_cast<std::size_t>(i)] = i;
  do {
    Morphism f{x, y, perm, "cand"};
    if (classify_morphism(f) == MorphClass::Iso) isos.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (isos.empty()) return out;
  for (const Span& s : all_canonical_spans(x, y, CategoryMode::Emb).spans) {
    for (const auto& iso : isos) {
      bool extends = true;
      for (int i = 0; i < x->size() && extends; ++i) {
        if ((s.domain >> i) & 1) {
          if (iso[static_cast<std::size_t>(i)] != s.map[static_cast<std::size_t>(i)]) extends = false;
        }
      }
      if (extends) {
        out.push_back(s);
        break;
      }
    }
  }
  return out;
}

Check criterion_greatest_family_oracle() {
  Check c;
  std::mt19937_64 rng(77001);
  std::vector<CorpusPair> pairs;
  for (int a = 0; a <= 4; ++a) {
    for (int b = 0; b <= 4; ++b) pairs.push_back(CorpusPair{bare_set(a), bare_set(b), true});
  }
  std::vector<StructureRef> small;
  for (int n = 0; n <= 2; ++n) {
    for (const auto& g : all_digraphs(n)) small.push_back(g);
  }
  for (const auto& a : small) {
    for (const auto& b : small) pairs.push_back(CorpusPair{a, b, true});
  }
  const auto cubic = all_digraphs(3);
  for (std::size_t i = 0; i < cubic.size(); ++i) {
    pairs.push_back(CorpusPair{cubic[i], cubic[(i + 129) % cubic.size()], true});
    if (i % 8 == 0) {
      pairs.push_back(CorpusPair{cubic[i], random_relabel(cubic[i], rng), true});
    }
  }
  for (const CorpusPair& p : pairs) {
    const SpanFamily greatest = greatest_dense_family(p.left, p.right, CategoryMode::Emb);
    const std::vector<Span> expected = extendable_spans_oracle(p.left, p.right);
    c.expect(greatest.spans == expected,
             "greatest family vs brute force on " + p.left->name() + " / " + p.right->name());
  }
  return c;
}

// --- criterion 4 ---------------------------------------------------------

Check criterion_star_compose() {
  Check c;
  std::mt19937_64 rng(424242);
  struct Triple {
    StructureRef x, y, z;
    CategoryMode mode;
  };
  std::vector<Triple> triples;
  auto add_triple = [&](const StructureRef& x, CategoryMode mode) {
    triples.push_back(Triple{x, random_relabel(x, rng), random_relabel(x, rng), mode});
  };
  for (int n = 1; n <= 4; ++n) add_triple(bare_set(n), CategoryMode::Emb);
  for (int n = 0; n <= 2; ++n) {
    for (const auto& g : all_digraphs(n)) {
      add_triple(g, CategoryMode::Emb);
      add_triple(g, CategoryMode::Str);
    }
  }
  const auto cubic = all_digraphs(3);
  for (std::size_t i = 0; i < cubic.size(); i += 8) add_triple(cubic[i], CategoryMode::Emb);
  for (const auto& g : groups_up_to_order8()) add_triple(g, CategoryMode::Emb);

  long associative = 0;
  for (const Triple& t : triples) {
    const SpanFamily s_xy = greatest_dense_family(t.x, t.y, t.mode);
    const SpanFamily s_yz = greatest_dense_family(t.y, t.z, t.mode);
    const SpanFamily composed = star_compose(s_xy, s_yz);
    c.expect(check_density(composed).dense,
             "star composite not dense on " + t.x->name() + " (" +
                 std::string(to_string(t.mode)) + ")");
    // Associativity over the cycle X -> Y -> Z -> X.
    const SpanFamily s_zx = greatest_dense_family(t.z, t.x, t.mode);
    const SpanFamily lhs = star_compose(star_compose(s_xy, s_yz), s_zx);
    const SpanFamily rhs = star_compose(s_xy, star_compose(s_yz, s_zx));
    c.expect(lhs.spans == rhs.spans, "star associativity on " + t.x->name());
    if (lhs.spans == rhs.spans) ++associative;
  }
  c.note = "associativity reported on " + std::to_string(associative) + "/" +
           std::to_string(triples.size()) + " triples";
  return c;
}

// --- criterion 5 ---------------------------------------------------------

Check criterion_mode_agreement() {
  Check c;
  for (const CorpusPair& p : oracle_corpus_pairs()) {
    if (!p.relational) continue;
    c.expect(cached_equivalent(p.left, p.right, CategoryMode::Emb) ==
                 cached_equivalent(p.left, p.right, CategoryMode::Str),
             "emb/str disagreement on " + p.left->name() + " / " + p.right->name());
  }
  return c;
}

// --- criterion 6 ---------------------------------------------------------

Check criterion_abelianization_transport() {
  Check c;
  std::mt19937_64 rng(99118822);
  auto ab = make_abelianization_functor();
  for (const auto& g : groups_up_to_order8()) {
    for (const StructureRef& other : {g, random_relabel(g, rng)}) {
      const SpanFamily greatest = greatest_dense_family(g, other, CategoryMode::Emb);
      c.expect(!greatest.spans.empty(), "greatest family empty for " + g->name());
      if (greatest.spans.empty()) continue;
      ImageTransportResult result = transport_image(*ab, greatest);
      bool certs = true;
      for (const auto& cert : result.certificates) {
        certs = certs && cert.well_defined && cert.is_iso;
      }
      c.expect(certs, "certificate failure on " + g->name());
      c.expect(check_density(result.family).dense,
               "transported family not dense on " + g->name());
    }
  }
  return c;
}

// --- criterion 7 ---------------------------------------------------------

struct EmbSuiteContext {
  std::map<std::tuple<const FinStructure*, const FinStructure*, CategoryMode>, SpanFamily>
      greatest;

  const SpanFamily& family(const StructureRef& x, const StructureRef& y, CategoryMode mode) {
    const auto key = std::make_tuple(x.get(), y.get(), mode);
    auto it = greatest.find(key);
    if (it == greatest.end()) {
      it = greatest.emplace(key, greatest_dense_family(x, y, mode)).first;
    }
    return it->second;
  }

  bool embeds(const Morphism& f, CategoryMode mode) {
    if (!is_mode_morphism(f, mode)) return false;
    const SpanFamily& fam = family(f.src, f.dst, mode);
    if (fam.spans.empty()) return false;
    return check_embedding_condition_trusted(f, fam).ok;
  }
};

std::vector<Morphism> all_maps(const StructureRef& x, const StructureRef& y) {
  std::vector<Morphism> out;
  const int n = x->size();
  const int m = y->size();
  if (n == 0) {
    out.push_back(Morphism{x, y, {}, "f"});
    return out;
  }
  if (m == 0) return out;
  std::vector<int> map(static_cast<std::size_t>(n), 0);
  for (;;) {
    out.push_back(Morphism{x, y, map, "f"});
    int i = n - 1;
    while (i >= 0 && map[static_cast<std::size_t>(i)] == m - 1) {
      map[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    ++map[static_cast<std::size_t>(i)];
  }
  return out;
}

Check criterion_embedding_suite() {
  Check c;
  EmbSuiteContext ctx;

  // Relational structures run in both modes, functional ones in emb only.
  struct PoolEntry {
    StructureRef x;
    std::vector<CategoryMode> modes;
  };
  const std::vector<CategoryMode> both{CategoryMode::Emb, CategoryMode::Str};
  const std::vector<CategoryMode> emb_only{CategoryMode::Emb};
  std::vector<PoolEntry> pool;
  for (int n = 1; n <= 3; ++n) pool.push_back({bare_set(n), both});
  pool.push_back({corpus::digraph(2, {}, "e2"), both});
  pool.push_back({corpus::digraph(2, {{0, 1}}, "p2"), both});
  pool.push_back({corpus::digraph(1, {{0, 0}}, "loop"), both});
  pool.push_back({corpus::digraph(3, {{0, 1}, {1, 2}, {2, 0}}, "c3"), both});
  pool.push_back({corpus::digraph(3, {{0, 1}, {1, 2}}, "p3"), both});
  pool.push_back({corpus::cyclic_group(2), emb_only});
  pool.push_back({corpus::cyclic_group(3), emb_only});
  pool.push_back({corpus::cyclic_group(4), emb_only});
  pool.push_back({corpus::klein_four(), emb_only});

  // Lemma checks over every map between pool structures sharing a signature.
  for (const auto& [x, modes_x] : pool) {
    for (const auto& [y, modes_y] : pool) {
      if (!same_signature(*x->sig(), *y->sig())) continue;
      for (const CategoryMode mode : modes_x) {
        for (const Morphism& f : all_maps(x, y)) {
          const MorphClass cls = classify_morphism(f);
          if (!is_mode_morphism(f, mode)) continue;
          const bool is_emb = ctx.embeds(f, mode);
          // Monomorphism and finite-rigidity facts in one stroke:
          // a lambda-embedding between finite structures is an isomorphism,
          // and every isomorphism is one.
          c.expect(is_emb == (cls == MorphClass::Iso),
                   "lambda-embedding <-> iso failed between " + x->name() + " and " + y->name());
          if (is_emb) {
            c.expect(cls >= MorphClass::MonoHom, "lambda-embedding not mono");
            c.expect(check_purity(f, mode), "lambda-embedding not pure");
            c.expect(cached_equivalent(x, y, mode), "lambda-embedding without equivalence");
          }
        }
      }
    }
  }

  // Composition closure and two-out-of-three over iso triples.
  for (const auto& [x, modes_x] : pool) {
    for (const auto& [y, modes_y] : pool) {
      if (!same_signature(*x->sig(), *y->sig())) continue;
      for (const auto& [z, modes_z] : pool) {
        if (!same_signature(*y->sig(), *z->sig())) continue;
        const CategoryMode mode = modes_x.front();
        if (x->size() != y->size() || y->size() != z->size()) continue;
        std::vector<Morphism> f_isos, g_isos;
        for (const Morphism& f : all_maps(x, y)) {
          if (classify_morphism(f) == MorphClass::Iso) f_isos.push_back(f);
        }
        for (const Morphism& g : all_maps(y, z)) {
          if (classify_morphism(g) == MorphClass::Iso) g_isos.push_back(g);
        }
        for (const Morphism& f : f_isos) {
          if (!ctx.embeds(f, mode)) continue;
          for (const Morphism& g : g_isos) {
            if (!ctx.embeds(g, mode)) continue;
            c.expect(ctx.embeds(compose(g, f), mode), "composition closure failed");
          }
        }
        // g and g.f lambda-embeddings force f to be one.
        for (const Morphism& g : g_isos) {
          if (!ctx.embeds(g, mode)) continue;
          for (const Morphism& f : all_maps(x, y)) {
            if (!is_mode_morphism(f, mode)) continue;
            const Morphism gf = compose(g, f);
            if (!is_mode_morphism(gf, mode) || !ctx.embeds(gf, mode)) continue;
            c.expect(ctx.embeds(f, mode), "two-out-of-three failed");
          }
        }
      }
    }
  }

  // Symbolic rule vs the witness-search reading over the valid grid.
  std::vector<CardToken> grid;
  for (int n = 0; n <= 5; ++n) grid.push_back(CardToken::fin(static_cast<std::uint64_t>(n)));
  grid.push_back(CardToken::infinite());
  for (const CardToken a : grid) {
    for (const CardToken b : grid) {
      if (!(a <= b)) continue;
      for (const bool bij : {false, true}) {
        const bool valid_map = bij ? a == b : (a < b || (a.inf && b.inf));
        if (!valid_map) continue;
        // Witness search: the all-spans family must be dense, and each
        // finite restriction of the injection must itself be a span.
        bool witness = sym_density_check(a, b).dense;
        if (witness) {
          const std::uint64_t probe = a.inf ? 6 : a.n;
          for (std::uint64_t g = 0; g <= probe; ++g) {
            if (!make_sym_span(a, b, g)) witness = false;
          }
        }
        c.expect(sym_embedding(a, b, bij) == witness,
                 "sym_embedding vs witness search at (" + to_string(a) + "," + to_string(b) +
                     "," + (bij ? "bij" : "inj") + ")");
      }
    }
  }
  return c;
}

// --- criterion 8 ---------------------------------------------------------

Check criterion_ladders() {
  Check c;
  std::vector<std::pair<StructureRef, CategoryMode>> pool;
  pool.emplace_back(bare_set(2), CategoryMode::Emb);
  pool.emplace_back(bare_set(3), CategoryMode::Emb);
  pool.emplace_back(corpus::digraph(3, {{0, 1}, {1, 2}, {2, 0}}, "c3"), CategoryMode::Str);
  pool.emplace_back(corpus::cyclic_group(4), CategoryMode::Emb);
  pool.emplace_back(corpus::klein_four(), CategoryMode::Emb);

  for (const auto& [x, mode] : pool) {
    // All automorphisms; at finite scale these are exactly the maps a
    // hypothesis-satisfying chain may use.
    std::vector<Morphism> autos;
    for (const Morphism& f : all_maps(x, x)) {
      if (classify_morphism(f) == MorphClass::Iso) autos.push_back(f);
    }
    long instances = 0;
    for (const Morphism& f1 : autos) {
      for (const Morphism& f2 : autos) {
        ChainDiagram chain1{"c1", {x, x, x}, {f1, f2}};
        // Cocone components of the colimit embed.
        ChainColimit col = colimit_of_chain(chain1, mode);
        for (const auto& leg : col.cocone) {
          c.expect(decide_lambda_embedding(leg, mode), "cocone component fails to embed");
        }
        for (const Morphism& g1 : autos) {
          for (const Morphism& g2 : autos) {
            for (const Morphism& h0 : autos) {
              // Naturality pins the remaining components.
              Morphism h1 = compose(compose(g1, h0), invert(f1));
              Morphism h2 = compose(compose(g2, h1), invert(f2));
              LadderInstance inst{ChainDiagram{"a", {x, x, x}, {f1, f2}},
                                  ChainDiagram{"b", {x, x, x}, {g1, g2}},
                                  {h0, h1, h2},
                                  "grid"};
              LadderReport report = verify_ladder(inst, mode);
              ++instances;
              if (report.hypothesis_ok) {
                c.expect(report.conclusion_ok.value_or(false),
                         "conclusion failed under a satisfied hypothesis on " + x->name());
              } else {
                c.expect(false, "hypothesis unexpectedly failed on " + x->name());
              }
            }
          }
        }
      }
    }
    c.expect(instances > 0, "no instances for " + x->name());

    // Mixed-object ladders: the second chain lives on a relabeled copy,
    // with conjugated maps and the relabeling as every component.
    std::mt19937_64 rng(777 + x->size());
    const StructureRef xr = random_relabel(x, rng);
    const auto sigma = iso_oracle(x, xr);
    if (sigma) {
      const Morphism sigma_inv = invert(*sigma);
      for (const Morphism& f1 : autos) {
        for (const Morphism& f2 : autos) {
          auto conj = [&](const Morphism& f) { return compose(*sigma, compose(f, sigma_inv)); };
          LadderInstance inst{ChainDiagram{"a", {x, x, x}, {f1, f2}},
                              ChainDiagram{"b", {xr, xr, xr}, {conj(f1), conj(f2)}},
                              {*sigma, *sigma, *sigma},
                              "mixed"};
          LadderReport report = verify_ladder(inst, mode);
          c.expect(report.hypothesis_ok, "mixed ladder hypothesis failed on " + x->name());
          c.expect(report.conclusion_ok.value_or(false),
                   "mixed ladder conclusion failed on " + x->name());
          // Equivalent stages give equivalent colimits.
          c.expect(cached_equivalent(x, xr, mode), "mixed ladder stages not equivalent");
        }
      }
    }
  }

  // Exhaustive symbolic grid: prefixes over a token set, both tails.
  std::vector<CardToken> tokens;
  for (int n = 0; n <= 3; ++n) tokens.push_back(CardToken::fin(static_cast<std::uint64_t>(n)));
  tokens.push_back(CardToken::infinite());
  std::vector<SymChain> chains;
  std::function<void(std::vector<CardToken>&)> build = [&](std::vector<CardToken>& prefix) {
    if (!prefix.empty()) {
      for (TailBehavior tail : {TailBehavior::Constant, TailBehavior::StrictlyIncreasing}) {
        chains.push_back(SymChain{prefix, tail});
      }
    }
    if (prefix.size() == 3) return;
    for (const CardToken t : tokens) {
      if (!prefix.empty() && !(prefix.back() <= t)) continue;
      prefix.push_back(t);
      build(prefix);
      prefix.pop_back();
    }
  };
  std::vector<CardToken> prefix;
  build(prefix);
  long hypothesis_held = 0;
  for (const SymChain& a : chains) {
    for (const SymChain& b : chains) {
      SymLadderReport report = sym_verify_ladder(a, b);
      if (report.hypothesis_ok) {
        ++hypothesis_held;
        c.expect(report.conclusion_ok.value_or(false), "symbolic conclusion failed");
      } else {
        c.expect(!report.conclusion_ok.has_value(),
                 "conclusion reported despite a failed hypothesis");
      }
    }
  }
  c.expect(hypothesis_held > 0, "no symbolic instance satisfied the hypothesis");
  return c;
}

// --- criterion 9 ---------------------------------------------------------

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& stem, const std::string& contents) {
    path = std::filesystem::temp_directory_path() /
           (stem + "-" + std::to_string(std::random_device{}()) + ".tmp");
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() { std::error_code ec; std::filesystem::remove(path, ec); }
};

int run_cli(const std::vector<std::string>& args, nlohmann::json* report) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  if (report) {
    *report = nlohmann::json::parse(out.str(), nullptr, false);
  }
  return code;
}

Check criterion_witness_roundtrip() {
  Check c;
  const std::string ws_text =
      "signature gph : rel E/2\n"
      "structure A : gph ; size 3 ; E = {(0,1),(1,2),(2,0)}\n"
      "structure B : gph ; size 3 ; E = {(1,0),(0,2),(2,1)}\n"
      "structure C : gph ; size 3 ; E = {(2,0),(0,1),(1,2)}\n"
      "structure D : gph ; size 2 ; E = {}\n"
      "morphism idA : A -> A ; map [0,1,2]\n"
      "signature grp : fun m/2 ; fun inv/1 ; fun e/0\n"
      "structure G : grp ; size 2 ; m = [[0,1],[1,0]] ; inv = [0,1] ; e = [0]\n"
      "structure H : grp ; size 2 ; m = [[1,0],[0,1]] ; inv = [0,1] ; e = [1]\n";
  TempFile ws("bf-acc-ws", ws_text);
  const std::string ws_path = ws.path.string();

  nlohmann::json report;

  // equiv emits a family; dense must accept it.
  for (const std::string mode : {"emb", "str"}) {
    c.expect(run_cli({"equiv", "--left", "A", "--right", "B", "--mode", mode, ws_path},
                     &report) == cli::kExitTrue,
             "equiv A~B (" + mode + ")");
    TempFile fam("bf-acc-fam", report["witness"]["family"].dump());
    c.expect(run_cli({"dense", "--left", "A", "--right", "B", "--mode", mode, "--family",
                      fam.path.string(), ws_path},
                     nullptr) == cli::kExitTrue,
             "re-validated equiv witness (" + mode + ")");
  }

  // embed witnesses re-validate through the diagnostic family route.
  c.expect(run_cli({"embed", "--morphism", "idA", ws_path}, &report) == cli::kExitTrue,
           "embed idA");
  {
    TempFile fam("bf-acc-fam2", report["witness"]["family"].dump());
    c.expect(run_cli({"embed", "--morphism", "idA", "--family", fam.path.string(), ws_path},
                     &report) == cli::kExitTrue,
             "re-validated embed witness family");
  }

  // compose output re-validates as dense.
  c.expect(run_cli({"compose", "--left", "A", "--mid", "B", "--right", "C", ws_path}, &report) ==
               cli::kExitTrue,
           "compose A B C");
  {
    TempFile fam("bf-acc-fam3", report["witness"]["family"].dump());
    c.expect(run_cli({"dense", "--left", "A", "--right", "C", "--family", fam.path.string(),
                      ws_path},
                     nullptr) == cli::kExitTrue,
             "re-validated compose witness");
  }

  // transport through abelianization; the emitted family re-validates
  // between the two quotients via the library checker.
  c.expect(run_cli({"transport", "--functor", "abelianization", "--route", "image", "--left",
                    "G", "--right", "H", ws_path},
                   &report) == cli::kExitTrue,
           "transport G H");
  {
    Workspace parsed = parse_workspace(ws_text);
    auto ab = make_abelianization_functor();
    StructureRef abg = ab->apply(parsed.structure("G"));
    StructureRef abh = ab->apply(parsed.structure("H"));
    SpanFamily fam = family_from_json(report["witness"]["family"].dump(), abg, abh,
                                      CategoryMode::Emb);
    c.expect(check_density(fam).dense, "re-validated transport witness");
  }

  // A failing equiv's counterexample is the empty greatest family; the
  // non-dense verdict of a one-span family re-validates by hand.
  c.expect(run_cli({"equiv", "--left", "A", "--right", "D", ws_path}, &report) ==
               cli::kExitFalse,
           "equiv A D is false");
  c.expect(report["witness"]["greatest_family_size"] == 0, "empty greatest family reported");

  {
    TempFile fam("bf-acc-fam4", "[{\"domain\": [], \"map\": []}]");
    c.expect(run_cli({"dense", "--left", "A", "--right", "B", "--family", fam.path.string(),
                      ws_path},
                     &report) == cli::kExitFalse,
             "singleton family not dense");
    // Re-validate the counterexample through the checker.
    Workspace parsed = parse_workspace(ws_text);
    SpanFamily family = family_from_json("[{\"domain\": [], \"map\": []}]",
                                         parsed.structure("A"), parsed.structure("B"),
                                         CategoryMode::Emb);
    const auto& ce = report["verdict"]["counterexample"];
    TestObject g;
    for (int v : ce["test_object"]["carrier"]) g.mask |= (std::uint32_t{1} << v);
    Span s;
    for (std::size_t i = 0; i < ce["span"]["domain"].size(); ++i) {
      const int d = ce["span"]["domain"][i].get<int>();
      s.domain |= (std::uint32_t{1} << d);
      s.map[static_cast<std::size_t>(d)] = static_cast<std::int8_t>(ce["span"]["map"][i].get<int>());
    }
    const Direction dir = ce["direction"] == "back" ? Direction::Back : Direction::Forth;
    c.expect(!has_extension(family, s, g, dir), "counterexample re-validates");
  }

  // setcalc counterexamples re-validate through the symbolic checker.
  c.expect(run_cli({"setcalc", "equiv", "2", "3"}, &report) == cli::kExitFalse,
           "setcalc equiv 2 3");
  {
    const auto& ce = report["counterexample"];
    const auto span = make_sym_span(CardToken::fin(2), CardToken::fin(3),
                                    ce["span_center"].get<std::uint64_t>());
    c.expect(span.has_value(), "counterexample span exists");
  }
  c.expect(run_cli({"setcalc", "equiv", "INF", "INF"}, &report) == cli::kExitTrue,
           "setcalc equiv INF INF");
  return c;
}

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<Check()> run;
};

}  // namespace

std::vector<CriterionResult> run_all(std::ostream& out, int only) {
  const std::vector<Criterion> criteria = {
      {1, "set-example-grid", 1.0, criterion_set_example},
      {2, "simiso-oracle-equivalence", 300.0, criterion_simiso_oracle},
      {3, "greatest-family-oracle", 60.0, criterion_greatest_family_oracle},
      {4, "star-compose-density-and-associativity", 300.0, criterion_star_compose},
      {5, "emb-str-mode-agreement", 300.0, criterion_mode_agreement},
      {6, "abelianization-transport-certificates", 120.0, criterion_abelianization_transport},
      {7, "embedding-suite", 300.0, criterion_embedding_suite},
      {8, "ladder-and-chain-grid", 300.0, criterion_ladders},
      {9, "witness-round-trip", 60.0, criterion_witness_roundtrip},
  };
  std::vector<CriterionResult> results;
  for (const Criterion& crit : criteria) {
    if (only != 0 && crit.id != only) continue;
    CriterionResult r;
    r.id = crit.id;
    r.name = crit.name;
    r.budget_seconds = crit.budget_seconds;
    const auto start = std::chrono::steady_clock::now();
    try {
      Check c = crit.run();
      r.pass = c.pass;
      r.detail = c.summary();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.seconds > r.budget_seconds) {
      r.pass = false;
      r.detail += " (over budget)";
    }
    out << "[" << (r.pass ? "PASS" : "FAIL") << "] criterion " << r.id << " " << r.name << " ("
        << std::fixed << std::setprecision(2) << r.seconds << " s; " << r.detail << ")\n";
    results.push_back(std::move(r));
  }
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results) {
    if (!r.pass) return false;
  }
  return !results.empty();
}

}  // namespace bf::acceptance
