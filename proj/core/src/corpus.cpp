#include "backforth/corpus.hpp"

#include <numeric>

#include "backforth/errors.hpp"

namespace bf::corpus {

SignatureRef set_signature() {
  static const SignatureRef sig =
      std::make_shared<Signature>("set", std::vector<Symbol>{}, std::vector<Symbol>{});
  return sig;
}

SignatureRef digraph_signature() {
  static const SignatureRef sig = std::make_shared<Signature>(
      "digraph", std::vector<Symbol>{{"E", 2}}, std::vector<Symbol>{});
  return sig;
}

SignatureRef two_rel_signature() {
  static const SignatureRef sig = std::make_shared<Signature>(
      "two_rel", std::vector<Symbol>{{"E", 2}, {"C", 1}}, std::vector<Symbol>{});
  return sig;
}

StructureRef bare_set(int n, std::string name) {
  if (name.empty()) name = "set" + std::to_string(n);
  return std::make_shared<FinStructure>(set_signature(), std::move(name), n,
                                        std::vector<std::vector<std::vector<int>>>{},
                                        std::vector<std::vector<int>>{});
}

StructureRef digraph(int n, const std::vector<std::pair<int, int>>& edges, std::string name) {
  if (name.empty()) name = "g" + std::to_string(n);
  std::vector<std::vector<int>> tuples;
  for (auto [a, b] : edges) tuples.push_back({a, b});
  return std::make_shared<FinStructure>(digraph_signature(), std::move(name), n,
                                        std::vector<std::vector<std::vector<int>>>{tuples},
                                        std::vector<std::vector<int>>{});
}

StructureRef digraph_from_code(int n, std::uint32_t code, std::string name) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if ((code >> (i * n + j)) & 1) edges.emplace_back(i, j);
    }
  }
  if (name.empty()) name = "g" + std::to_string(n) + "_" + std::to_string(code);
  return digraph(n, edges, std::move(name));
}

std::vector<StructureRef> all_digraphs(int n) {
  std::vector<StructureRef> out;
  const std::uint32_t top = std::uint32_t{1} << (n * n);
  out.reserve(top);
  for (std::uint32_t code = 0; code < top; ++code) {
    out.push_back(digraph_from_code(n, code));
  }
  return out;
}

StructureRef random_digraph(int n, double edge_prob, std::mt19937_64& rng, std::string name) {
  std::bernoulli_distribution coin(edge_prob);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (coin(rng)) edges.emplace_back(i, j);
    }
  }
  if (name.empty()) name = "rg" + std::to_string(n);
  return digraph(n, edges, std::move(name));
}

StructureRef random_two_rel(int n, double prob, std::mt19937_64& rng, std::string name) {
  std::bernoulli_distribution coin(prob);
  std::vector<std::vector<int>> e_tuples;
  std::vector<std::vector<int>> c_tuples;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (coin(rng)) e_tuples.push_back({i, j});
    }
    if (coin(rng)) c_tuples.push_back({i});
  }
  if (name.empty()) name = "rt" + std::to_string(n);
  return std::make_shared<FinStructure>(
      two_rel_signature(), std::move(name), n,
      std::vector<std::vector<std::vector<int>>>{e_tuples, c_tuples},
      std::vector<std::vector<int>>{});
}

namespace {

StructureRef group_from_table(std::string name, const std::vector<std::vector<int>>& mul) {
  const int n = static_cast<int>(mul.size());
  std::vector<int> flat;
  flat.reserve(static_cast<std::size_t>(n * n));
  for (const auto& row : mul) {
    for (int v : row) flat.push_back(v);
  }
  // Identity: the unique e with e*x = x for all x.
  int e = -1;
  for (int cand = 0; cand < n; ++cand) {
    bool ok = true;
    for (int x = 0; x < n; ++x) {
      if (mul[static_cast<std::size_t>(cand)][static_cast<std::size_t>(x)] != x) ok = false;
    }
    if (ok) {
      e = cand;
      break;
    }
  }
  if (e < 0) throw InvalidArgument("group table has no identity");
  std::vector<int> inv(static_cast<std::size_t>(n), -1);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (mul[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] == e &&
          mul[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] == e) {
        inv[static_cast<std::size_t>(x)] = y;
      }
    }
    if (inv[static_cast<std::size_t>(x)] < 0) throw InvalidArgument("group table has no inverse");
  }
  auto g = std::make_shared<FinStructure>(
      group_signature(), std::move(name), n, std::vector<std::vector<std::vector<int>>>{},
      std::vector<std::vector<int>>{flat, inv, {e}});
  if (!satisfies(*g, builtin_group_theory()).ok) {
    throw InvalidArgument("table for '" + g->name() + "' violates the group axioms");
  }
  return g;
}

}  // namespace

StructureRef cyclic_group(int n) {
  std::vector<std::vector<int>> mul(static_cast<std::size_t>(n),
                                    std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
  }
  return group_from_table("Z" + std::to_string(n), mul);
}

StructureRef group_product(const StructureRef& a, const StructureRef& b, std::string name) {
  const int na = a->size();
  const int nb = b->size();
  const int m = a->sig()->function_index("m").value();
  const int n = na * nb;
  std::vector<std::vector<int>> mul(static_cast<std::size_t>(n),
                                    std::vector<int>(static_cast<std::size_t>(n)));
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      const int ax = x % na, bx = x / na;
      const int ay = y % na, by = y / na;
      const int aa[2] = {ax, ay};
      const int bb[2] = {bx, by};
      mul[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] =
          a->fun_eval(m, aa) + na * b->fun_eval(m, bb);
    }
  }
  if (name.empty()) name = a->name() + "x" + b->name();
  return group_from_table(std::move(name), mul);
}

StructureRef klein_four() {
  static const StructureRef g = group_product(cyclic_group(2), cyclic_group(2), "V4");
  return g;
}

StructureRef sym3() {
  // Permutations of {0,1,2} in lexicographic one-line order.
  const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  auto index_of = [&](const int p[3]) {
    for (int i = 0; i < 6; ++i) {
      if (perms[i][0] == p[0] && perms[i][1] == p[1] && perms[i][2] == p[2]) return i;
    }
    return -1;
  };
  std::vector<std::vector<int>> mul(6, std::vector<int>(6));
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      int comp[3];
      for (int x = 0; x < 3; ++x) comp[x] = perms[i][perms[j][x]];  // i after j
      mul[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = index_of(comp);
    }
  }
  return group_from_table("S3", mul);
}

StructureRef dihedral8() {
  // 0..3 rotations r^k, 4..7 reflections s r^k; s r s = r^-1.
  std::vector<std::vector<int>> mul(8, std::vector<int>(8));
  auto enc = [](bool flip, int rot) { return (flip ? 4 : 0) + ((rot % 4 + 4) % 4); };
  for (int x = 0; x < 8; ++x) {
    for (int y = 0; y < 8; ++y) {
      const bool fx = x >= 4, fy = y >= 4;
      const int rx = x % 4, ry = y % 4;
      // (s^fx r^rx)(s^fy r^ry) = s^(fx+fy) r^(±rx + ry)
      const int rot = fy ? -rx + ry : rx + ry;
      mul[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = enc(fx != fy, rot);
    }
  }
  return group_from_table("D4", mul);
}

StructureRef quaternion8() {
  // 0:1, 1:-1, 2:i, 3:-i, 4:j, 5:-j, 6:k, 7:-k
  auto enc = [](int axis, int sign) { return axis == 0 ? (sign > 0 ? 0 : 1) : 2 * axis + (sign > 0 ? 0 : 1); };
  auto axis_of = [](int v) { return v < 2 ? 0 : v / 2; };
  auto sign_of = [](int v) { return (v % 2 == 0) ? 1 : -1; };
  // Multiplication of unit quaternions on axes {1, i, j, k}.
  auto mul_axis = [](int a, int b, int& sign) {
    //  table for i(1) j(2) k(3)
    if (a == 0) { sign = 1; return b; }
    if (b == 0) { sign = 1; return a; }
    if (a == b) { sign = -1; return 0; }
    // i*j=k, j*k=i, k*i=j (cyclic, +1); reversed gives -1
    if ((a == 1 && b == 2)) { sign = 1; return 3; }
    if ((a == 2 && b == 3)) { sign = 1; return 1; }
    if ((a == 3 && b == 1)) { sign = 1; return 2; }
    sign = -1;
    if (a == 2 && b == 1) return 3;
    if (a == 3 && b == 2) return 1;
    return 2;  // a == 1 && b == 3
  };
  std::vector<std::vector<int>> mul(8, std::vector<int>(8));
  for (int x = 0; x < 8; ++x) {
    for (int y = 0; y < 8; ++y) {
      int s = 1;
      const int axis = mul_axis(axis_of(x), axis_of(y), s);
      const int sign = sign_of(x) * sign_of(y) * s;
      mul[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = enc(axis, sign);
    }
  }
  return group_from_table("Q8", mul);
}

std::vector<StructureRef> groups_up_to_order8() {
  static const std::vector<StructureRef> groups = [] {
    std::vector<StructureRef> out;
    out.push_back(cyclic_group(1));
    out.push_back(cyclic_group(2));
    out.push_back(cyclic_group(3));
    out.push_back(cyclic_group(4));
    out.push_back(klein_four());
    out.push_back(cyclic_group(5));
    out.push_back(cyclic_group(6));
    out.push_back(sym3());
    out.push_back(cyclic_group(7));
    out.push_back(cyclic_group(8));
    out.push_back(group_product(cyclic_group(4), cyclic_group(2), "Z4xZ2"));
    out.push_back(group_product(klein_four(), cyclic_group(2), "Z2e3"));
    out.push_back(dihedral8());
    out.push_back(quaternion8());
    return out;
  }();
  return groups;
}

StructureRef relabel(const StructureRef& x, std::span<const int> perm, std::string name) {
  if (static_cast<int>(perm.size()) != x->size()) {
    throw InvalidArgument("relabel: permutation length mismatch");
  }
  const Signature& sig = *x->sig();
  std::vector<std::vector<std::vector<int>>> rels(sig.relations().size());
  for (std::size_t r = 0; r < sig.relations().size(); ++r) {
    for (auto tuple : x->rel_tuples_decoded(static_cast<int>(r))) {
      for (int& v : tuple) v = perm[static_cast<std::size_t>(v)];
      rels[r].push_back(std::move(tuple));
    }
  }
  std::vector<std::vector<int>> funs(sig.functions().size());
  std::vector<int> inv_perm(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv_perm[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
  for (std::size_t f = 0; f < sig.functions().size(); ++f) {
    const int arity = sig.functions()[f].arity;
    std::size_t total = 1;
    for (int i = 0; i < arity; ++i) total *= static_cast<std::size_t>(x->size());
    std::vector<int> table(total);
    std::vector<int> args(static_cast<std::size_t>(arity));
    for (std::size_t k = 0; k < total; ++k) {
      std::size_t rem = k;
      for (int i = arity - 1; i >= 0; --i) {
        args[static_cast<std::size_t>(i)] = inv_perm[rem % perm.size()];
        rem /= perm.size();
      }
      table[k] = perm[static_cast<std::size_t>(x->fun_eval(static_cast<int>(f), args))];
    }
    funs[f] = std::move(table);
  }
  if (name.empty()) name = x->name() + "'";
  return std::make_shared<FinStructure>(x->sig(), std::move(name), x->size(), std::move(rels),
                                        std::move(funs));
}

std::vector<int> random_perm(int n, std::mt19937_64& rng) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    std::uniform_int_distribution<int> pick(0, i);
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(pick(rng))]);
  }
  return perm;
}

StructureRef random_relabel(const StructureRef& x, std::mt19937_64& rng, std::string name) {
  return relabel(x, random_perm(x->size(), rng), std::move(name));
}

}  // namespace bf::corpus
