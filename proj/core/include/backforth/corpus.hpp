#ifndef BACKFORTH_CORPUS_HPP
#define BACKFORTH_CORPUS_HPP

#include <random>
#include <span>
#include <string>
#include <vector>

#include "backforth/structure.hpp"
#include "backforth/theory.hpp"

namespace bf::corpus {

// Shared example signatures.
SignatureRef set_signature();       // no symbols
SignatureRef digraph_signature();   // rel E/2
SignatureRef two_rel_signature();   // rel E/2, rel C/1

StructureRef bare_set(int n, std::string name = "");
StructureRef digraph(int n, const std::vector<std::pair<int, int>>& edges,
                     std::string name = "");
// Edge (i,j) present iff bit i*n+j of `code` is set.
StructureRef digraph_from_code(int n, std::uint32_t code, std::string name = "");
std::vector<StructureRef> all_digraphs(int n);

StructureRef random_digraph(int n, double edge_prob, std::mt19937_64& rng,
                            std::string name = "");
StructureRef random_two_rel(int n, double prob, std::mt19937_64& rng, std::string name = "");

// Finite groups over (m/2, inv/1, e/0).
StructureRef cyclic_group(int n);
StructureRef group_product(const StructureRef& a, const StructureRef& b, std::string name = "");
StructureRef klein_four();
StructureRef sym3();
StructureRef dihedral8();     // order 8
StructureRef quaternion8();
// All groups of order <= 8, one per isomorphism class.
std::vector<StructureRef> groups_up_to_order8();

// The same structure with carrier permuted by `perm` (new index = perm[old]).
StructureRef relabel(const StructureRef& x, std::span<const int> perm, std::string name = "");
std::vector<int> random_perm(int n, std::mt19937_64& rng);
StructureRef random_relabel(const StructureRef& x, std::mt19937_64& rng, std::string name = "");

}  // namespace bf::corpus

#endif
