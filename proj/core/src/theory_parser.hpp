#ifndef BACKFORTH_SRC_THEORY_PARSER_HPP
#define BACKFORTH_SRC_THEORY_PARSER_HPP

#include "backforth/theory.hpp"
#include "lexer.hpp"

namespace bf::detail {

// Parses one `forall v1 ... vk . phi -> psi` sentence.  The cursor must be
// on the `forall` keyword.
Sentence parse_sentence(TokenStream& ts, const Signature& sig);

std::string print_sentence(const Sentence& s, const Signature& sig);

}  // namespace bf::detail

#endif
