#ifndef BACKFORTH_SRC_LEXER_HPP
#define BACKFORTH_SRC_LEXER_HPP

#include <string>
#include <string_view>
#include <vector>

#include "backforth/errors.hpp"

namespace bf::detail {

enum class Tok {
  Ident,
  Number,
  Colon,      // :
  Semi,       // ;
  Comma,      // ,
  LParen,     // (
  RParen,     // )
  LBrace,     // {
  RBrace,     // }
  LBracket,   // [
  RBracket,   // ]
  Equals,     // =
  Slash,      // /
  Dot,        // .
  Dash,       // -
  Arrow,      // ->
  FatArrow,   // =>
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int column = 1;
};

// Tokenizes the whole input; '#' starts a comment to end of line.
std::vector<Token> tokenize(std::string_view text);

// Cursor over a token stream with contract-checking helpers.
class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }
  bool at(Tok kind) const { return peek().kind == kind; }
  bool accept(Tok kind) {
    if (!at(kind)) return false;
    next();
    return true;
  }
  const Token& expect(Tok kind, const std::string& what) {
    if (!at(kind)) {
      const Token& t = peek();
      throw ParseError(t.line, t.column, "expected " + what + ", got '" +
                                             (t.kind == Tok::End ? "<end>" : t.text) + "'");
    }
    return next();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw ParseError(t.line, t.column, msg);
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace bf::detail

#endif
