#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ccheck/diagnostic.hpp"

namespace ccheck::detail {

enum class Tok {
  Ident,
  Int,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Colon,
  Semicolon,
  Dot,
  DotDot,  // `..` or `|..|`
  Eq,
  Neq,
  Lt,
  Le,
  Gt,
  Ge,
  Arrow,         // ->
  PartialArrow,  // ->?
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourcePos pos;
};

/// Splits `text` into tokens; `--` starts a comment running to end of line.
/// Throws Error(LexicalError) on an unexpected character.
std::vector<Token> tokenize(std::string_view text);

/// Cursor over a token stream with error helpers shared by the parsers.
class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(std::string_view w, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Ident && peek(ahead).text == w;
  }
  bool accept(Tok k) {
    if (!at(k)) return false;
    next();
    return true;
  }
  bool accept_word(std::string_view w) {
    if (!at_word(w)) return false;
    next();
    return true;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw Error(ErrorCode::SyntaxError, msg, t.pos, t.kind == Tok::End ? "end of input" : t.text);
  }
  const Token& expect(Tok k, std::string_view what) {
    if (!at(k)) fail("expected " + std::string(what));
    return next();
  }
  void expect_word(std::string_view w) {
    if (!at_word(w)) fail("expected '" + std::string(w) + "'");
    next();
  }
  const Token& expect_ident(std::string_view what) {
    if (!at(Tok::Ident)) fail("expected " + std::string(what));
    return next();
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace ccheck::detail
