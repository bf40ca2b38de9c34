#include "lexer.hpp"

#include <cctype>

namespace ccheck::detail {

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t j = 0; j < n && i < text.size(); ++j, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto emit = [&](Tok k, std::size_t n) {
    out.push_back({k, std::string(text.substr(i, n)), {line, col}});
    advance(n);
  };

  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (text.substr(i, 2) == "--") {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t n = 1;
      while (i + n < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i + n])) || text[i + n] == '_'))
        ++n;
      emit(Tok::Ident, n);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t n = 1;
      while (i + n < text.size() && std::isdigit(static_cast<unsigned char>(text[i + n]))) ++n;
      emit(Tok::Int, n);
      continue;
    }
    std::string_view rest = text.substr(i);
    if (rest.substr(0, 4) == "|..|") { emit(Tok::DotDot, 4); continue; }
    if (rest.substr(0, 3) == "->?") { emit(Tok::PartialArrow, 3); continue; }
    if (rest.substr(0, 2) == "->") { emit(Tok::Arrow, 2); continue; }
    if (rest.substr(0, 2) == "..") { emit(Tok::DotDot, 2); continue; }
    if (rest.substr(0, 2) == "/=") { emit(Tok::Neq, 2); continue; }
    if (rest.substr(0, 2) == "<=") { emit(Tok::Le, 2); continue; }
    if (rest.substr(0, 2) == ">=") { emit(Tok::Ge, 2); continue; }
    switch (c) {
      case '(': emit(Tok::LParen, 1); continue;
      case ')': emit(Tok::RParen, 1); continue;
      case '[': emit(Tok::LBracket, 1); continue;
      case ']': emit(Tok::RBracket, 1); continue;
      case ',': emit(Tok::Comma, 1); continue;
      case ':': emit(Tok::Colon, 1); continue;
      case ';': emit(Tok::Semicolon, 1); continue;
      case '.': emit(Tok::Dot, 1); continue;
      case '=': emit(Tok::Eq, 1); continue;
      case '<': emit(Tok::Lt, 1); continue;
      case '>': emit(Tok::Gt, 1); continue;
      default: break;
    }
    throw Error(ErrorCode::LexicalError, "unexpected character", {line, col}, std::string(1, c));
  }
  out.push_back({Tok::End, "", {line, col}});
  return out;
}

}  // namespace ccheck::detail
