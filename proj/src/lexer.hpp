#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pmx/error.hpp"

namespace pmx::detail {

enum class Tok {
  Ident,
  Number,
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Lt,
  Gt,
  Le,
  Ge,
  EqEq,
  NotEq,
  Bang,
  AndAnd,
  OrOr,
  Bar,
  Implies,  // =>
  Arrow,    // ->
  Diamond,  // <>
  Plus,
  Minus,
  Star,
  Dot,
  Comma,
  Colon,
  Semicolon,
  Assign,   // =
  Hash,
  End,
};

const char *tok_name(Tok t);

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

/// Splits input into tokens. `%` starts a comment running to end of line.
std::vector<Token> lex(std::string_view text, const std::string &file);

} // namespace pmx::detail
