#include "lexer.hpp"

#include <cctype>

namespace pmx::detail {

const char *tok_name(Tok t) {
  switch (t) {
  case Tok::Ident: return "identifier";
  case Tok::Number: return "number";
  case Tok::LParen: return "'('";
  case Tok::RParen: return "')'";
  case Tok::LBrace: return "'{'";
  case Tok::RBrace: return "'}'";
  case Tok::LBracket: return "'['";
  case Tok::RBracket: return "']'";
  case Tok::Lt: return "'<'";
  case Tok::Gt: return "'>'";
  case Tok::Le: return "'<='";
  case Tok::Ge: return "'>='";
  case Tok::EqEq: return "'=='";
  case Tok::NotEq: return "'!='";
  case Tok::Bang: return "'!'";
  case Tok::AndAnd: return "'&&'";
  case Tok::OrOr: return "'||'";
  case Tok::Bar: return "'|'";
  case Tok::Implies: return "'=>'";
  case Tok::Arrow: return "'->'";
  case Tok::Diamond: return "'<>'";
  case Tok::Plus: return "'+'";
  case Tok::Minus: return "'-'";
  case Tok::Star: return "'*'";
  case Tok::Dot: return "'.'";
  case Tok::Comma: return "','";
  case Tok::Colon: return "':'";
  case Tok::Semicolon: return "';'";
  case Tok::Assign: return "'='";
  case Tok::Hash: return "'#'";
  case Tok::End: return "end of input";
  }
  return "?";
}

namespace {

struct Symbol {
  const char *text;
  Tok kind;
};

// Longest match first.
constexpr Symbol kSymbols[] = {
    {"<=", Tok::Le},      {">=", Tok::Ge},      {"==", Tok::EqEq},   {"!=", Tok::NotEq},
    {"&&", Tok::AndAnd},  {"||", Tok::OrOr},    {"=>", Tok::Implies}, {"->", Tok::Arrow},
    {"<>", Tok::Diamond}, {"(", Tok::LParen},   {")", Tok::RParen},  {"{", Tok::LBrace},
    {"}", Tok::RBrace},   {"[", Tok::LBracket}, {"]", Tok::RBracket}, {"<", Tok::Lt},
    {">", Tok::Gt},       {"!", Tok::Bang},     {"|", Tok::Bar},     {"+", Tok::Plus},
    {"-", Tok::Minus},    {"*", Tok::Star},     {".", Tok::Dot},     {",", Tok::Comma},
    {":", Tok::Colon},    {";", Tok::Semicolon}, {"=", Tok::Assign}, {"#", Tok::Hash},
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

} // namespace

std::vector<Token> lex(std::string_view text, const std::string &file) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1;
  int col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '%') {
      while (i < text.size() && text[i] != '\n')
        advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    SourceSpan span{file, line, col, 0};
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j]))
        ++j;
      span.length = static_cast<int>(j - i);
      out.push_back({Tok::Ident, std::string(text.substr(i, j - i)), span});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
        ++j;
      span.length = static_cast<int>(j - i);
      out.push_back({Tok::Number, std::string(text.substr(i, j - i)), span});
      advance(j - i);
      continue;
    }
    bool matched = false;
    for (const Symbol &s : kSymbols) {
      std::string_view sym(s.text);
      if (text.substr(i, sym.size()) == sym) {
        span.length = static_cast<int>(sym.size());
        out.push_back({s.kind, std::string(sym), span});
        advance(sym.size());
        matched = true;
        break;
      }
    }
    if (!matched) {
      span.length = 1;
      throw Error(ErrorKind::Parse, std::string("unexpected character '") + c + "'", span);
    }
  }
  out.push_back({Tok::End, "", SourceSpan{file, line, col, 0}});
  return out;
}

} // namespace pmx::detail
