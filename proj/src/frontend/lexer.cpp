// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "mom/frontend.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mom {

SourceProgram readSourceFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw CompileError(ErrorKind::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return SourceProgram{ss.str(), path};
}

std::string_view toString(TokenKind kind) {
  switch (kind) {
  case TokenKind::Ident:
    return "identifier";
  case TokenKind::Int:
    return "integer";
  case TokenKind::Float:
    return "number";
  case TokenKind::KwMatrix:
    return "'Matrix'";
  case TokenKind::KwIdentity:
    return "'Identity'";
  case TokenKind::KwPrint:
    return "'print'";
  case TokenKind::KwTranspose:
    return "'transpose'";
  case TokenKind::Eq:
    return "'='";
  case TokenKind::LParen:
    return "'('";
  case TokenKind::RParen:
    return "')'";
  case TokenKind::Lt:
    return "'<'";
  case TokenKind::Gt:
    return "'>'";
  case TokenKind::Comma:
    return "','";
  case TokenKind::Star:
    return "'*'";
  case TokenKind::Plus:
    return "'+'";
  case TokenKind::Colon:
    return "':'";
  case TokenKind::Newline:
    return "newline";
  case TokenKind::Eof:
    return "end of input";
  }
  return "?";
}

namespace {

bool isIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool isIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
bool isDigit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

TokenKind keywordOrIdent(std::string_view word) {
  if (word == "Matrix")
    return TokenKind::KwMatrix;
  if (word == "Identity")
    return TokenKind::KwIdentity;
  if (word == "print")
    return TokenKind::KwPrint;
  if (word == "transpose")
    return TokenKind::KwTranspose;
  return TokenKind::Ident;
}

} // namespace

std::vector<Token> tokenize(const SourceProgram &src) {
  std::vector<Token> tokens;
  const std::string &text = src.text;
  std::uint32_t line = 1, col = 1;
  std::size_t i = 0;

  auto advance = [&](std::size_t n = 1) {
    i += n;
    col += static_cast<std::uint32_t>(n);
  };

  while (i < text.size()) {
    char c = text[i];
    SourceLoc loc{line, col};

    if (c == ' ' || c == '\t' || c == '\r') {
      advance();
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n')
        advance();
      continue;
    }
    if (c == '\n') {
      tokens.push_back({TokenKind::Newline, "\n", loc});
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (isIdentStart(c)) {
      std::size_t start = i;
      while (i < text.size() && isIdentChar(text[i]))
        advance();
      std::string word = text.substr(start, i - start);
      tokens.push_back({keywordOrIdent(word), word, loc});
      continue;
    }
    if (isDigit(c) || (c == '-' && i + 1 < text.size() && isDigit(text[i + 1]))) {
      std::size_t start = i;
      if (c == '-')
        advance();
      while (i < text.size() && isDigit(text[i]))
        advance();
      TokenKind kind = TokenKind::Int;
      if (i < text.size() && text[i] == '.') {
        kind = TokenKind::Float;
        advance();
        if (i >= text.size() || !isDigit(text[i]))
          throw CompileError(ErrorKind::Lex,
                             "expected digit after '.'",
                             SourceLoc{line, col});
        while (i < text.size() && isDigit(text[i]))
          advance();
      }
      tokens.push_back({kind, text.substr(start, i - start), loc});
      continue;
    }

    TokenKind kind;
    switch (c) {
    case '=':
      kind = TokenKind::Eq;
      break;
    case '(':
      kind = TokenKind::LParen;
      break;
    case ')':
      kind = TokenKind::RParen;
      break;
    case '<':
      kind = TokenKind::Lt;
      break;
    case '>':
      kind = TokenKind::Gt;
      break;
    case ',':
      kind = TokenKind::Comma;
      break;
    case '*':
      kind = TokenKind::Star;
      break;
    case '+':
      kind = TokenKind::Plus;
      break;
    case ':':
      kind = TokenKind::Colon;
      break;
    default: {
      std::string shown;
      if (static_cast<unsigned char>(c) >= 0x20 &&
          static_cast<unsigned char>(c) < 0x7f)
        shown = std::string("'") + c + "'";
      else
        shown = "byte 0x" + [&] {
          char buf[3];
          std::snprintf(buf, sizeof buf, "%02x",
                        static_cast<unsigned char>(c));
          return std::string(buf);
        }();
      throw CompileError(ErrorKind::Lex, "unexpected character " + shown, loc);
    }
    }
    tokens.push_back({kind, std::string(1, c), loc});
    advance();
  }
  tokens.push_back({TokenKind::Eof, "", SourceLoc{line, col}});
  return tokens;
}

} // namespace mom
