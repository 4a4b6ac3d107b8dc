// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "mom/frontend.hpp"

#include "mom/properties.hpp"

#include <charconv>
#include <map>

namespace mom {

std::string_view toString(ElemKind kind) {
  return kind == ElemKind::F32 ? "f32" : "f64";
}

ExprPtr Expr::ref(std::string name, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Ref;
  e->name = std::move(name);
  e->loc = loc;
  return e;
}

ExprPtr Expr::mul(std::vector<ExprPtr> operands, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Mul;
  e->operands = std::move(operands);
  e->loc = loc;
  return e;
}

ExprPtr Expr::add(std::vector<ExprPtr> operands, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Add;
  e->operands = std::move(operands);
  e->loc = loc;
  return e;
}

ExprPtr Expr::transpose(ExprPtr operand, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Transpose;
  e->operands.push_back(std::move(operand));
  e->loc = loc;
  return e;
}

ExprPtr Expr::identity(DimExpr order, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::IdentityLit;
  e->order = std::move(order);
  e->loc = loc;
  return e;
}

bool structurallyEqual(const Expr &a, const Expr &b) {
  if (a.kind != b.kind || a.name != b.name || !(a.order == b.order) ||
      a.operands.size() != b.operands.size())
    return false;
  for (std::size_t i = 0; i < a.operands.size(); ++i)
    if (!structurallyEqual(*a.operands[i], *b.operands[i]))
      return false;
  return true;
}

const MatrixDecl *Ast::findDecl(std::string_view name) const {
  for (const MatrixDecl &d : decls)
    if (d.name == name)
      return &d;
  return nullptr;
}

bool structurallyEqual(const Ast &a, const Ast &b) {
  if (a.constants.size() != b.constants.size() ||
      a.decls.size() != b.decls.size() || a.stmts.size() != b.stmts.size())
    return false;
  for (std::size_t i = 0; i < a.constants.size(); ++i)
    if (a.constants[i].name != b.constants[i].name ||
        a.constants[i].value != b.constants[i].value)
      return false;
  for (std::size_t i = 0; i < a.decls.size(); ++i) {
    const MatrixDecl &x = a.decls[i], &y = b.decls[i];
    if (x.kind != y.kind || x.name != y.name || !(x.rows == y.rows) ||
        !(x.cols == y.cols) || x.properties != y.properties ||
        x.elem != y.elem || x.fill != y.fill)
      return false;
  }
  for (std::size_t i = 0; i < a.stmts.size(); ++i) {
    const Stmt &x = a.stmts[i], &y = b.stmts[i];
    if (x.kind != y.kind || x.target != y.target ||
        !structurallyEqual(*x.expr, *y.expr))
      return false;
  }
  return true;
}

namespace {

enum class NameKind { Constant, Matrix, Identity };

class Parser {
public:
  explicit Parser(const std::vector<Token> &tokens) : tokens_(tokens) {}

  Ast run() {
    while (!at(TokenKind::Eof)) {
      if (accept(TokenKind::Newline))
        continue;
      statement();
      if (!at(TokenKind::Eof))
        expect({TokenKind::Newline});
    }
    return std::move(ast_);
  }

private:
  const Token &peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  bool at(TokenKind kind) const { return peek().kind == kind; }
  bool accept(TokenKind kind) {
    if (!at(kind))
      return false;
    ++pos_;
    return true;
  }

  [[noreturn]] void fail(std::initializer_list<TokenKind> expected) const {
    std::string msg = "expected ";
    bool first = true;
    for (TokenKind k : expected) {
      if (!first)
        msg += " or ";
      msg += toString(k);
      first = false;
    }
    msg += ", found ";
    msg += toString(peek().kind);
    if (peek().kind == TokenKind::Ident || peek().kind == TokenKind::Int ||
        peek().kind == TokenKind::Float)
      msg += " '" + peek().text + "'";
    throw CompileError(ErrorKind::Parse, msg, peek().loc);
  }

  const Token &expect(std::initializer_list<TokenKind> expected) {
    for (TokenKind k : expected)
      if (at(k))
        return tokens_[pos_++];
    fail(expected);
  }

  void declare(const std::string &name, NameKind kind, SourceLoc loc) {
    if (!names_.emplace(name, kind).second)
      throw CompileError(ErrorKind::DuplicateDeclaration,
                         "'" + name + "' is already declared", loc);
  }

  void statement() {
    switch (peek().kind) {
    case TokenKind::KwMatrix:
      matrixDecl();
      return;
    case TokenKind::KwIdentity:
      identityDecl();
      return;
    case TokenKind::KwPrint:
      printStmt();
      return;
    case TokenKind::Ident:
      if (peek(1).kind == TokenKind::Eq && peek(2).kind == TokenKind::Int &&
          (peek(3).kind == TokenKind::Newline ||
           peek(3).kind == TokenKind::Eof)) {
        constBinding();
        return;
      }
      assignment();
      return;
    default:
      fail({TokenKind::KwMatrix, TokenKind::KwIdentity, TokenKind::KwPrint,
            TokenKind::Ident});
    }
  }

  static std::int64_t parseInt(const Token &tok) {
    std::int64_t v = 0;
    auto [p, ec] =
        std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), v);
    if (ec != std::errc() || p != tok.text.data() + tok.text.size())
      throw CompileError(ErrorKind::Parse,
                         "integer literal out of range: " + tok.text, tok.loc);
    return v;
  }

  void constBinding() {
    const Token &name = expect({TokenKind::Ident});
    expect({TokenKind::Eq});
    const Token &value = expect({TokenKind::Int});
    declare(name.text, NameKind::Constant, name.loc);
    ast_.constants.push_back({name.text, parseInt(value), name.loc});
  }

  DimExpr dim() {
    const Token &tok = expect({TokenKind::Ident, TokenKind::Int});
    if (tok.kind == TokenKind::Int)
      return DimExpr{parseInt(tok), tok.loc};
    return DimExpr{tok.text, tok.loc};
  }

  ElemKind elemSuffix() {
    const Token &tok = peek();
    if (tok.kind == TokenKind::Ident && tok.text == "f32") {
      ++pos_;
      return ElemKind::F32;
    }
    if (tok.kind == TokenKind::Ident && tok.text == "f64") {
      ++pos_;
      return ElemKind::F64;
    }
    throw CompileError(ErrorKind::Parse,
                       "expected element type f32 or f64, found " +
                           std::string(toString(tok.kind)),
                       tok.loc);
  }

  void matrixDecl() {
    SourceLoc loc = expect({TokenKind::KwMatrix}).loc;
    MatrixDecl decl;
    decl.kind = MatrixDecl::Kind::Matrix;
    decl.loc = loc;
    const Token &name = expect({TokenKind::Ident});
    decl.name = name.text;
    expect({TokenKind::LParen});
    decl.rows = dim();
    expect({TokenKind::Comma});
    decl.cols = dim();
    expect({TokenKind::RParen});
    if (accept(TokenKind::Lt)) {
      if (!at(TokenKind::Gt)) {
        do {
          const Token &prop = expect({TokenKind::Ident});
          if (!propertyFromSurfaceName(prop.text))
            throw CompileError(ErrorKind::UnknownProperty,
                               "unknown property '" + prop.text + "'",
                               prop.loc);
          decl.properties.push_back(prop.text);
        } while (accept(TokenKind::Comma));
      }
      expect({TokenKind::Gt});
    }
    if (accept(TokenKind::Colon))
      decl.elem = elemSuffix();
    if (accept(TokenKind::Eq)) {
      const Token &v = expect({TokenKind::Int, TokenKind::Float});
      auto [p, ec] = std::from_chars(v.text.data(),
                                     v.text.data() + v.text.size(), decl.fill);
      if (ec != std::errc())
        throw CompileError(ErrorKind::Parse, "bad fill value " + v.text,
                           v.loc);
    }
    declare(decl.name, NameKind::Matrix, name.loc);
    ast_.decls.push_back(std::move(decl));
  }

  void identityDecl() {
    SourceLoc loc = expect({TokenKind::KwIdentity}).loc;
    MatrixDecl decl;
    decl.kind = MatrixDecl::Kind::Identity;
    decl.loc = loc;
    const Token &name = expect({TokenKind::Ident});
    decl.name = name.text;
    expect({TokenKind::LParen});
    decl.rows = dim();
    decl.cols = decl.rows;
    expect({TokenKind::RParen});
    if (accept(TokenKind::Colon))
      decl.elem = elemSuffix();
    declare(decl.name, NameKind::Identity, name.loc);
    ast_.decls.push_back(std::move(decl));
  }

  void printStmt() {
    SourceLoc loc = expect({TokenKind::KwPrint}).loc;
    expect({TokenKind::LParen});
    ExprPtr e = expr();
    expect({TokenKind::RParen});
    ast_.stmts.push_back({Stmt::Kind::Print, "", std::move(e), loc});
  }

  void assignment() {
    const Token &target = expect({TokenKind::Ident});
    auto it = names_.find(target.text);
    if (it == names_.end())
      throw CompileError(ErrorKind::UndeclaredIdentifier,
                         "assignment to undeclared matrix '" + target.text +
                             "'",
                         target.loc);
    if (it->second != NameKind::Matrix)
      throw CompileError(ErrorKind::InvalidAssignment,
                         "'" + target.text + "' is not an assignable matrix",
                         target.loc);
    expect({TokenKind::Eq});
    ExprPtr e = expr();
    ast_.stmts.push_back({Stmt::Kind::Assign, target.text, std::move(e),
                          target.loc});
  }

  // expr := term { '+' term }
  ExprPtr expr() {
    SourceLoc loc = peek().loc;
    std::vector<ExprPtr> terms;
    appendFlattened(terms, term(), Expr::Kind::Add);
    while (accept(TokenKind::Plus))
      appendFlattened(terms, term(), Expr::Kind::Add);
    if (terms.size() == 1)
      return terms.front();
    return Expr::add(std::move(terms), loc);
  }

  // term := factor { '*' factor }
  ExprPtr term() {
    SourceLoc loc = peek().loc;
    std::vector<ExprPtr> factors;
    appendFlattened(factors, factor(), Expr::Kind::Mul);
    while (accept(TokenKind::Star))
      appendFlattened(factors, factor(), Expr::Kind::Mul);
    if (factors.size() == 1)
      return factors.front();
    return Expr::mul(std::move(factors), loc);
  }

  static void appendFlattened(std::vector<ExprPtr> &out, ExprPtr e,
                              Expr::Kind kind) {
    if (e->kind == kind)
      out.insert(out.end(), e->operands.begin(), e->operands.end());
    else
      out.push_back(std::move(e));
  }

  ExprPtr factor() {
    const Token &tok = peek();
    switch (tok.kind) {
    case TokenKind::Ident: {
      ++pos_;
      auto it = names_.find(tok.text);
      if (it == names_.end())
        throw CompileError(ErrorKind::UndeclaredIdentifier,
                           "use of undeclared matrix '" + tok.text + "'",
                           tok.loc);
      if (it->second == NameKind::Constant)
        throw CompileError(ErrorKind::UndeclaredIdentifier,
                           "'" + tok.text + "' names a constant, not a matrix",
                           tok.loc);
      return Expr::ref(tok.text, tok.loc);
    }
    case TokenKind::LParen: {
      ++pos_;
      ExprPtr e = expr();
      expect({TokenKind::RParen});
      return e;
    }
    case TokenKind::KwTranspose: {
      ++pos_;
      expect({TokenKind::LParen});
      ExprPtr e = expr();
      expect({TokenKind::RParen});
      return Expr::transpose(std::move(e), tok.loc);
    }
    case TokenKind::KwIdentity: {
      ++pos_;
      expect({TokenKind::LParen});
      DimExpr order = dim();
      expect({TokenKind::RParen});
      return Expr::identity(std::move(order), tok.loc);
    }
    default:
      fail({TokenKind::Ident, TokenKind::LParen, TokenKind::KwTranspose,
            TokenKind::KwIdentity});
    }
  }

  const std::vector<Token> &tokens_;
  std::size_t pos_ = 0;
  Ast ast_;
  std::map<std::string, NameKind, std::less<>> names_;
};

} // namespace

Ast parse(const std::vector<Token> &tokens) {
  if (tokens.empty() || tokens.back().kind != TokenKind::Eof)
    throw CompileError(ErrorKind::Parse, "token stream must end with EOF",
                       SourceLoc{1, 1});
  return Parser(tokens).run();
}

Ast parse(const SourceProgram &src) { return parse(tokenize(src)); }

} // namespace mom
