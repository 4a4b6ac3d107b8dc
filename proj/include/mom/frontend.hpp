// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
//
// Lexer, parser and constant resolution for `.mom` programs. The grammar is
// documented in docs/grammar.md.

#pragma once

#include "mom/error.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mom {

struct SourceProgram {
  std::string text;
  std::string origin = "<stdin>";
};

/// Reads a file; throws CompileError(Io) when it cannot be opened.
SourceProgram readSourceFile(const std::string &path);

//===----------------------------------------------------------------------===//
// Tokens
//===----------------------------------------------------------------------===//

enum class TokenKind {
  Ident,
  Int,
  Float,
  KwMatrix,
  KwIdentity,
  KwPrint,
  KwTranspose,
  Eq,
  LParen,
  RParen,
  Lt,
  Gt,
  Comma,
  Star,
  Plus,
  Colon,
  Newline,
  Eof,
};

std::string_view toString(TokenKind kind);

struct Token {
  TokenKind kind;
  std::string text;
  SourceLoc loc;

  friend bool operator==(const Token &, const Token &) = default;
};

std::vector<Token> tokenize(const SourceProgram &src);

//===----------------------------------------------------------------------===//
// AST
//===----------------------------------------------------------------------===//

enum class ElemKind : std::uint8_t { F32, F64 };

std::string_view toString(ElemKind kind);

/// A dimension is an integer literal or the name of a bound constant. After
/// resolveConstants every DimExpr holds a literal.
struct DimExpr {
  std::variant<std::int64_t, std::string> value;
  SourceLoc loc;

  bool isLiteral() const { return std::holds_alternative<std::int64_t>(value); }
  std::int64_t literal() const { return std::get<std::int64_t>(value); }
  friend bool operator==(const DimExpr &a, const DimExpr &b) {
    return a.value == b.value;
  }
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Ref, Mul, Add, Transpose, IdentityLit };

  Kind kind;
  std::string name;              // Ref
  std::vector<ExprPtr> operands; // Mul, Add (>= 2), Transpose (1)
  DimExpr order;                 // IdentityLit
  SourceLoc loc;

  static ExprPtr ref(std::string name, SourceLoc loc = {});
  static ExprPtr mul(std::vector<ExprPtr> operands, SourceLoc loc = {});
  static ExprPtr add(std::vector<ExprPtr> operands, SourceLoc loc = {});
  static ExprPtr transpose(ExprPtr operand, SourceLoc loc = {});
  static ExprPtr identity(DimExpr order, SourceLoc loc = {});
};

/// Structural equality, ignoring source locations.
bool structurallyEqual(const Expr &a, const Expr &b);

struct ConstBinding {
  std::string name;
  std::int64_t value;
  SourceLoc loc;
};

struct MatrixDecl {
  enum class Kind { Matrix, Identity };

  Kind kind = Kind::Matrix;
  std::string name;
  DimExpr rows;
  DimExpr cols; // equals rows for identities
  std::vector<std::string> properties;
  ElemKind elem = ElemKind::F32;
  double fill = 1.0;
  SourceLoc loc;
};

struct Stmt {
  enum class Kind { Assign, Print };

  Kind kind;
  std::string target; // Assign
  ExprPtr expr;       // Assign: right-hand side; Print: printed expression
  SourceLoc loc;
};

struct Ast {
  std::vector<ConstBinding> constants;
  std::vector<MatrixDecl> decls;
  std::vector<Stmt> stmts;

  const MatrixDecl *findDecl(std::string_view name) const;
};

bool structurallyEqual(const Ast &a, const Ast &b);

Ast parse(const std::vector<Token> &tokens);
Ast parse(const SourceProgram &src);

/// Replaces every named dimension by its bound value.
Ast resolveConstants(const Ast &ast);

/// Divides every resolved dimension by `divisor` (rounding down, minimum 1).
Ast scaleDimensions(const Ast &ast, std::int64_t divisor);

/// Renders an AST back to DSL text that parses to a structurally equal AST.
std::string printAst(const Ast &ast);
std::string printExpr(const Expr &expr);

} // namespace mom
