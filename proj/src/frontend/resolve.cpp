// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "mom/frontend.hpp"

#include <algorithm>
#include <charconv>
#include <map>

namespace mom {

namespace {

class ConstantResolver {
public:
  explicit ConstantResolver(const Ast &ast) {
    for (const ConstBinding &c : ast.constants)
      values_.emplace(c.name, c.value);
  }

  DimExpr resolve(const DimExpr &d) const {
    std::int64_t v;
    if (d.isLiteral()) {
      v = d.literal();
    } else {
      const auto &name = std::get<std::string>(d.value);
      auto it = values_.find(name);
      if (it == values_.end())
        throw CompileError(ErrorKind::UnboundConstant,
                           "dimension '" + name + "' is not bound", d.loc);
      v = it->second;
    }
    if (v <= 0)
      throw CompileError(ErrorKind::NonPositiveDimension,
                         "dimension must be positive, got " +
                             std::to_string(v),
                         d.loc);
    return DimExpr{v, d.loc};
  }

  ExprPtr resolve(const ExprPtr &e) const {
    if (e->kind == Expr::Kind::IdentityLit)
      return Expr::identity(resolve(e->order), e->loc);
    if (e->operands.empty())
      return e;
    auto copy = std::make_shared<Expr>(*e);
    for (ExprPtr &op : copy->operands)
      op = resolve(op);
    return copy;
  }

private:
  std::map<std::string, std::int64_t, std::less<>> values_;
};

} // namespace

Ast resolveConstants(const Ast &ast) {
  ConstantResolver resolver(ast);
  Ast out = ast;
  for (MatrixDecl &d : out.decls) {
    d.rows = resolver.resolve(d.rows);
    d.cols = resolver.resolve(d.cols);
  }
  for (Stmt &s : out.stmts)
    s.expr = resolver.resolve(s.expr);
  return out;
}

namespace {

DimExpr scaled(const DimExpr &d, std::int64_t divisor) {
  return DimExpr{std::max<std::int64_t>(1, d.literal() / divisor), d.loc};
}

ExprPtr scaled(const ExprPtr &e, std::int64_t divisor) {
  if (e->kind == Expr::Kind::IdentityLit)
    return Expr::identity(scaled(e->order, divisor), e->loc);
  if (e->operands.empty())
    return e;
  auto copy = std::make_shared<Expr>(*e);
  for (ExprPtr &op : copy->operands)
    op = scaled(op, divisor);
  return copy;
}

} // namespace

Ast scaleDimensions(const Ast &ast, std::int64_t divisor) {
  if (divisor <= 1)
    return ast;
  Ast out = ast;
  for (ConstBinding &c : out.constants)
    c.value = std::max<std::int64_t>(1, c.value / divisor);
  for (MatrixDecl &d : out.decls) {
    d.rows = scaled(d.rows, divisor);
    d.cols = scaled(d.cols, divisor);
  }
  for (Stmt &s : out.stmts)
    s.expr = scaled(s.expr, divisor);
  return out;
}

} // namespace mom
