// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "mom/frontend.hpp"

#include "mom/format.hpp"

namespace mom {

namespace {

std::string printDim(const DimExpr &d) {
  if (d.isLiteral())
    return std::to_string(d.literal());
  return std::get<std::string>(d.value);
}

void printExprTo(std::string &out, const Expr &e) {
  switch (e.kind) {
  case Expr::Kind::Ref:
    out += e.name;
    return;
  case Expr::Kind::IdentityLit:
    out += "Identity(" + printDim(e.order) + ")";
    return;
  case Expr::Kind::Transpose:
    out += "transpose(";
    printExprTo(out, *e.operands.front());
    out += ")";
    return;
  case Expr::Kind::Mul:
  case Expr::Kind::Add: {
    bool isMul = e.kind == Expr::Kind::Mul;
    for (std::size_t i = 0; i < e.operands.size(); ++i) {
      if (i)
        out += isMul ? " * " : " + ";
      const Expr &child = *e.operands[i];
      // Mul binds tighter, and a same-kind child would be flattened away.
      bool parens = child.kind == e.kind ||
                    (isMul && child.kind == Expr::Kind::Add);
      if (parens)
        out += "(";
      printExprTo(out, child);
      if (parens)
        out += ")";
    }
    return;
  }
  }
}

} // namespace

std::string printExpr(const Expr &expr) {
  std::string out;
  printExprTo(out, expr);
  return out;
}

std::string printAst(const Ast &ast) {
  std::string out;
  for (const ConstBinding &c : ast.constants)
    out += c.name + " = " + std::to_string(c.value) + "\n";
  for (const MatrixDecl &d : ast.decls) {
    if (d.kind == MatrixDecl::Kind::Identity) {
      out += "Identity " + d.name + "(" + printDim(d.rows) + ")";
    } else {
      out += "Matrix " + d.name + "(" + printDim(d.rows) + ", " +
             printDim(d.cols) + ") <";
      for (std::size_t i = 0; i < d.properties.size(); ++i) {
        if (i)
          out += ", ";
        out += d.properties[i];
      }
      out += ">";
    }
    if (d.elem != ElemKind::F32)
      out += std::string(" : ") + std::string(toString(d.elem));
    if (d.kind == MatrixDecl::Kind::Matrix && d.fill != 1.0)
      out += " = " + formatScalar(d.fill);
    out += "\n";
  }
  for (const Stmt &s : ast.stmts) {
    if (s.kind == Stmt::Kind::Assign)
      out += s.target + " = " + printExpr(*s.expr) + "\n";
    else
      out += "print(" + printExpr(*s.expr) + ")\n";
  }
  return out;
}

} // namespace mom
