// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "mom/ir.hpp"

#include <map>

namespace mom {

namespace {

bool reads(const Expr &e, const std::string &name) {
  if (e.kind == Expr::Kind::Ref)
    return e.name == name;
  for (const ExprPtr &op : e.operands)
    if (reads(*op, name))
      return true;
  return false;
}

/// A declaration gets storage unless its first use overwrites it without
/// reading it (`C` in `C = A * B`).
bool needsStorage(const MatrixDecl &d, const std::vector<Stmt> &stmts) {
  if (d.kind == MatrixDecl::Kind::Identity)
    return true;
  for (const Stmt &s : stmts) {
    if (reads(*s.expr, d.name))
      return true;
    if (s.kind == Stmt::Kind::Assign && s.target == d.name)
      return false;
  }
  return true;
}

class IRBuilder {
public:
  explicit IRBuilder(const Ast &ast) : ast_(ast) {}

  IRModule run() {
    for (const MatrixDecl &d : ast_.decls) {
      if (d.kind == MatrixDecl::Kind::Matrix)
        declared_[d.name] = matrixType(d);
      if (!needsStorage(d, ast_.stmts))
        continue;
      if (d.kind == MatrixDecl::Kind::Identity) {
        values_[d.name] = emitIdentity(d.rows.literal(), d.elem, d.name);
        continue;
      }
      Op init{OpKind::Init};
      init.result = m_.addValue(declared_[d.name]);
      init.label = d.name;
      m_.body.push_back(init);

      Op fill{OpKind::Fill};
      fill.operands = {init.result};
      fill.scalar = d.fill;
      fill.scalarKind = d.elem;
      m_.body.push_back(fill);
      values_[d.name] = init.result;
    }

    for (const Stmt &s : ast_.stmts) {
      if (s.kind == Stmt::Kind::Assign) {
        const MatrixType &target = declared_.at(s.target);
        values_[s.target] =
            emitEquation(*s.expr, s.target, target, target.elem);
        continue;
      }
      ValueId printed;
      if (s.expr->kind == Expr::Kind::Ref)
        printed = values_.at(s.expr->name);
      else
        printed = emitEquation(*s.expr, "", std::nullopt, ElemKind::F32);
      Op print{OpKind::Print};
      print.operands = {printed};
      m_.body.push_back(print);
    }
    return std::move(m_);
  }

private:
  MatrixType matrixType(const MatrixDecl &d) {
    Dims dims{d.rows.literal(), d.cols.literal()};
    PropertySet props;
    try {
      props = canonicalize(std::span<const std::string>(d.properties), dims);
    } catch (const CompileError &e) {
      throw CompileError(e.kind(), e.message(), d.loc);
    }
    return MatrixType{dims.rows, dims.cols, d.elem, props};
  }

  ValueId emitIdentity(std::int64_t order, ElemKind elem, std::string label) {
    Op init{OpKind::Init};
    init.result = m_.addValue(IdentityType{order, elem});
    init.label = std::move(label);
    m_.body.push_back(init);
    return init.result;
  }

  ValueId emitEquation(const Expr &e, const std::string &target,
                       std::optional<MatrixType> declared, ElemKind elemHint) {
    Op eq{OpKind::Equation};
    eq.result = m_.addValue(TermType{});
    eq.label = target;
    eq.declared = std::move(declared);
    // Inline identities are hoisted in front of the equation; they take the
    // element kind of the assignment target.
    std::vector<Op> hoisted;
    ValueId root = lower(e, eq.region, hoisted, elemHint);
    Op yield{OpKind::Yield};
    yield.operands = {root};
    eq.region.push_back(yield);
    for (Op &op : hoisted)
      m_.body.push_back(std::move(op));
    ValueId result = eq.result;
    m_.body.push_back(std::move(eq));
    return result;
  }

  ValueId lower(const Expr &e, std::vector<Op> &region,
                std::vector<Op> &hoisted, ElemKind elemHint) {
    switch (e.kind) {
    case Expr::Kind::Ref:
      return values_.at(e.name);
    case Expr::Kind::IdentityLit: {
      Op init{OpKind::Init};
      init.result = m_.addValue(IdentityType{e.order.literal(), elemHint});
      init.label = "Identity(" + std::to_string(e.order.literal()) + ")";
      hoisted.push_back(init);
      return init.result;
    }
    case Expr::Kind::Mul:
    case Expr::Kind::Add:
    case Expr::Kind::Transpose: {
      Op op{e.kind == Expr::Kind::Mul   ? OpKind::Mul
            : e.kind == Expr::Kind::Add ? OpKind::Add
                                        : OpKind::Transpose};
      for (const ExprPtr &child : e.operands)
        op.operands.push_back(lower(*child, region, hoisted, elemHint));
      op.result = m_.addValue(TermType{});
      region.push_back(op);
      return op.result;
    }
    }
    return kNoValue;
  }

  const Ast &ast_;
  IRModule m_;
  std::map<std::string, MatrixType> declared_;
  std::map<std::string, ValueId> values_;
};

} // namespace

IRModule buildIR(const Ast &resolved) { return IRBuilder(resolved).run(); }

} // namespace mom
