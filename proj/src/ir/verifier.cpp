// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "mom/ir.hpp"

#include <map>
#include <set>

namespace mom {

namespace {

struct Shape {
  Dims dims;
  ElemKind elem;
};

std::string dimsStr(Dims d) {
  return std::to_string(d.rows) + "x" + std::to_string(d.cols);
}

class Verifier {
public:
  explicit Verifier(const IRModule &m) : m_(m) {}

  std::vector<Diagnostic> run() {
    std::set<ValueId> scope;
    for (std::size_t i = 0; i < m_.body.size(); ++i)
      topLevel(m_.body[i], std::to_string(i), scope);
    return std::move(diags_);
  }

private:
  void report(std::string code, const std::string &path, std::string reason) {
    diags_.push_back({std::move(code), path, std::move(reason)});
  }

  bool high() const { return m_.level == IRModule::Level::High; }

  void define(const Op &op, const std::string &path, std::set<ValueId> &scope) {
    if (!op.producesValue()) {
      if (op.result != kNoValue)
        report("UnexpectedResult", path, "op must not produce a value");
      return;
    }
    if (op.result == kNoValue || op.result >= m_.numValues()) {
      report("MissingType", path, "result has no symbol-table entry");
      return;
    }
    if (!defined_.insert(op.result).second)
      report("Redefinition", path, "value defined twice");
    scope.insert(op.result);
  }

  bool checkOperands(const Op &op, const std::string &path,
                     const std::set<ValueId> &scope) {
    bool ok = true;
    for (ValueId v : op.operands) {
      if (!scope.count(v)) {
        report("UndefinedValue", path,
               "operand is not defined in an enclosing scope");
        ok = false;
      }
    }
    return ok;
  }

  void checkArity(const Op &op, const std::string &path) {
    std::size_t n = op.operands.size();
    switch (op.kind) {
    case OpKind::Init:
      if (n != 0)
        report("Arity", path, "init takes no operands");
      break;
    case OpKind::Fill:
    case OpKind::Transpose:
    case OpKind::Yield:
    case OpKind::Print:
      if (n != 1)
        report("Arity", path, std::string(toString(op.kind)) +
                                  " takes exactly one operand");
      break;
    case OpKind::Mul:
    case OpKind::Add:
      if (high() ? n < 2 : n != 2)
        report("Arity", path,
               std::string(toString(op.kind)) +
                   (high() ? " needs at least two operands"
                           : " must be binary after optimization"));
      break;
    case OpKind::Equation:
      if (n != 0)
        report("Arity", path, "equation takes no operands");
      break;
    }
  }

  std::optional<Shape> shapeOf(ValueId v) const {
    auto it = shapes_.find(v);
    if (it == shapes_.end())
      return std::nullopt;
    return it->second;
  }

  void topLevel(const Op &op, const std::string &path,
                std::set<ValueId> &scope) {
    checkArity(op, path);
    bool operandsOk = checkOperands(op, path, scope);

    switch (op.kind) {
    case OpKind::Init: {
      define(op, path, scope);
      if (op.result < m_.numValues()) {
        const LinneaType &t = m_.typeOf(op.result);
        if (isTerm(t)) {
          report("InitTerm", path, "init must produce a matrix or identity");
        } else {
          checkConcrete(t, path);
          shapes_[op.result] = {dimsOf(t), elemOf(t)};
        }
      }
      break;
    }
    case OpKind::Fill: {
      if (!operandsOk || op.operands.empty())
        break;
      const LinneaType &t = m_.typeOf(op.operands.front());
      if (!std::holds_alternative<MatrixType>(t))
        report("FillType", path, "fill operand must be a matrix");
      else if (elemOf(t) != op.scalarKind)
        report("ElemMismatch", path,
               std::string("fill scalar is ") +
                   std::string(toString(op.scalarKind)) + " but matrix is " +
                   std::string(toString(elemOf(t))));
      break;
    }
    case OpKind::Print:
      if (m_.level == IRModule::Level::Low && operandsOk &&
          !op.operands.empty() && isTerm(m_.typeOf(op.operands.front())))
        report("UnresolvedTerm", path, "print of an unresolved term");
      break;
    case OpKind::Equation:
      equation(op, path, scope);
      break;
    case OpKind::Mul:
    case OpKind::Add:
    case OpKind::Transpose:
      if (high()) {
        report("OpOutsideEquation", path,
               std::string(toString(op.kind)) +
                   " may only appear inside an equation");
        define(op, path, scope);
        break;
      }
      compute(op, path, scope, operandsOk);
      break;
    case OpKind::Yield:
      report("YieldOutsideEquation", path,
             "yield may only appear inside an equation");
      break;
    }
  }

  void checkConcrete(const LinneaType &t, const std::string &path) {
    Dims d = dimsOf(t);
    if (d.rows <= 0 || d.cols <= 0)
      report("NonPositiveDimension", path, "dimensions must be positive");
    if (auto *mt = std::get_if<MatrixType>(&t))
      if (!mt->props.empty() && !d.square())
        report("NonSquareStructuralProperty", path,
               "structural property on non-square " + dimsStr(d));
  }

  void equation(const Op &op, const std::string &path,
                std::set<ValueId> &outer) {
    if (!high()) {
      report("EquationAtLowLevel", path,
             "equations must be rematerialized before lowering");
      return;
    }
    std::set<ValueId> scope = outer;
    std::size_t yields = 0;
    for (std::size_t j = 0; j < op.region.size(); ++j) {
      const Op &inner = op.region[j];
      std::string innerPath = path + "." + std::to_string(j);
      checkArity(inner, innerPath);
      bool operandsOk = checkOperands(inner, innerPath, scope);
      switch (inner.kind) {
      case OpKind::Mul:
      case OpKind::Add:
      case OpKind::Transpose:
        compute(inner, innerPath, scope, operandsOk);
        break;
      case OpKind::Yield:
        ++yields;
        if (j + 1 != op.region.size())
          report("YieldNotLast", innerPath, "yield must terminate the region");
        break;
      default:
        report("IllegalInRegion", innerPath,
               std::string(toString(inner.kind)) +
                   " is not allowed inside an equation");
      }
    }
    if (yields == 0)
      report("MissingYield", path, "equation region has no yield");
    else if (yields > 1)
      report("MultipleYield", path, "equation region has more than one yield");

    define(op, path, outer);
    if (op.result < m_.numValues() && !isTerm(m_.typeOf(op.result)))
      report("EquationType", path, "equation must produce a term");

    if (yields != 1 || op.region.back().kind != OpKind::Yield ||
        op.region.back().operands.size() != 1)
      return;
    auto shape = shapeOf(op.region.back().operands.front());
    if (!shape)
      return;
    shapes_[op.result] = *shape;
    if (op.declared) {
      if (!(op.declared->dims() == shape->dims))
        report("DimMismatch", path,
               "'" + op.label + "' is declared " +
                   dimsStr(op.declared->dims()) + " but assigned " +
                   dimsStr(shape->dims));
      else if (op.declared->elem != shape->elem)
        report("ElemMismatch", path,
               "'" + op.label + "' is declared " +
                   std::string(toString(op.declared->elem)) +
                   " but assigned " + std::string(toString(shape->elem)));
    }
  }

  void compute(const Op &op, const std::string &path, std::set<ValueId> &scope,
               bool operandsOk) {
    define(op, path, scope);
    if (!operandsOk || op.operands.empty())
      return;
    std::vector<Shape> in;
    for (ValueId v : op.operands) {
      auto s = shapeOf(v);
      if (!s)
        return; // an earlier diagnostic covers it
      in.push_back(*s);
    }
    for (const Shape &s : in)
      if (s.elem != in.front().elem) {
        report("ElemMismatch", path,
               std::string(toString(op.kind)) + " mixes " +
                   std::string(toString(in.front().elem)) + " and " +
                   std::string(toString(s.elem)));
        return;
      }

    Shape out{{}, in.front().elem};
    switch (op.kind) {
    case OpKind::Mul:
      for (std::size_t i = 0; i + 1 < in.size(); ++i)
        if (in[i].dims.cols != in[i + 1].dims.rows) {
          report("DimMismatch", path,
                 "mul operands " + std::to_string(i) + " and " +
                     std::to_string(i + 1) + ": " +
                     std::to_string(in[i].dims.cols) + " vs " +
                     std::to_string(in[i + 1].dims.rows));
          return;
        }
      out.dims = {in.front().dims.rows, in.back().dims.cols};
      break;
    case OpKind::Add:
      for (const Shape &s : in)
        if (!(s.dims == in.front().dims)) {
          report("DimMismatch", path,
                 "add operands " + dimsStr(in.front().dims) + " vs " +
                     dimsStr(s.dims));
          return;
        }
      out.dims = in.front().dims;
      break;
    case OpKind::Transpose:
      out.dims = {in.front().dims.cols, in.front().dims.rows};
      break;
    default:
      return;
    }
    shapes_[op.result] = out;

    if (op.result >= m_.numValues())
      return;
    const LinneaType &t = m_.typeOf(op.result);
    if (high())
      return; // results are terms until resolution
    if (isTerm(t)) {
      report("UnresolvedTerm", path, "value still has term type");
      return;
    }
    if (!(dimsOf(t) == out.dims) || elemOf(t) != out.elem) {
      report("DimMismatch", path,
             "result type " + printType(t) + " does not match computed " +
                 dimsStr(out.dims));
      return;
    }
    PropertySet expected;
    auto operandProps = [&](std::size_t i) {
      return propsOf(m_.typeOf(op.operands[i]));
    };
    if (op.kind == OpKind::Mul)
      expected = inferMul(operandProps(0), in[0].dims, operandProps(1),
                          in[1].dims);
    else if (op.kind == OpKind::Add)
      expected = inferAdd(operandProps(0), operandProps(1));
    else
      expected = inferTranspose(operandProps(0));
    if (!(propsOf(t) == expected))
      report("PropertyMismatch", path,
             "result properties " + propsOf(t).str() + " differ from inferred " +
                 expected.str());
  }

  const IRModule &m_;
  std::vector<Diagnostic> diags_;
  std::set<ValueId> defined_;
  std::map<ValueId, Shape> shapes_;
};

} // namespace

std::vector<Diagnostic> verify(const IRModule &m) { return Verifier(m).run(); }

void verifyOrThrow(const IRModule &m) {
  auto diags = verify(m);
  if (diags.empty())
    return;
  std::string msg;
  for (const Diagnostic &d : diags) {
    if (!msg.empty())
      msg += "\n";
    msg += d.str();
  }
  ErrorKind kind = ErrorKind::Verify;
  if (diags.front().code == "DimMismatch")
    kind = ErrorKind::DimMismatch;
  throw CompileError(kind, msg);
}

} // namespace mom
