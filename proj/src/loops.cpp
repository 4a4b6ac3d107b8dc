// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "mom/loops.hpp"

#include "mom/error.hpp"
#include "mom/format.hpp"

#include <map>

namespace mom {

namespace {

class Lowering {
public:
  explicit Lowering(const IRModule &m) : m_(m) {}

  LoopModule run() {
    if (m_.level != IRModule::Level::Low)
      throw CompileError(ErrorKind::UnresolvedTerm,
                         "module still contains equations");
    for (const Op &op : m_.body)
      lower(op);
    return std::move(lm_);
  }

private:
  TensorId alloc(ValueId v) {
    const LinneaType &t = m_.typeOf(v);
    if (isTerm(t))
      throw CompileError(ErrorKind::UnresolvedTerm,
                         "value %" + std::to_string(v) + " has term type");
    auto id = static_cast<TensorId>(lm_.tensors.size());
    lm_.tensors.push_back({dimsOf(t), elemOf(t), propsOf(t)});
    LoopOp op{LoopOpKind::AllocTensor};
    op.out = id;
    lm_.ops.push_back(op);
    tensorOf_[v] = id;
    return id;
  }

  TensorId use(ValueId v) const {
    auto it = tensorOf_.find(v);
    if (it == tensorOf_.end())
      throw CompileError(ErrorKind::Verify,
                         "value %" + std::to_string(v) + " used before init");
    return it->second;
  }

  void lower(const Op &op) {
    switch (op.kind) {
    case OpKind::Init: {
      TensorId t = alloc(op.result);
      if (isIdentity(m_.typeOf(op.result))) {
        LoopOp fill{LoopOpKind::Fill};
        fill.out = t;
        fill.scalar = 1.0;
        fill.pattern = StoredPattern::DiagOnly;
        lm_.ops.push_back(fill);
      }
      return;
    }
    case OpKind::Fill: {
      LoopOp fill{LoopOpKind::Fill};
      fill.out = use(op.operands[0]);
      fill.scalar = op.scalar;
      fill.pattern = storedPattern(lm_.tensors[fill.out].props);
      lm_.ops.push_back(fill);
      return;
    }
    case OpKind::Mul: {
      TensorId a = use(op.operands[0]), b = use(op.operands[1]);
      TensorId out = alloc(op.result);
      LoopOp mm{LoopOpKind::MatMul};
      mm.lhs = a;
      mm.rhs = b;
      mm.out = out;
      mm.lhsProps = lm_.tensors[a].props;
      mm.rhsProps = lm_.tensors[b].props;
      lm_.ops.push_back(mm);
      return;
    }
    case OpKind::Transpose: {
      TensorId a = use(op.operands[0]);
      LoopOp tr{LoopOpKind::Transpose};
      tr.lhs = a;
      tr.out = alloc(op.result);
      lm_.ops.push_back(tr);
      return;
    }
    case OpKind::Add: {
      TensorId a = use(op.operands[0]), b = use(op.operands[1]);
      LoopOp add{LoopOpKind::Add};
      add.lhs = a;
      add.rhs = b;
      add.out = alloc(op.result);
      lm_.ops.push_back(add);
      return;
    }
    case OpKind::Print: {
      LoopOp pr{LoopOpKind::Print};
      pr.out = use(op.operands[0]);
      lm_.ops.push_back(pr);
      return;
    }
    case OpKind::Equation:
    case OpKind::Yield:
      throw CompileError(ErrorKind::UnresolvedTerm,
                         "equation survived to loop lowering");
    }
  }

  const IRModule &m_;
  LoopModule lm_;
  std::map<ValueId, TensorId> tensorOf_;
};

std::string shape(const TensorInfo &t) {
  return std::to_string(t.dims.rows) + "x" + std::to_string(t.dims.cols) +
         "x" + std::string(toString(t.elem));
}

} // namespace

LoopModule lowerToLoops(const IRModule &m) { return Lowering(m).run(); }

std::string printLoops(const LoopModule &lm) {
  std::string out;
  auto name = [](TensorId t) { return "%" + std::to_string(t); };
  auto annotated = [&](TensorId t) {
    return name(t) + lm.tensors[t].props.str();
  };
  for (const LoopOp &op : lm.ops) {
    switch (op.kind) {
    case LoopOpKind::AllocTensor:
      out += name(op.out) + " = alloc_tensor : " + shape(lm.tensors[op.out]) +
             lm.tensors[op.out].props.str();
      break;
    case LoopOpKind::Fill:
      out += "fill " + name(op.out) + ", " + formatScalar(op.scalar) +
             " : pattern=" + std::string(toString(op.pattern));
      break;
    case LoopOpKind::MatMul:
      out += "matmul " + name(op.lhs) + op.lhsProps.str() + ", " +
             name(op.rhs) + op.rhsProps.str() + " -> " + annotated(op.out) +
             " : " + shape(lm.tensors[op.out]);
      break;
    case LoopOpKind::Transpose:
      out += "transpose " + annotated(op.lhs) + " -> " + annotated(op.out) +
             " : " + shape(lm.tensors[op.out]);
      break;
    case LoopOpKind::Add:
      out += "add " + annotated(op.lhs) + ", " + annotated(op.rhs) + " -> " +
             annotated(op.out) + " : " + shape(lm.tensors[op.out]);
      break;
    case LoopOpKind::Print:
      out += "print " + name(op.out);
      break;
    }
    out += "\n";
  }
  return out;
}

} // namespace mom
