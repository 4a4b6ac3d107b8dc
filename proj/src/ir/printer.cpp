// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "mom/ir.hpp"

#include "mom/format.hpp"

#include <map>

namespace mom {

namespace {

class IRPrinter {
public:
  explicit IRPrinter(const IRModule &m) : m_(m) {}

  std::string run() {
    for (const Op &op : m_.body)
      print(op, 0);
    return std::move(out_);
  }

private:
  // Values are renamed %0, %1, ... in order of first definition.
  std::string name(ValueId v) {
    auto [it, inserted] = names_.emplace(v, names_.size());
    (void)inserted;
    return "%" + std::to_string(it->second);
  }

  std::string ty(ValueId v) { return printType(m_.typeOf(v)); }

  void print(const Op &op, int depth) {
    std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
    std::string line = indent;
    if (op.producesValue())
      line += name(op.result) + " = ";
    line += toString(op.kind);

    switch (op.kind) {
    case OpKind::Init:
      line += " \"" + op.label + "\" : " + ty(op.result);
      break;
    case OpKind::Fill:
      line += " " + formatScalar(op.scalar) + ", " + name(op.operands[0]) +
              " : " + std::string(toString(op.scalarKind));
      break;
    case OpKind::Equation: {
      line += " \"" + op.label + "\"";
      if (op.declared)
        line += " <" + std::to_string(op.declared->rows) + "x" +
                std::to_string(op.declared->cols) + "x" +
                std::string(toString(op.declared->elem)) + ">";
      out_ += line + " {\n";
      for (const Op &inner : op.region)
        print(inner, depth + 1);
      out_ += indent + "} : " + ty(op.result) + "\n";
      return;
    }
    case OpKind::Mul:
    case OpKind::Add:
    case OpKind::Transpose: {
      std::string operands, types;
      for (std::size_t i = 0; i < op.operands.size(); ++i) {
        if (i) {
          operands += ", ";
          types += ", ";
        }
        operands += name(op.operands[i]);
        types += ty(op.operands[i]);
      }
      line += " " + operands + " : " + types + " -> " + ty(op.result);
      break;
    }
    case OpKind::Yield:
    case OpKind::Print:
      line += " " + name(op.operands[0]) + " : " + ty(op.operands[0]);
      break;
    }
    out_ += line + "\n";
  }

  const IRModule &m_;
  std::map<ValueId, std::size_t> names_;
  std::string out_;
};

} // namespace

std::string printIR(const IRModule &m) { return IRPrinter(m).run(); }

} // namespace mom
