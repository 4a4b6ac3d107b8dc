// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "mom/ir.hpp"

namespace mom {

bool isTerm(const LinneaType &t) { return std::holds_alternative<TermType>(t); }

bool isIdentity(const LinneaType &t) {
  return std::holds_alternative<IdentityType>(t);
}

Dims dimsOf(const LinneaType &t) {
  if (auto *m = std::get_if<MatrixType>(&t))
    return m->dims();
  if (auto *i = std::get_if<IdentityType>(&t))
    return {i->order, i->order};
  return {};
}

ElemKind elemOf(const LinneaType &t) {
  if (auto *m = std::get_if<MatrixType>(&t))
    return m->elem;
  if (auto *i = std::get_if<IdentityType>(&t))
    return i->elem;
  return ElemKind::F32;
}

PropertySet propsOf(const LinneaType &t) {
  if (auto *m = std::get_if<MatrixType>(&t))
    return m->props;
  if (isIdentity(t))
    return PropertySet::diagonal();
  return {};
}

std::string printType(const LinneaType &t) {
  if (auto *m = std::get_if<MatrixType>(&t))
    return "matrix<" + std::to_string(m->rows) + "x" + std::to_string(m->cols) +
           "x" + std::string(toString(m->elem)) + "," + m->props.str() + ">";
  if (auto *i = std::get_if<IdentityType>(&t))
    return "identity<" + std::to_string(i->order) + "x" +
           std::string(toString(i->elem)) + ">";
  return "term";
}

std::string_view toString(OpKind kind) {
  switch (kind) {
  case OpKind::Init:
    return "linnea.init";
  case OpKind::Fill:
    return "linnea.fill";
  case OpKind::Equation:
    return "linnea.equation";
  case OpKind::Mul:
    return "linnea.mul";
  case OpKind::Add:
    return "linnea.add";
  case OpKind::Transpose:
    return "linnea.transpose";
  case OpKind::Yield:
    return "linnea.yield";
  case OpKind::Print:
    return "linnea.print";
  }
  return "?";
}

ValueId IRModule::addValue(LinneaType t) {
  types_.push_back(std::move(t));
  return static_cast<ValueId>(types_.size() - 1);
}

} // namespace mom
