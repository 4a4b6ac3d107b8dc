// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
//
// Property-typed linear-algebra IR.
//
// A module starts out at the High level: Mul/Add/Transpose live in Equation
// regions, are variadic, and produce `term` placeholders. Equation
// optimization rewrites it to the Low level: no Equation regions, binary
// Mul/Add at top level, every value concretely typed.

#pragma once

#include "mom/frontend.hpp"
#include "mom/properties.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace mom {

struct MatrixType {
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  ElemKind elem = ElemKind::F32;
  PropertySet props;

  Dims dims() const { return {rows, cols}; }
  friend bool operator==(const MatrixType &, const MatrixType &) = default;
};

struct IdentityType {
  std::int64_t order = 0;
  ElemKind elem = ElemKind::F32;

  friend bool operator==(const IdentityType &, const IdentityType &) = default;
};

struct TermType {
  friend bool operator==(const TermType &, const TermType &) = default;
};

using LinneaType = std::variant<MatrixType, IdentityType, TermType>;

bool isTerm(const LinneaType &t);
bool isIdentity(const LinneaType &t);
/// Shape of a concrete type; identities are order x order.
Dims dimsOf(const LinneaType &t);
ElemKind elemOf(const LinneaType &t);
/// Properties of a concrete type; an identity reports the diagonal set.
PropertySet propsOf(const LinneaType &t);

/// `matrix<5x5xf32,[lowerTri]>`, `identity<5xf32>`, `term`.
std::string printType(const LinneaType &t);

using ValueId = std::uint32_t;
inline constexpr ValueId kNoValue = ~ValueId{0};

enum class OpKind { Init, Fill, Equation, Mul, Add, Transpose, Yield, Print };

std::string_view toString(OpKind kind);

struct Op {
  explicit Op(OpKind k) : kind(k) {}

  OpKind kind;
  ValueId result = kNoValue;
  std::vector<ValueId> operands;

  double scalar = 0.0;                 // Fill
  ElemKind scalarKind = ElemKind::F32; // Fill
  std::vector<Op> region;              // Equation
  std::string label; // Init: declared name; Equation: assignment target
  std::optional<MatrixType> declared; // Equation: target declaration, if any

  bool producesValue() const {
    return kind != OpKind::Fill && kind != OpKind::Yield &&
           kind != OpKind::Print;
  }
};

class IRModule {
public:
  enum class Level { High, Low };

  Level level = Level::High;
  std::vector<Op> body;

  /// Symbol table: the type of every value, indexed by ValueId.
  const LinneaType &typeOf(ValueId v) const { return types_.at(v); }
  std::size_t numValues() const { return types_.size(); }
  ValueId addValue(LinneaType t);
  void setType(ValueId v, LinneaType t) { types_.at(v) = std::move(t); }

private:
  std::vector<LinneaType> types_;
};

IRModule buildIR(const Ast &resolved);

struct Diagnostic {
  std::string code;   // DimMismatch, MissingYield, ...
  std::string opPath; // e.g. "4" or "4.1" for an op inside an equation
  std::string reason;

  std::string str() const { return "op " + opPath + ": " + code + ": " + reason; }
};

/// Structural and shape checks. Empty result means the module is valid.
std::vector<Diagnostic> verify(const IRModule &m);

/// Throws CompileError(Verify) carrying every diagnostic.
void verifyOrThrow(const IRModule &m);

std::string printIR(const IRModule &m);

} // namespace mom
