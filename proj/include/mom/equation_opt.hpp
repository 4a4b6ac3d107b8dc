// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
//
// Equation processing: each Equation region is turned into a symbolic tree,
// identities are simplified away, term placeholders are resolved to concrete
// types, and the tree is rematerialized as binary low-level IR with
// multiplication chains in optimal order.

#pragma once

#include "mom/chain.hpp"
#include "mom/ir.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mom {

struct SymExpr {
  enum class Kind { Leaf, Mul, Add, Trans };

  Kind kind = Kind::Leaf;
  ValueId value = kNoValue; // Leaf
  std::vector<SymExpr> children;
  /// Always set on leaves; set on inner nodes by resolveTypes.
  std::optional<LinneaType> type;

  static SymExpr leaf(ValueId v, LinneaType t);
  static SymExpr node(Kind kind, std::vector<SymExpr> children);

  bool isIdentityLeaf() const;
  friend bool operator==(const SymExpr &, const SymExpr &) = default;
};

/// Walks the equation region backwards from its yield. Adjacent Mul/Add
/// nodes are flattened.
SymExpr symbolize(const Op &equation, const IRModule &m);

/// A*I -> A, I*I -> I, transpose(I) -> I; idempotent.
SymExpr simplifyIdentities(const SymExpr &e);

/// Bottom-up type inference. Throws DimMismatch on inconsistent shapes.
SymExpr resolveTypes(const SymExpr &e);

struct OptOptions {
  bool simplifyIdentities = true;
  bool reorderChains = true;
};

/// One variadic product seen by the optimizer.
struct ChainRecord {
  std::string equation; // assignment target, or "" for print(expr)
  std::vector<ChainOperand> operands;
  ChainSolution optimal;
  ChainTreePtr chosen; // optimal tree, or left-associated when not reordering
  Cost chosenCost = 0;
  Cost baselineCost = 0; // left-associated (source order)
};

struct OptResult {
  IRModule module; // Low level
  std::vector<ChainRecord> chains;
};

/// Emits binary ops for a resolved tree into `out` and returns the value
/// holding the result. Leaves must already refer to values of `out`.
ValueId rematerialize(const SymExpr &resolved, IRModule &out,
                      const OptOptions &opts,
                      const std::vector<std::string> &labels,
                      const std::string &equation,
                      std::vector<ChainRecord> *chains);

/// Processes every equation of a High-level module in program order and
/// returns the Low-level module.
OptResult optimizeEquations(const IRModule &m, const OptOptions &opts = {});

} // namespace mom
