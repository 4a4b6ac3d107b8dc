// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
//
// Loop-level IR: tensors plus a flat list of fill / matmul / transpose / add /
// print ops. Property annotations from the algebra IR are carried on every
// tensor.

#pragma once

#include "mom/ir.hpp"

#include <string>
#include <vector>

namespace mom {

using TensorId = std::uint32_t;

struct TensorInfo {
  Dims dims;
  ElemKind elem = ElemKind::F32;
  PropertySet props;
};

enum class LoopOpKind { AllocTensor, Fill, MatMul, Transpose, Add, Print };

struct LoopOp {
  explicit LoopOp(LoopOpKind k) : kind(k) {}

  LoopOpKind kind;
  TensorId out = 0;           // AllocTensor, Fill, MatMul, Transpose, Add, Print
  TensorId lhs = 0;           // MatMul, Transpose, Add
  TensorId rhs = 0;           // MatMul, Add
  double scalar = 0.0;        // Fill
  StoredPattern pattern = StoredPattern::Full; // Fill
  PropertySet lhsProps;       // MatMul
  PropertySet rhsProps;       // MatMul

  bool isCompute() const {
    return kind == LoopOpKind::MatMul || kind == LoopOpKind::Transpose ||
           kind == LoopOpKind::Add;
  }
};

struct LoopModule {
  std::vector<LoopOp> ops;
  std::vector<TensorInfo> tensors;
};

/// Requires a verified Low-level module. Throws UnresolvedTerm otherwise.
LoopModule lowerToLoops(const IRModule &m);

std::string printLoops(const LoopModule &lm);

} // namespace mom
