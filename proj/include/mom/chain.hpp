// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
//
// Generalized matrix-chain ordering: interval dynamic programming where the
// cost of each product depends on the structure of its operands, and every
// subchain carries its inferred properties.

#pragma once

#include "mom/properties.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mom {

/// Exact count of scalar multiplications.
using Cost = std::uint64_t;

struct TypedShape {
  Dims dims;
  PropertySet props;

  friend bool operator==(const TypedShape &, const TypedShape &) = default;
};

struct ChainOperand {
  Dims dims;
  PropertySet props;
  std::string label; // used when rendering trees, e.g. "A1"

  TypedShape shape() const { return {dims, props}; }
};

/// Number of triples (i, j, k) with a(i,k) and b(k,j) both inside their
/// stored patterns, computed in closed form. Throws DimMismatch.
Cost mulCost(const TypedShape &a, const TypedShape &b);

/// Same quantity by direct enumeration of every triple. Independent of
/// mulCost; meant for small shapes.
Cost costOracle(const TypedShape &a, const TypedShape &b);

/// Binary parenthesization over operands [first, last].
struct ChainTree {
  std::size_t first = 0;
  std::size_t last = 0;
  std::shared_ptr<const ChainTree> left;
  std::shared_ptr<const ChainTree> right;

  bool isLeaf() const { return !left; }
};
using ChainTreePtr = std::shared_ptr<const ChainTree>;

ChainTreePtr makeLeaf(std::size_t index);
ChainTreePtr makeNode(ChainTreePtr left, ChainTreePtr right);
/// ((A1*A2)*A3)*... : the order in which the chain was written.
ChainTreePtr leftAssociated(std::size_t length);

/// `(A1*(A2*(A3*A4)))`; a single operand renders as its bare label.
std::string formatTree(const ChainTree &tree,
                       std::span<const ChainOperand> chain);
bool sameShape(const ChainTree &a, const ChainTree &b);

struct EvaluatedTree {
  Cost cost = 0;
  TypedShape result;
};

/// Cost and inferred result of multiplying `chain` in the order of `tree`.
EvaluatedTree evaluateTree(const ChainTree &tree,
                           std::span<const ChainOperand> chain);

class ChainSolution {
public:
  explicit ChainSolution(std::size_t length);

  std::size_t length() const { return n_; }
  Cost cost(std::size_t i, std::size_t j) const { return cost_[i * n_ + j]; }
  std::size_t split(std::size_t i, std::size_t j) const {
    return split_[i * n_ + j];
  }
  const TypedShape &type(std::size_t i, std::size_t j) const {
    return type_[i * n_ + j];
  }
  Cost totalCost() const { return cost(0, n_ - 1); }
  const ChainTreePtr &tree() const { return tree_; }

  /// Cost table, split table and final parenthesization as text.
  std::string describe(std::span<const ChainOperand> chain) const;

private:
  friend ChainSolution optimalParenthesization(std::span<const ChainOperand>);

  std::size_t n_;
  std::vector<Cost> cost_;
  std::vector<std::size_t> split_;
  std::vector<TypedShape> type_;
  ChainTreePtr tree_;
};

/// O(k^3) interval DP. Ties go to the smallest split index.
ChainSolution optimalParenthesization(std::span<const ChainOperand> chain);

inline constexpr std::size_t kMaxEnumeratedChain = 10;

/// Every binary tree over the chain with its exact cost (Catalan(k-1) of
/// them). Throws ChainTooLong above kMaxEnumeratedChain operands.
std::vector<std::pair<ChainTreePtr, Cost>>
enumerateParenthesizations(std::span<const ChainOperand> chain);

} // namespace mom
