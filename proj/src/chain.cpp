// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "mom/chain.hpp"

#include "mom/error.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <limits>
#include <sstream>

namespace mom {

namespace {

void checkConforming(const TypedShape &a, const TypedShape &b) {
  if (a.dims.cols != b.dims.rows)
    throw CompileError(ErrorKind::DimMismatch,
                       "cannot multiply " + std::to_string(a.dims.rows) + "x" +
                           std::to_string(a.dims.cols) + " by " +
                           std::to_string(b.dims.rows) + "x" +
                           std::to_string(b.dims.cols));
}

void checkChain(std::span<const ChainOperand> chain) {
  if (chain.empty())
    throw CompileError(ErrorKind::DimMismatch, "empty chain");
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    checkConforming(chain[i].shape(), chain[i + 1].shape());
}

Cost triangle(Cost p) { return p * (p + 1) / 2; }

} // namespace

Cost mulCost(const TypedShape &a, const TypedShape &b) {
  checkConforming(a, b);
  const Cost m = static_cast<Cost>(a.dims.rows);
  const Cost p = static_cast<Cost>(a.dims.cols);
  const Cost n = static_cast<Cost>(b.dims.cols);
  const StoredPattern pa = storedPattern(a.props);
  const StoredPattern pb = storedPattern(b.props);

  using P = StoredPattern;
  auto triangular = [](P x) { return x == P::LowerIncl || x == P::UpperIncl; };

  if (pa == P::Full && pb == P::Full)
    return m * p * n;
  if (pa == P::Full)
    return pb == P::DiagOnly ? m * p : m * triangle(p);
  if (pb == P::Full)
    return pa == P::DiagOnly ? p * n : triangle(p) * n;
  // Both structured, hence both p x p.
  if (pa == P::DiagOnly && pb == P::DiagOnly)
    return p;
  if (pa == P::DiagOnly || pb == P::DiagOnly)
    return triangle(p);
  assert(triangular(pa) && triangular(pb));
  (void)triangular;
  if (pa == pb) // sum over k of (p-k)(k+1)
    return p * (p + 1) * (p + 2) / 6;
  // sum over k of (p-k)^2
  return p * (p + 1) * (2 * p + 1) / 6;
}

Cost costOracle(const TypedShape &a, const TypedShape &b) {
  checkConforming(a, b);
  const StoredPattern pa = storedPattern(a.props);
  const StoredPattern pb = storedPattern(b.props);
  Cost count = 0;
  for (std::int64_t i = 0; i < a.dims.rows; ++i)
    for (std::int64_t j = 0; j < b.dims.cols; ++j)
      for (std::int64_t k = 0; k < a.dims.cols; ++k)
        if (patternContains(pa, i, k) && patternContains(pb, k, j))
          ++count;
  return count;
}

ChainTreePtr makeLeaf(std::size_t index) {
  auto t = std::make_shared<ChainTree>();
  t->first = t->last = index;
  return t;
}

ChainTreePtr makeNode(ChainTreePtr left, ChainTreePtr right) {
  assert(left->last + 1 == right->first);
  auto t = std::make_shared<ChainTree>();
  t->first = left->first;
  t->last = right->last;
  t->left = std::move(left);
  t->right = std::move(right);
  return t;
}

ChainTreePtr leftAssociated(std::size_t length) {
  ChainTreePtr tree = makeLeaf(0);
  for (std::size_t i = 1; i < length; ++i)
    tree = makeNode(tree, makeLeaf(i));
  return tree;
}

std::string formatTree(const ChainTree &tree,
                       std::span<const ChainOperand> chain) {
  if (tree.isLeaf())
    return chain[tree.first].label;
  return "(" + formatTree(*tree.left, chain) + "*" +
         formatTree(*tree.right, chain) + ")";
}

bool sameShape(const ChainTree &a, const ChainTree &b) {
  if (a.first != b.first || a.last != b.last || a.isLeaf() != b.isLeaf())
    return false;
  return a.isLeaf() ||
         (sameShape(*a.left, *b.left) && sameShape(*a.right, *b.right));
}

EvaluatedTree evaluateTree(const ChainTree &tree,
                           std::span<const ChainOperand> chain) {
  if (tree.isLeaf())
    return {0, chain[tree.first].shape()};
  EvaluatedTree l = evaluateTree(*tree.left, chain);
  EvaluatedTree r = evaluateTree(*tree.right, chain);
  Cost here = mulCost(l.result, r.result);
  TypedShape out{{l.result.dims.rows, r.result.dims.cols},
                 inferMul(l.result.props, l.result.dims, r.result.props,
                          r.result.dims)};
  return {l.cost + r.cost + here, out};
}

ChainSolution::ChainSolution(std::size_t length)
    : n_(length), cost_(length * length, 0), split_(length * length, 0),
      type_(length * length) {}

ChainSolution optimalParenthesization(std::span<const ChainOperand> chain) {
  checkChain(chain);
  const std::size_t n = chain.size();
  ChainSolution sol(n);
  auto at = [n](std::size_t i, std::size_t j) { return i * n + j; };

  for (std::size_t i = 0; i < n; ++i)
    sol.type_[at(i, i)] = chain[i].shape();

  for (std::size_t len = 2; len <= n; ++len) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      const std::size_t j = i + len - 1;
      Cost best = std::numeric_limits<Cost>::max();
      std::size_t bestSplit = i;
      for (std::size_t s = i; s < j; ++s) {
        Cost c = sol.cost_[at(i, s)] + sol.cost_[at(s + 1, j)] +
                 mulCost(sol.type_[at(i, s)], sol.type_[at(s + 1, j)]);
        if (c < best) {
          best = c;
          bestSplit = s;
        }
      }
      const TypedShape &l = sol.type_[at(i, bestSplit)];
      const TypedShape &r = sol.type_[at(bestSplit + 1, j)];
      sol.cost_[at(i, j)] = best;
      sol.split_[at(i, j)] = bestSplit;
      sol.type_[at(i, j)] = {{l.dims.rows, r.dims.cols},
                             inferMul(l.props, l.dims, r.props, r.dims)};
    }
  }

  std::function<ChainTreePtr(std::size_t, std::size_t)> build =
      [&](std::size_t i, std::size_t j) -> ChainTreePtr {
    if (i == j)
      return makeLeaf(i);
    std::size_t s = sol.split_[at(i, j)];
    return makeNode(build(i, s), build(s + 1, j));
  };
  sol.tree_ = build(0, n - 1);
  return sol;
}

std::string ChainSolution::describe(std::span<const ChainOperand> chain) const {
  std::ostringstream os;
  os << "operands:\n";
  for (std::size_t i = 0; i < n_; ++i)
    os << "  " << i << ": " << chain[i].label << " " << chain[i].dims.rows
       << "x" << chain[i].dims.cols << " " << chain[i].props.str() << "\n";
  os << "cost m[i][j]:\n";
  for (std::size_t i = 0; i < n_; ++i) {
    os << " ";
    for (std::size_t j = 0; j < n_; ++j) {
      os << " ";
      if (j < i)
        os << "-";
      else
        os << cost(i, j);
    }
    os << "\n";
  }
  os << "split s[i][j]:\n";
  for (std::size_t i = 0; i < n_; ++i) {
    os << " ";
    for (std::size_t j = 0; j < n_; ++j) {
      os << " ";
      if (j <= i)
        os << "-";
      else
        os << split(i, j);
    }
    os << "\n";
  }
  const TypedShape &result = type(0, n_ - 1);
  os << "result: " << result.dims.rows << "x" << result.dims.cols << " "
     << result.props.str() << "\n";
  os << "optimal: " << formatTree(*tree_, chain) << " cost=" << totalCost()
     << "\n";
  return os.str();
}

std::vector<std::pair<ChainTreePtr, Cost>>
enumerateParenthesizations(std::span<const ChainOperand> chain) {
  checkChain(chain);
  if (chain.size() > kMaxEnumeratedChain)
    throw CompileError(ErrorKind::ChainTooLong,
                       "refusing to enumerate a chain of " +
                           std::to_string(chain.size()) + " operands");

  std::function<std::vector<ChainTreePtr>(std::size_t, std::size_t)> trees =
      [&](std::size_t i, std::size_t j) {
        std::vector<ChainTreePtr> out;
        if (i == j) {
          out.push_back(makeLeaf(i));
          return out;
        }
        for (std::size_t s = i; s < j; ++s)
          for (const ChainTreePtr &l : trees(i, s))
            for (const ChainTreePtr &r : trees(s + 1, j))
              out.push_back(makeNode(l, r));
        return out;
      };

  std::vector<std::pair<ChainTreePtr, Cost>> out;
  for (ChainTreePtr &t : trees(0, chain.size() - 1)) {
    Cost c = evaluateTree(*t, chain).cost;
    out.emplace_back(std::move(t), c);
  }
  return out;
}

} // namespace mom
