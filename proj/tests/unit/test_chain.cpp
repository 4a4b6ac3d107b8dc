// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "mom/chain.hpp"
#include "mom/error.hpp"

#include "random_program.hpp"

#include <doctest.h>

#include <algorithm>
#include <limits>

using namespace mom;

namespace {

PropertySet setFor(StoredPattern p) {
  switch (p) {
  case StoredPattern::Full:
    return {};
  case StoredPattern::LowerIncl:
    return {Property::LowerTriangular};
  case StoredPattern::UpperIncl:
    return {Property::UpperTriangular};
  case StoredPattern::DiagOnly:
    return PropertySet::diagonal();
  }
  return {};
}

TypedShape shape(std::int64_t r, std::int64_t c, PropertySet p = {}) {
  return {{r, c}, p};
}

std::vector<ChainOperand> chainOf(std::vector<std::int64_t> dims) {
  std::vector<ChainOperand> chain;
  for (std::size_t i = 0; i + 1 < dims.size(); ++i)
    chain.push_back({{dims[i], dims[i + 1]}, {}, "A" + std::to_string(i + 1)});
  return chain;
}

} // namespace

TEST_CASE("cost examples") {
  PropertySet lower{Property::LowerTriangular};
  PropertySet upper{Property::UpperTriangular};
  CHECK(mulCost(shape(2, 2, lower), shape(2, 2, upper)) == 5);
  CHECK(mulCost(shape(3, 3, lower), shape(3, 3, lower)) == 10);
  CHECK(mulCost(shape(3, 3, PropertySet::diagonal()), shape(3, 2)) == 6);
  CHECK(mulCost(shape(5, 5, lower), shape(5, 5, lower)) == 35);
  CHECK(mulCost(shape(800, 1100), shape(1100, 900)) == 792000000ULL);
  // Symmetric operands are costed as full.
  CHECK(mulCost(shape(4, 4, {Property::Symmetric}), shape(4, 4)) == 64);
  CHECK_THROWS_AS(mulCost(shape(2, 3), shape(4, 2)), CompileError);
}

TEST_CASE("closed forms equal the triple-count oracle for every pattern pair") {
  std::size_t checked = 0;
  for (StoredPattern pa : kAllPatterns)
    for (StoredPattern pb : kAllPatterns) {
      bool sqA = pa != StoredPattern::Full, sqB = pb != StoredPattern::Full;
      for (std::int64_t m = 1; m <= 16; ++m)
        for (std::int64_t p = 1; p <= 16; ++p)
          for (std::int64_t n = 1; n <= 16; ++n) {
            if ((sqA && m != p) || (sqB && n != p))
              continue;
            TypedShape a = shape(m, p, setFor(pa)), b = shape(p, n, setFor(pb));
            REQUIRE(mulCost(a, b) == costOracle(a, b));
            ++checked;
          }
    }
  // 16^3 + 2 * 3 * 16^2 + 9 * 16
  CHECK(checked == 4096 + 6 * 256 + 9 * 16);
}

TEST_CASE("the four-matrix chain") {
  auto chain = chainOf({800, 1100, 900, 1200, 100});
  ChainSolution sol = optimalParenthesization(chain);
  CHECK(sol.totalCost() == 295000000ULL);
  CHECK(formatTree(*sol.tree(), chain) == "(A1*(A2*(A3*A4)))");
  CHECK(evaluateTree(*leftAssociated(4), chain).cost == 1752000000ULL);

  auto all = enumerateParenthesizations(chain);
  REQUIRE(all.size() == 5);
  Cost best = std::numeric_limits<Cost>::max();
  for (auto &[tree, cost] : all)
    best = std::min(best, cost);
  CHECK(best == 295000000ULL);

  CHECK(sol.cost(0, 1) == 792000000ULL);
  CHECK(sol.cost(1, 3) == 207000000ULL);
  CHECK(sol.split(0, 3) == 0);
}

TEST_CASE("tables satisfy the recurrence") {
  auto chain = chainOf({10, 30, 5, 60, 10, 20});
  ChainSolution sol = optimalParenthesization(chain);
  for (std::size_t i = 0; i < chain.size(); ++i) {
    CHECK(sol.cost(i, i) == 0);
    CHECK(sol.type(i, i) == chain[i].shape());
  }
  for (std::size_t len = 2; len <= chain.size(); ++len)
    for (std::size_t i = 0; i + len <= chain.size(); ++i) {
      std::size_t j = i + len - 1, s = sol.split(i, j);
      CHECK(sol.cost(i, j) ==
            sol.cost(i, s) + sol.cost(s + 1, j) +
                mulCost(sol.type(i, s), sol.type(s + 1, j)));
    }
}

TEST_CASE("ties go to the smallest split") {
  auto chain = chainOf({2, 2, 2, 2});
  ChainSolution sol = optimalParenthesization(chain);
  CHECK(sol.split(0, 2) == 0);
  CHECK(formatTree(*sol.tree(), chain) == "(A1*(A2*A3))");
}

TEST_CASE("structure changes the optimal order") {
  // Unstructured, the left product is cheaper (512 vs 768); with two
  // diagonal operands the right product costs 8 + 32.
  std::vector<ChainOperand> chain{{{4, 8}, {}, "A"},
                                  {{8, 8}, PropertySet::diagonal(), "D1"},
                                  {{8, 8}, PropertySet::diagonal(), "D2"}};
  ChainSolution sol = optimalParenthesization(chain);
  CHECK(formatTree(*sol.tree(), chain) == "(A*(D1*D2))");
  CHECK(sol.totalCost() == 40);
  auto dense = chain;
  for (ChainOperand &op : dense)
    op.props = {};
  CHECK(formatTree(*optimalParenthesization(dense).tree(), dense) ==
        "((A*D1)*D2)");
}

TEST_CASE("single operand and limits") {
  auto one = chainOf({3, 4});
  ChainSolution sol = optimalParenthesization(one);
  CHECK(sol.totalCost() == 0);
  CHECK(formatTree(*sol.tree(), one) == "A1");
  auto eleven = chainOf({2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2});
  CHECK_THROWS_AS(enumerateParenthesizations(eleven), CompileError);
}

TEST_CASE("DP equals the exhaustive minimum on random chains") {
  std::mt19937_64 rng(testing::baseSeed() + 3);
  for (int trial = 0; trial < 200; ++trial) {
    auto chain = testing::randomChain(rng, 2, 8, 50);
    ChainSolution sol = optimalParenthesization(chain);
    auto all = enumerateParenthesizations(chain);
    Cost best = std::numeric_limits<Cost>::max();
    for (auto &[tree, cost] : all) {
      best = std::min(best, cost);
      // Every tree agrees on the result type.
      CHECK(evaluateTree(*tree, chain).result == sol.type(0, chain.size() - 1));
    }
    CHECK(sol.totalCost() == best);
    CHECK(evaluateTree(*sol.tree(), chain).cost == sol.totalCost());
  }
}

TEST_CASE("subchain costs are lower bounds on every subtree") {
  std::mt19937_64 rng(testing::baseSeed() + 4);
  for (int trial = 0; trial < 50; ++trial) {
    auto chain = testing::randomChain(rng, 2, 6, 20);
    ChainSolution sol = optimalParenthesization(chain);
    for (std::size_t i = 0; i < chain.size(); ++i)
      for (std::size_t j = i; j < chain.size(); ++j) {
        std::span<const ChainOperand> sub(chain.data() + i, j - i + 1);
        for (auto &[tree, cost] : enumerateParenthesizations(sub))
          CHECK(sol.cost(i, j) <= cost);
      }
  }
}

TEST_CASE("tree helpers") {
  auto chain = chainOf({2, 3, 4, 5});
  CHECK(formatTree(*leftAssociated(3), chain) == "((A1*A2)*A3)");
  CHECK(sameShape(*leftAssociated(3), *leftAssociated(3)));
  CHECK_FALSE(sameShape(*leftAssociated(3),
                        *makeNode(makeLeaf(0), makeNode(makeLeaf(1), makeLeaf(2)))));
  std::string text = optimalParenthesization(chain).describe(chain);
  CHECK(text.find("optimal:") != std::string::npos);
}
