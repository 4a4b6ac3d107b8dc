// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "mom/error.hpp"
#include "mom/pipeline.hpp"

#include "random_program.hpp"

#include <doctest.h>

using namespace mom;

namespace {

CompiledProgram compileText(const std::string &text, OptOptions opt = {}) {
  PipelineOptions opts;
  opts.opt = opt;
  return compile(SourceProgram{text, "test"}, opts);
}

std::size_t count(const LoopModule &lm, LoopOpKind kind) {
  std::size_t n = 0;
  for (const LoopOp &op : lm.ops)
    n += op.kind == kind;
  return n;
}

} // namespace

TEST_CASE("golden loop dump") {
  SourceProgram src = readSourceFile(MOM_SAMPLES_DIR "/lower_product.mom");
  CompiledProgram p = compile(src);
  CHECK(printLoops(p.loops) ==
        readSourceFile(MOM_GOLDEN_DIR "/lower_product.loops").text);
  CHECK(printIR(p.optimized.module) ==
        readSourceFile(MOM_GOLDEN_DIR "/lower_product.ir-opt").text);
}

TEST_CASE("lowering maps one compute op per IR op") {
  std::mt19937_64 rng(testing::baseSeed() + 6);
  for (int trial = 0; trial < 100; ++trial) {
    std::string text = testing::randomProgram(rng, {});
    CompiledProgram p = compileText(text);
    const IRModule &m = p.optimized.module;

    std::size_t irCompute = 0, produced = 0, irPrints = 0;
    for (const Op &op : m.body) {
      bool compute = op.kind == OpKind::Mul || op.kind == OpKind::Add ||
                     op.kind == OpKind::Transpose;
      irCompute += compute;
      produced += op.producesValue();
      irPrints += op.kind == OpKind::Print;
    }
    std::size_t loopCompute = 0;
    for (const LoopOp &op : p.loops.ops)
      loopCompute += op.isCompute();
    CHECK_MESSAGE(loopCompute == irCompute, text);
    CHECK(count(p.loops, LoopOpKind::AllocTensor) == produced);
    CHECK(count(p.loops, LoopOpKind::Print) == irPrints);
    CHECK(p.loops.tensors.size() == produced);

    // Every tensor carries the property set of the value it came from, and
    // matmul annotations match their operand tensors.
    std::size_t t = 0;
    for (const Op &op : m.body)
      if (op.producesValue()) {
        CHECK(p.loops.tensors[t].props == propsOf(m.typeOf(op.result)));
        CHECK(p.loops.tensors[t].dims == dimsOf(m.typeOf(op.result)));
        ++t;
      }
    for (const LoopOp &op : p.loops.ops)
      if (op.kind == LoopOpKind::MatMul) {
        CHECK(op.lhsProps == p.loops.tensors[op.lhs].props);
        CHECK(op.rhsProps == p.loops.tensors[op.rhs].props);
      }
  }
}

TEST_CASE("prints keep their order") {
  CompiledProgram p = compileText("Matrix A(2,2) <> = 1\nMatrix B(2,2) <> = 2\n"
                                  "print(B)\nprint(A * B)\nprint(A)\n");
  std::vector<TensorId> printed;
  for (const LoopOp &op : p.loops.ops)
    if (op.kind == LoopOpKind::Print)
      printed.push_back(op.out);
  REQUIRE(printed.size() == 3);
  CHECK(printed[0] == 1);
  CHECK(printed[2] == 0);
}

TEST_CASE("identities lower to a diagonal fill") {
  CompiledProgram p = compileText("Identity I(3)\nprint(I)\n");
  REQUIRE(p.loops.ops.size() == 3);
  CHECK(p.loops.ops[1].kind == LoopOpKind::Fill);
  CHECK(p.loops.ops[1].pattern == StoredPattern::DiagOnly);
  CHECK(p.loops.ops[1].scalar == 1.0);
}

TEST_CASE("high-level modules are rejected") {
  CompiledProgram p = compileText("Matrix A(2,2) <>\nprint(A * A)\n");
  CHECK_THROWS_AS(lowerToLoops(p.ir), CompileError);
}
