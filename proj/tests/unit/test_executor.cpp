// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "mom/error.hpp"
#include "mom/executor.hpp"
#include "mom/format.hpp"
#include "mom/pipeline.hpp"

#include "random_program.hpp"

#include <doctest.h>

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

DenseBuffer randomBuffer(Dims d, ElemKind elem, StoredPattern p,
                         std::mt19937_64 &rng) {
  std::uniform_int_distribution<int> dist(-8, 8);
  DenseBuffer b(d, elem);
  for (std::int64_t i = 0; i < d.rows; ++i)
    for (std::int64_t j = 0; j < d.cols; ++j)
      if (patternContains(p, i, j))
        b.set(i, j, dist(rng));
  return b;
}

// Plain triple loop accumulating in the buffer's element type.
template <class T> DenseBuffer naive(const DenseBuffer &a, const DenseBuffer &b) {
  DenseBuffer out({a.rows(), b.cols()}, a.elem());
  for (std::int64_t i = 0; i < a.rows(); ++i)
    for (std::int64_t j = 0; j < b.cols(); ++j) {
      T acc = 0;
      for (std::int64_t k = 0; k < a.cols(); ++k)
        acc += static_cast<T>(a.at(i, k)) * static_cast<T>(b.at(k, j));
      out.set(i, j, acc);
    }
  return out;
}

std::string runText(const std::string &text, OptOptions opt, ExecMode mode) {
  PipelineOptions opts;
  opts.opt = opt;
  CompiledProgram p = compile(SourceProgram{text, "test"}, opts);
  return execute(p.loops, mode, 1).printedText();
}

} // namespace

TEST_CASE("fill respects the pattern") {
  DenseBuffer b({3, 3}, ElemKind::F32);
  runFill(b, 2.0, StoredPattern::LowerIncl);
  CHECK(b.at(2, 0) == 2.0);
  CHECK(b.at(0, 2) == 0.0);
  CHECK(offPatternZero(b, StoredPattern::LowerIncl));
  CHECK_FALSE(offPatternZero(b, StoredPattern::UpperIncl));
  CHECK(formatPrint(b) == "3x3 f32\n2 0 0\n2 2 0\n2 2 2");
}

TEST_CASE("the lower-triangular product of ones") {
  DenseBuffer a({5, 5}, ElemKind::F32), b({5, 5}, ElemKind::F32);
  runFill(a, 1, StoredPattern::LowerIncl);
  runFill(b, 1, StoredPattern::LowerIncl);
  PropertySet lower{Property::LowerTriangular};
  DenseBuffer dense({5, 5}, ElemKind::F32), fast({5, 5}, ElemKind::F32);
  CHECK(runMatmul(a, b, dense, lower, lower, ExecMode::Dense) == 125);
  CHECK(runMatmul(a, b, fast, lower, lower, ExecMode::Specialized) == 35);
  CHECK(dense == fast);
  for (std::int64_t i = 0; i < 5; ++i)
    for (std::int64_t j = 0; j < 5; ++j)
      CHECK(fast.at(i, j) == (i >= j ? i - j + 1 : 0));
}

TEST_CASE("count fidelity and mode equivalence for every pattern pair") {
  std::mt19937_64 rng(testing::baseSeed() + 7);
  for (StoredPattern pa : kAllPatterns)
    for (StoredPattern pb : kAllPatterns)
      for (std::int64_t m = 1; m <= 16; m += 3)
        for (std::int64_t p = 1; p <= 16; ++p)
          for (std::int64_t n = 1; n <= 16; n += 5) {
            std::int64_t rows = pa == StoredPattern::Full ? m : p;
            std::int64_t cols = pb == StoredPattern::Full ? n : p;
            PropertySet sa = setFor(pa), sb = setFor(pb);
            DenseBuffer a = randomBuffer({rows, p}, ElemKind::F64, pa, rng);
            DenseBuffer b = randomBuffer({p, cols}, ElemKind::F64, pb, rng);
            DenseBuffer d({rows, cols}, ElemKind::F64), s({rows, cols}, ElemKind::F64);
            Cost dc = runMatmul(a, b, d, sa, sb, ExecMode::Dense);
            Cost sc = runMatmul(a, b, s, sa, sb, ExecMode::Specialized);
            REQUIRE(dc == static_cast<Cost>(rows * p * cols));
            REQUIRE(sc == mulCost({{rows, p}, sa}, {{p, cols}, sb}));
            REQUIRE(d == s);
            REQUIRE(offPatternZero(s, storedPattern(inferMul(sa, {rows, p}, sb,
                                                             {p, cols}))));
          }
}

TEST_CASE("kernels match a naive reference in f32 and f64") {
  std::mt19937_64 rng(testing::baseSeed() + 8);
  std::uniform_int_distribution<std::int64_t> dim(1, 12);
  for (ElemKind elem : {ElemKind::F32, ElemKind::F64})
    for (int trial = 0; trial < 200; ++trial) {
      StoredPattern pa = kAllPatterns[trial % 4], pb = kAllPatterns[(trial / 4) % 4];
      std::int64_t p = dim(rng);
      std::int64_t m = pa == StoredPattern::Full ? dim(rng) : p;
      std::int64_t n = pb == StoredPattern::Full ? dim(rng) : p;
      DenseBuffer a = randomBuffer({m, p}, elem, pa, rng);
      DenseBuffer b = randomBuffer({p, n}, elem, pb, rng);
      DenseBuffer expected = elem == ElemKind::F32 ? naive<float>(a, b)
                                                   : naive<double>(a, b);
      for (ExecMode mode : {ExecMode::Dense, ExecMode::Specialized}) {
        DenseBuffer out({m, n}, elem);
        runMatmul(a, b, out, setFor(pa), setFor(pb), mode);
        CHECK(out == expected);
      }
    }
}

TEST_CASE("transpose and add") {
  DenseBuffer a({2, 3}, ElemKind::F64);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      a.set(i, j, i * 3 + j);
  DenseBuffer t({3, 2}, ElemKind::F64);
  runTranspose(a, t);
  CHECK(t.at(2, 1) == 5);
  CHECK(t.at(1, 0) == 1);
  DenseBuffer sum({2, 3}, ElemKind::F64);
  runAdd(a, a, sum);
  CHECK(sum.at(1, 2) == 10);

  DenseBuffer wrong({2, 2}, ElemKind::F64);
  CHECK_THROWS_AS(runTranspose(a, wrong), CompileError);
  DenseBuffer f32({2, 3}, ElemKind::F32);
  CHECK_THROWS_AS(runAdd(a, f32, sum), CompileError);
}

TEST_CASE("entry formatting") {
  CHECK(formatEntry(0.0) == "0");
  CHECK(formatEntry(-0.0) == "0");
  CHECK(formatEntry(35) == "35");
  CHECK(formatEntry(-4) == "-4");
  CHECK(formatEntry(2.5) == "2.5");
  CHECK(formatScalar(1.0) == "1");
  CHECK(formatScalar(-0.25) == "-0.25");
}

TEST_CASE("random programs agree across modes with sound zeros") {
  std::mt19937_64 rng(testing::baseSeed() + 9);
  testing::ProgramShape shape;
  shape.maxDim = 12;
  for (int trial = 0; trial < 100; ++trial) {
    std::string text = testing::randomProgram(rng, shape);
    CompiledProgram p = compile(SourceProgram{text, "test"});
    ExecOptions dense{ExecMode::Dense, 1, true};
    ExecOptions specialized{ExecMode::Specialized, 1, true};
    ExecutionReport d = execute(p.loops, dense);
    ExecutionReport s = execute(p.loops, specialized);
    CHECK_MESSAGE(d.printedText() == s.printedText(), text);
    CHECK(d.printed == s.printed);
    REQUIRE(s.tensors.size() == p.loops.tensors.size());
    for (std::size_t t = 0; t < s.tensors.size(); ++t) {
      StoredPattern pat = storedPattern(p.loops.tensors[t].props);
      CHECK(offPatternZero(s.tensors[t], pat));
      CHECK(offPatternZero(d.tensors[t], pat));
    }
    CHECK(s.totalMults <= d.totalMults);
  }
}

TEST_CASE("optimization preserves printed output") {
  std::mt19937_64 rng(testing::baseSeed() + 10);
  for (int trial = 0; trial < 100; ++trial) {
    std::string text = testing::randomProgram(rng, {});
    std::string plain = runText(text, {false, false}, ExecMode::Dense);
    std::string opt = runText(text, {}, ExecMode::Dense);
    CHECK_MESSAGE(plain == opt, text);
  }
}

TEST_CASE("dense counts equal predicted chain costs") {
  CompiledProgram p = compile(SourceProgram{
      "Matrix A(8, 11) <>\nMatrix B(11, 9) <>\nMatrix C(9, 12) <>\n"
      "Matrix D(12, 1) <>\nprint(A * B * C * D)\n",
      "test"});
  ExecutionReport r = execute(p.loops, ExecMode::Dense, 1);
  REQUIRE(p.optimized.chains.size() == 1);
  CHECK(r.totalMults == p.optimized.chains[0].chosenCost);

  CompiledProgram s = compile(SourceProgram{
      "Matrix L(7, 7) <LowerTriangular>\nMatrix U(7, 7) <UpperTriangular>\n"
      "Matrix F(7, 3) <>\nprint(L * U * F)\n",
      "test"});
  ExecutionReport rs = execute(s.loops, ExecMode::Specialized, 1);
  CHECK(rs.totalMults == s.optimized.chains[0].chosenCost);
}

TEST_CASE("report formats") {
  CompiledProgram p = compile(SourceProgram{
      "Matrix A(2, 2) <>\nMatrix B(2, 2) <>\nprint(A * B)\n", "test"});
  ExecutionReport r = execute(p.loops, ExecMode::Dense, 2);
  std::string kv = r.keyValues("x.");
  CHECK(kv.find("x.op5.mults=8\n") != std::string::npos);
  CHECK(kv.find("x.total.mults=8\n") != std::string::npos);
  CHECK(kv.find("x.total.min_ns=") != std::string::npos);
  CHECK(r.printedText() == "2x2 f32\n2 2\n2 2\n");
}
