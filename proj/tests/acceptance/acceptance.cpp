// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
//
// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include "mom/error.hpp"
#include "mom/pipeline.hpp"

#include "random_program.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>

using namespace mom;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool cond, const std::string &what) {
    if (!cond && pass) {
      pass = false;
      detail = what;
    }
  }
};

double seconds(const std::function<void()> &fn) {
  auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

SourceProgram source(std::string text) { return {std::move(text), "acceptance"}; }

Outcome chainReordering() {
  Outcome o;
  SourceProgram src = readSourceFile(MOM_SAMPLES_DIR "/chain4.mom");
  CompiledProgram p = compile(src);
  o.require(p.optimized.chains.size() == 1, "expected one chain");
  if (!o.pass)
    return o;
  const ChainRecord &c = p.optimized.chains[0];
  std::string tree = formatTree(*c.chosen, c.operands);
  o.require(tree == "(A1*(A2*(A3*A4)))", "tree " + tree);
  o.require(c.chosenCost == 295000000ULL,
            "optimal cost " + std::to_string(c.chosenCost));
  o.require(c.baselineCost == 1752000000ULL,
            "baseline cost " + std::to_string(c.baselineCost));

  BenchReport small;
  double smallSecs =
      seconds([&] { small = bench(src, 4, ExecMode::Dense, 5); });
  o.require(smallSecs < 10.0, "--scale=4 took " + fixed(smallSecs, 2) + " s");

  BenchReport full;
  double fullSecs = seconds([&] { full = bench(src, 1, ExecMode::Dense, 5); });
  o.require(fullSecs < 300.0, "full scale took " + fixed(fullSecs, 1) + " s");
  o.require(full.baseline.mults == 1752000000ULL &&
                full.optimized.mults == 295000000ULL,
            "measured counts differ from predicted");
  auto [num, den] = full.multRatio();
  o.require(num == 1752 && den == 295, "mult ratio " + std::to_string(num) +
                                           "/" + std::to_string(den));
  o.require(fixed(full.multRatioValue(), 4) == "5.9390",
            "mult ratio value " + fixed(full.multRatioValue(), 4));
  o.require(full.speedup() > 1.0, "dense speedup " + fixed(full.speedup(), 3));

  o.detail = o.pass ? tree + " 295000000 vs 1752000000, ratio 1752/295 = " +
                          fixed(full.multRatioValue(), 4) + ", speedup " +
                          fixed(full.speedup(), 2) + "x, full " +
                          fixed(fullSecs, 1) + " s, scale=4 " +
                          fixed(smallSecs, 2) + " s"
                    : o.detail;
  return o;
}

Outcome dpVersusEnumeration() {
  Outcome o;
  std::mt19937_64 rng(testing::baseSeed() + 100);
  int agree = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto chain = testing::randomChain(rng, 2, 8, 50);
    ChainSolution sol = optimalParenthesization(chain);
    Cost best = std::numeric_limits<Cost>::max();
    for (auto &[tree, cost] : enumerateParenthesizations(chain))
      best = std::min(best, cost);
    bool ok = sol.totalCost() == best &&
              evaluateTree(*sol.tree(), chain).cost == sol.totalCost();
    agree += ok;
  }
  o.require(agree == 200, std::to_string(agree) + "/200 agree");
  if (o.pass)
    o.detail = "200/200 chains";
  return o;
}

Outcome costModel() {
  Outcome o;
  const PropertySet sets[] = {{},
                              {Property::LowerTriangular},
                              {Property::UpperTriangular},
                              PropertySet::diagonal()};
  std::size_t checked = 0, bad = 0;
  for (PropertySet sa : sets)
    for (PropertySet sb : sets) {
      bool sqA = !sa.empty(), sqB = !sb.empty();
      for (std::int64_t m = 1; m <= 16; ++m)
        for (std::int64_t p = 1; p <= 16; ++p)
          for (std::int64_t n = 1; n <= 16; ++n) {
            if ((sqA && m != p) || (sqB && n != p))
              continue;
            TypedShape a{{m, p}, sa}, b{{p, n}, sb};
            bad += mulCost(a, b) != costOracle(a, b);
            ++checked;
          }
    }
  o.require(bad == 0, std::to_string(bad) + " mismatches");
  PropertySet lower{Property::LowerTriangular};
  Cost l5 = mulCost({{5, 5}, lower}, {{5, 5}, lower});
  o.require(l5 == 35, "Lower x Lower n=5 gave " + std::to_string(l5));
  if (o.pass)
    o.detail = std::to_string(checked) +
               " shape/pattern cases, Lower x Lower n=5 = 35";
  return o;
}

Outcome identitySimplification() {
  Outcome o;
  const std::string decls = "Matrix A(6, 6) <LowerTriangular> = 3\n"
                            "Identity I(6)\nMatrix C(6, 6) <>\n";
  CompiledProgram withI = compile(source(decls + "C = A * I\nprint(C)\n"));
  CompiledProgram plain = compile(source(decls + "print(A)\n"));
  ExecutionReport r1 = execute(withI.loops, ExecMode::Dense, 1);
  ExecutionReport r2 = execute(plain.loops, ExecMode::Dense, 1);
  o.require(r1.printed.size() == 1 && r1.printed == r2.printed,
            "A * I differs from A");

  CompiledProgram ii = compile(source("Identity I(6)\nprint(I * I)\n"));
  const IRModule &m = ii.optimized.module;
  const Op &print = m.body.back();
  o.require(print.kind == OpKind::Print && isIdentity(m.typeOf(print.operands[0])),
            "I * I did not resolve to an identity");
  std::size_t matmuls = 0;
  for (const LoopOp &op : ii.loops.ops)
    matmuls += op.kind == LoopOpKind::MatMul;
  o.require(matmuls == 0, std::to_string(matmuls) + " matmuls for I * I");
  if (o.pass)
    o.detail = "A * I bit-identical to A; I * I is an identity leaf, 0 matmuls";
  return o;
}

Outcome propertyInference() {
  Outcome o;
  CompiledProgram t = compile(source(
      "Matrix A(5, 5) <LowerTriangular>\nprint(transpose(A))\n"));
  std::string dump = printIR(t.optimized.module);
  o.require(dump.find("-> matrix<5x5xf32,[upperTri]>") != std::string::npos,
            "transpose not annotated upperTri");

  CompiledProgram ab = compile(readSourceFile(MOM_SAMPLES_DIR "/lower_product.mom"));
  const IRModule &m = ab.optimized.module;
  bool found = false;
  for (const Op &op : m.body)
    if (op.kind == OpKind::Mul)
      found = propsOf(m.typeOf(op.result)).str() == "[lowerTri]";
  o.require(found, "A * B not annotated lowerTri");
  if (o.pass)
    o.detail = "transpose(lowerTri) -> [upperTri]; lowerTri * lowerTri -> [lowerTri]";
  return o;
}

Outcome modeEquivalence() {
  Outcome o;
  std::mt19937_64 rng(testing::baseSeed() + 600);
  testing::ProgramShape shape;
  shape.maxDim = 12;
  int good = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::string text = testing::randomProgram(rng, shape);
    CompiledProgram p = compile(source(text));
    ExecutionReport d = execute(p.loops, {ExecMode::Dense, 1, true});
    ExecutionReport s = execute(p.loops, {ExecMode::Specialized, 1, true});
    bool ok = d.printed == s.printed && d.printedText() == s.printedText();
    for (std::size_t t = 0; t < s.tensors.size(); ++t) {
      StoredPattern pat = storedPattern(p.loops.tensors[t].props);
      ok = ok && offPatternZero(s.tensors[t], pat) &&
           offPatternZero(d.tensors[t], pat);
    }
    good += ok;
  }
  o.require(good == 100, std::to_string(good) + "/100 programs agree");
  if (o.pass)
    o.detail = "100/100 programs bit-identical, off-pattern entries zero";
  return o;
}

Outcome semanticPreservation() {
  Outcome o;
  std::mt19937_64 rng(testing::baseSeed() + 700);
  int good = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::string text = testing::randomProgram(rng, {});
    PipelineOptions off;
    off.opt = {false, false};
    CompiledProgram plain = compile(source(text), off);
    CompiledProgram opt = compile(source(text));
    ExecutionReport a = execute(plain.loops, ExecMode::Dense, 1);
    ExecutionReport b = execute(opt.loops, ExecMode::Dense, 1);
    good += a.printed == b.printed && a.printedText() == b.printedText();
  }
  o.require(good == 100, std::to_string(good) + "/100 programs agree");
  if (o.pass)
    o.detail = "100/100 programs bit-identical with and without optimization";
  return o;
}

Outcome goldenDumps() {
  Outcome o;
  CompiledProgram p = compile(readSourceFile(MOM_SAMPLES_DIR "/lower_product.mom"));
  std::string ir = printIR(p.ir), loops = printLoops(p.loops);
  o.require(ir == readSourceFile(MOM_GOLDEN_DIR "/lower_product.ir").text,
            "--emit=ir differs from golden");
  o.require(loops == readSourceFile(MOM_GOLDEN_DIR "/lower_product.loops").text,
            "--emit=loops differs from golden");

  std::size_t inits = 0, fills = 0, equations = 0, muls = 0;
  for (const Op &op : p.ir.body) {
    inits += op.kind == OpKind::Init;
    fills += op.kind == OpKind::Fill;
    if (op.kind == OpKind::Equation) {
      ++equations;
      for (const Op &inner : op.region)
        muls += inner.kind == OpKind::Mul;
    }
  }
  o.require(inits == 2 && fills == 2, "expected 2 init/fill pairs");
  o.require(equations == 1 && muls == 1, "expected 1 equation with 1 mul");

  std::size_t matmuls = 0;
  for (const LoopOp &op : p.loops.ops)
    if (op.kind == LoopOpKind::MatMul) {
      ++matmuls;
      o.require(op.lhsProps.str() == "[lowerTri]" &&
                    op.rhsProps.str() == "[lowerTri]" &&
                    p.loops.tensors[op.out].props.str() == "[lowerTri]",
                "matmul annotations lost");
    }
  o.require(matmuls == 1, "expected 1 matmul");
  if (o.pass)
    o.detail = "ir and loops match goldens; 2 init/fill, 1 equation -> 1 matmul";
  return o;
}

} // namespace

int main() {
  struct Criterion {
    const char *name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"chain reordering", chainReordering},
      {"DP vs enumeration", dpVersusEnumeration},
      {"cost model soundness", costModel},
      {"identity simplification", identitySimplification},
      {"property inference", propertyInference},
      {"mode equivalence and zero soundness", modeEquivalence},
      {"optimizer semantic preservation", semanticPreservation},
      {"golden dumps", goldenDumps},
  };

  std::cout << "seed " << testing::baseSeed() << "\n";
  int failures = 0, index = 0;
  for (const Criterion &c : criteria) {
    ++index;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << index << " " << c.name
              << ": " << o.detail << "\n";
  }
  std::cout << (8 - failures) << "/8 criteria passed\n";
  return failures == 0 ? 0 : 1;
}
