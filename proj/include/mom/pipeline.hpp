// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
//
// parse -> IR -> optimize -> lower, plus the baseline-vs-optimized benchmark.

#pragma once

#include "mom/equation_opt.hpp"
#include "mom/executor.hpp"
#include "mom/frontend.hpp"
#include "mom/ir.hpp"
#include "mom/loops.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mom {

struct PipelineOptions {
  OptOptions opt;
  std::int64_t scale = 1; // divide every dimension by this
};

struct CompiledProgram {
  Ast ast;      // as parsed
  Ast resolved; // constants substituted, scaled
  IRModule ir;  // High level, verified
  OptResult optimized;
  LoopModule loops;
};

/// Runs every compile stage; throws CompileError on the first failure.
CompiledProgram compile(const SourceProgram &src,
                        const PipelineOptions &opts = {});

/// `--emit=chain` text: one block per multiplication chain.
std::string describeChains(const std::vector<ChainRecord> &chains);

struct BenchVariant {
  Cost mults = 0;
  Cost predictedMults = 0; // sum of the chosen trees' chain costs
  std::int64_t minNs = 0;
  ExecutionReport report;
};

struct BenchReport {
  BenchVariant baseline;  // source parenthesization, identities eliminated
  BenchVariant optimized; // chains reordered
  std::vector<ChainRecord> chains;

  double speedup() const;
  /// baseline.mults / optimized.mults as an exact, reduced fraction.
  std::pair<Cost, Cost> multRatio() const;
  double multRatioValue() const;
  std::string summary() const;
  std::string keyValues() const;
};

/// Requires at least one multiplication in the program.
BenchReport bench(const SourceProgram &src, std::int64_t scale, ExecMode mode,
                  int repeats);

} // namespace mom
