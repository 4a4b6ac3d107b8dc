// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "mom/pipeline.hpp"

#include "mom/error.hpp"

#include <cstdio>
#include <numeric>
#include <sstream>

namespace mom {

CompiledProgram compile(const SourceProgram &src, const PipelineOptions &opts) {
  CompiledProgram p;
  p.ast = parse(src);
  p.resolved = scaleDimensions(resolveConstants(p.ast), opts.scale);
  p.ir = buildIR(p.resolved);
  verifyOrThrow(p.ir);
  p.optimized = optimizeEquations(p.ir, opts.opt);
  verifyOrThrow(p.optimized.module);
  p.loops = lowerToLoops(p.optimized.module);
  return p;
}

std::string describeChains(const std::vector<ChainRecord> &chains) {
  std::ostringstream os;
  for (std::size_t i = 0; i < chains.size(); ++i) {
    const ChainRecord &c = chains[i];
    os << "chain " << i;
    if (!c.equation.empty())
      os << " in \"" << c.equation << "\"";
    os << " (" << c.operands.size() << " operands)\n";
    os << c.optimal.describe(c.operands);
    os << "baseline: "
       << formatTree(*leftAssociated(c.operands.size()), c.operands)
       << " cost=" << c.baselineCost << "\n";
    os << "chosen: " << formatTree(*c.chosen, c.operands)
       << " cost=" << c.chosenCost << "\n";
  }
  return os.str();
}

double BenchReport::speedup() const {
  if (optimized.minNs <= 0)
    return 0.0;
  return static_cast<double>(baseline.minNs) /
         static_cast<double>(optimized.minNs);
}

std::pair<Cost, Cost> BenchReport::multRatio() const {
  Cost g = std::gcd(baseline.mults, optimized.mults);
  if (g == 0)
    return {baseline.mults, optimized.mults};
  return {baseline.mults / g, optimized.mults / g};
}

double BenchReport::multRatioValue() const {
  if (optimized.mults == 0)
    return 0.0;
  return static_cast<double>(baseline.mults) /
         static_cast<double>(optimized.mults);
}

std::string BenchReport::summary() const {
  char buf[64];
  std::ostringstream os;
  os << "baseline:  mults=" << baseline.mults
     << " min_ns=" << baseline.minNs << "\n";
  os << "optimized: mults=" << optimized.mults
     << " min_ns=" << optimized.minNs << "\n";
  auto [num, den] = multRatio();
  std::snprintf(buf, sizeof buf, "%.4f", multRatioValue());
  os << "mult ratio: " << baseline.mults << "/" << optimized.mults << " = "
     << num << "/" << den << " = " << buf << "\n";
  std::snprintf(buf, sizeof buf, "%.3f", speedup());
  os << "speedup: " << buf << "x\n";
  return os.str();
}

std::string BenchReport::keyValues() const {
  std::string out = baseline.report.keyValues("baseline.");
  out += optimized.report.keyValues("optimized.");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", speedup());
  out += std::string("speedup=") + buf + "\n";
  auto [num, den] = multRatio();
  out += "mult_ratio=" + std::to_string(num) + "/" + std::to_string(den) + "\n";
  return out;
}

BenchReport bench(const SourceProgram &src, std::int64_t scale, ExecMode mode,
                  int repeats) {
  PipelineOptions base;
  base.scale = scale;
  base.opt.reorderChains = false;
  PipelineOptions opt;
  opt.scale = scale;

  CompiledProgram baseline = compile(src, base);
  CompiledProgram optimized = compile(src, opt);
  if (optimized.optimized.chains.empty())
    throw CompileError(ErrorKind::Verify,
                       "benchmark needs at least one multiplication");

  auto measure = [&](const CompiledProgram &p) {
    BenchVariant v;
    v.report = execute(p.loops, mode, repeats);
    v.mults = v.report.totalMults;
    v.minNs = v.report.totalMinNs;
    for (const ChainRecord &c : p.optimized.chains)
      v.predictedMults += c.chosenCost;
    return v;
  };

  BenchReport r;
  r.baseline = measure(baseline);
  r.optimized = measure(optimized);
  r.chains = optimized.optimized.chains;
  return r;
}

} // namespace mom
