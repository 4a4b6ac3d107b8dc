// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
//
// momc: compile, inspect, run and benchmark .mom programs.

#include "mom/pipeline.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

namespace {

enum class Emit { None, Ast, IR, IROpt, Chain, Loops };

struct CliConfig {
  std::string input;
  Emit emit = Emit::None;
  bool run = false;
  bool bench = false;
  mom::ExecMode mode = mom::ExecMode::Dense;
  int repeats = 5;
  std::string reportPath;
  bool noOpt = false;
  std::int64_t scale = 1;
};

void writeReport(const std::string &path, const std::string &text) {
  std::ofstream out(path);
  if (!out)
    throw mom::CompileError(mom::ErrorKind::Io,
                            "cannot write report '" + path + "'");
  out << text;
}

int runPipeline(const CliConfig &cfg) {
  mom::SourceProgram src = mom::readSourceFile(cfg.input);

  if (cfg.bench) {
    mom::BenchReport r = mom::bench(src, cfg.scale, cfg.mode, cfg.repeats);
    std::cout << mom::describeChains(r.chains) << r.summary();
    if (!cfg.reportPath.empty())
      writeReport(cfg.reportPath, r.keyValues());
    return 0;
  }

  mom::PipelineOptions opts;
  opts.scale = cfg.scale;
  opts.opt.simplifyIdentities = !cfg.noOpt;
  opts.opt.reorderChains = !cfg.noOpt;
  mom::CompiledProgram p = mom::compile(src, opts);

  switch (cfg.emit) {
  case Emit::None:
    break;
  case Emit::Ast:
    std::cout << mom::printAst(p.ast);
    break;
  case Emit::IR:
    std::cout << mom::printIR(p.ir);
    break;
  case Emit::IROpt:
    std::cout << mom::printIR(p.optimized.module);
    break;
  case Emit::Chain:
    std::cout << mom::describeChains(p.optimized.chains);
    break;
  case Emit::Loops:
    std::cout << mom::printLoops(p.loops);
    break;
  }

  if (cfg.run) {
    mom::ExecutionReport r = mom::execute(p.loops, cfg.mode, cfg.repeats);
    std::cout << r.printedText();
    std::cerr << r.summary();
    if (!cfg.reportPath.empty())
      writeReport(cfg.reportPath, r.keyValues());
  }
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"momc - compiler for dense linear-algebra programs"};
  app.name("momc");

  CliConfig cfg;
  const std::map<std::string, Emit> emits{
      {"none", Emit::None}, {"ast", Emit::Ast},     {"ir", Emit::IR},
      {"ir-opt", Emit::IROpt}, {"chain", Emit::Chain}, {"loops", Emit::Loops}};
  const std::map<std::string, mom::ExecMode> modes{
      {"dense", mom::ExecMode::Dense},
      {"specialized", mom::ExecMode::Specialized}};

  app.add_option("input", cfg.input, "Program file (.mom)")->required();
  auto *emit = app.add_option("--emit", cfg.emit, "Dump a compilation stage")
                   ->transform(CLI::CheckedTransformer(emits, CLI::ignore_case))
                   ->option_text("none|ast|ir|ir-opt|chain|loops");
  app.add_flag("--run", cfg.run, "Execute and print tensors");
  auto *benchFlag = app.add_flag(
      "--bench", cfg.bench,
      "Compare source-order and reordered chains (timing + multiplications)");
  app.add_option("--mode", cfg.mode, "Kernel mode")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case))
      ->option_text("dense|specialized");
  app.add_option("--repeats", cfg.repeats, "Runs per measurement (min is kept)")
      ->check(CLI::PositiveNumber);
  app.add_option("--report", cfg.reportPath, "Write key=value report file");
  app.add_flag("--no-opt", cfg.noOpt,
               "Disable identity simplification and chain reordering");
  app.add_option("--scale", cfg.scale, "Divide every dimension by N")
      ->check(CLI::PositiveNumber);
  benchFlag->excludes(emit);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << "momc: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    return runPipeline(cfg);
  } catch (const mom::CompileError &e) {
    std::cerr << cfg.input << (e.loc().valid() ? ":" : ": ") << e.what()
              << "\n";
    return 1;
  }
}
