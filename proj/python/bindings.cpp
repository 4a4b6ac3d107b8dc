// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
//
// Python bindings: compile programs, dump stages, run, benchmark, and query
// the chain optimizer directly.

#include "mom/error.hpp"
#include "mom/pipeline.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace mom;

namespace {

ExecMode parseMode(const std::string &mode) {
  if (mode == "dense")
    return ExecMode::Dense;
  if (mode == "specialized")
    return ExecMode::Specialized;
  throw py::value_error("mode must be 'dense' or 'specialized'");
}

py::array toArray(const DenseBuffer &buf) {
  std::vector<py::ssize_t> shape{buf.rows(), buf.cols()};
  if (buf.elem() == ElemKind::F32) {
    auto data = buf.data<float>();
    return py::array_t<float>(shape, data.data());
  }
  auto data = buf.data<double>();
  return py::array_t<double>(shape, data.data());
}

PropertySet parseProps(const std::vector<std::string> &names, Dims dims) {
  return canonicalize(std::span<const std::string>(names), dims);
}

std::vector<std::string> propNames(PropertySet s) {
  std::vector<std::string> out;
  for (Property p : s.generators())
    out.emplace_back(surfaceName(p));
  return out;
}

struct Program {
  CompiledProgram compiled;

  std::string emit(const std::string &stage) const {
    if (stage == "ast")
      return printAst(compiled.ast);
    if (stage == "ir")
      return printIR(compiled.ir);
    if (stage == "ir-opt")
      return printIR(compiled.optimized.module);
    if (stage == "chain")
      return describeChains(compiled.optimized.chains);
    if (stage == "loops")
      return printLoops(compiled.loops);
    throw py::value_error("unknown stage '" + stage + "'");
  }

  py::dict run(const std::string &mode, int repeats) const {
    if (repeats < 1)
      throw py::value_error("repeats must be positive");
    ExecutionReport r = execute(compiled.loops, parseMode(mode), repeats);
    py::list printed;
    for (const DenseBuffer &b : r.printed)
      printed.append(toArray(b));
    py::dict out;
    out["printed"] = printed;
    out["text"] = r.printedText();
    out["total_mults"] = r.totalMults;
    out["total_min_ns"] = r.totalMinNs;
    return out;
  }

  py::list chains() const {
    py::list out;
    for (const ChainRecord &c : compiled.optimized.chains) {
      py::dict d;
      d["equation"] = c.equation;
      d["chosen"] = formatTree(*c.chosen, c.operands);
      d["chosen_cost"] = c.chosenCost;
      d["baseline_cost"] = c.baselineCost;
      out.append(d);
    }
    return out;
  }
};

Program compileSource(const std::string &source, bool noOpt,
                      std::int64_t scale) {
  if (scale < 1)
    throw py::value_error("scale must be positive");
  PipelineOptions opts;
  opts.scale = scale;
  opts.opt.simplifyIdentities = !noOpt;
  opts.opt.reorderChains = !noOpt;
  return Program{compile(SourceProgram{source, "<python>"}, opts)};
}

py::dict optimalChain(const std::vector<std::int64_t> &dims,
                      const std::vector<std::vector<std::string>> &props) {
  if (dims.size() < 2)
    throw py::value_error("need at least two dimensions");
  if (!props.empty() && props.size() != dims.size() - 1)
    throw py::value_error("one property list per operand");
  std::vector<ChainOperand> chain;
  for (std::size_t i = 0; i + 1 < dims.size(); ++i) {
    Dims d{dims[i], dims[i + 1]};
    PropertySet s = props.empty() ? PropertySet{} : parseProps(props[i], d);
    chain.push_back({d, s, "A" + std::to_string(i + 1)});
  }
  ChainSolution sol = optimalParenthesization(chain);
  py::dict out;
  out["tree"] = formatTree(*sol.tree(), chain);
  out["cost"] = sol.totalCost();
  out["baseline_cost"] = evaluateTree(*leftAssociated(chain.size()), chain).cost;
  out["properties"] = propNames(sol.type(0, chain.size() - 1).props);
  return out;
}

} // namespace

PYBIND11_MODULE(_mom, m) {
  m.doc() = "Compiler for dense linear-algebra programs";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> errorType;
  errorType.call_once_and_store_result([&]() {
    return py::object(py::exception<CompileError>(m, "CompileError",
                                                  PyExc_ValueError));
  });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p)
        std::rethrow_exception(p);
    } catch (const CompileError &e) {
      const py::object &type = errorType.get_stored();
      py::object exc = type(e.what());
      exc.attr("kind") = std::string(toString(e.kind()));
      PyErr_SetObject(type.ptr(), exc.ptr());
    }
  });

  py::class_<Program>(m, "Program")
      .def("emit", &Program::emit, py::arg("stage"),
           "Dump a stage: ast, ir, ir-opt, chain or loops.")
      .def("run", &Program::run, py::arg("mode") = "dense",
           py::arg("repeats") = 1)
      .def_property_readonly("chains", &Program::chains);

  m.def("compile", &compileSource, py::arg("source"), py::arg("no_opt") = false,
        py::arg("scale") = 1);

  m.def(
      "bench",
      [](const std::string &source, std::int64_t scale, const std::string &mode,
         int repeats) {
        if (scale < 1 || repeats < 1)
          throw py::value_error("scale and repeats must be positive");
        BenchReport r = bench(SourceProgram{source, "<python>"}, scale,
                              parseMode(mode), repeats);
        auto [num, den] = r.multRatio();
        py::dict out;
        out["baseline_mults"] = r.baseline.mults;
        out["optimized_mults"] = r.optimized.mults;
        out["baseline_min_ns"] = r.baseline.minNs;
        out["optimized_min_ns"] = r.optimized.minNs;
        out["mult_ratio"] = py::make_tuple(num, den);
        out["speedup"] = r.speedup();
        return out;
      },
      py::arg("source"), py::arg("scale") = 1, py::arg("mode") = "dense",
      py::arg("repeats") = 5);

  m.def("optimal_chain", &optimalChain, py::arg("dims"),
        py::arg("properties") = std::vector<std::vector<std::string>>{});

  m.def(
      "mul_cost",
      [](std::int64_t m, std::int64_t p, std::int64_t n,
         const std::vector<std::string> &a, const std::vector<std::string> &b) {
        TypedShape sa{{m, p}, parseProps(a, {m, p})};
        TypedShape sb{{p, n}, parseProps(b, {p, n})};
        return mulCost(sa, sb);
      },
      py::arg("m"), py::arg("p"), py::arg("n"),
      py::arg("a") = std::vector<std::string>{},
      py::arg("b") = std::vector<std::string>{});
}
