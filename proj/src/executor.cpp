// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "mom/executor.hpp"

#include "mom/error.hpp"
#include "mom/format.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <optional>

namespace mom {

std::string_view toString(ExecMode mode) {
  return mode == ExecMode::Dense ? "dense" : "specialized";
}

DenseBuffer::DenseBuffer(Dims dims, ElemKind elem) : dims_(dims), elem_(elem) {
  auto n = static_cast<std::size_t>(dims.rows * dims.cols);
  if (elem == ElemKind::F32)
    data_ = std::vector<float>(n, 0.0f);
  else
    data_ = std::vector<double>(n, 0.0);
}

double DenseBuffer::at(std::int64_t i, std::int64_t j) const {
  auto idx = static_cast<std::size_t>(i * dims_.cols + j);
  return std::visit([idx](const auto &v) { return static_cast<double>(v[idx]); },
                    data_);
}

void DenseBuffer::set(std::int64_t i, std::int64_t j, double value) {
  auto idx = static_cast<std::size_t>(i * dims_.cols + j);
  std::visit(
      [idx, value](auto &v) {
        using T = typename std::decay_t<decltype(v)>::value_type;
        v[idx] = static_cast<T>(value);
      },
      data_);
}

namespace {

void requireSameElem(const DenseBuffer &a, const DenseBuffer &b) {
  if (a.elem() != b.elem())
    throw CompileError(ErrorKind::Verify, "kernel operands mix f32 and f64");
}

std::string dimsStr(Dims d) {
  return std::to_string(d.rows) + "x" + std::to_string(d.cols);
}

/// Half-open index range.
struct Range {
  std::int64_t lo, hi;
};

/// Columns k stored in row i of a pattern with `width` columns.
Range rowRange(StoredPattern p, std::int64_t i, std::int64_t width) {
  switch (p) {
  case StoredPattern::Full:
    return {0, width};
  case StoredPattern::LowerIncl:
    return {0, std::min(i + 1, width)};
  case StoredPattern::UpperIncl:
    return {std::min(i, width), width};
  case StoredPattern::DiagOnly:
    return i < width ? Range{i, i + 1} : Range{0, 0};
  }
  return {0, 0};
}

template <class T>
Cost matmulDense(std::span<const T> a, std::span<const T> b, std::span<T> out,
                 std::int64_t m, std::int64_t p, std::int64_t n) {
  for (std::int64_t i = 0; i < m; ++i) {
    T *__restrict row = out.data() + i * n;
    for (std::int64_t k = 0; k < p; ++k) {
      const T aik = a[static_cast<std::size_t>(i * p + k)];
      const T *__restrict brow = b.data() + k * n;
      for (std::int64_t j = 0; j < n; ++j)
        row[j] += aik * brow[j];
    }
  }
  return static_cast<Cost>(m) * static_cast<Cost>(p) * static_cast<Cost>(n);
}

// Every output entry still accumulates over k in ascending order, so the
// result matches matmulDense whenever off-pattern inputs are exactly zero.
template <class T>
Cost matmulSpecialized(std::span<const T> a, std::span<const T> b,
                       std::span<T> out, std::int64_t m, std::int64_t p,
                       std::int64_t n, StoredPattern pa, StoredPattern pb) {
  Cost count = 0;
  for (std::int64_t i = 0; i < m; ++i) {
    T *__restrict row = out.data() + i * n;
    Range ks = rowRange(pa, i, p);
    for (std::int64_t k = ks.lo; k < ks.hi; ++k) {
      const T aik = a[static_cast<std::size_t>(i * p + k)];
      const T *__restrict brow = b.data() + k * n;
      Range js = rowRange(pb, k, n);
      for (std::int64_t j = js.lo; j < js.hi; ++j)
        row[j] += aik * brow[j];
      count += static_cast<Cost>(js.hi - js.lo);
    }
  }
  return count;
}

} // namespace

void runFill(DenseBuffer &buf, double scalar, StoredPattern pattern) {
  for (std::int64_t i = 0; i < buf.rows(); ++i)
    for (std::int64_t j = 0; j < buf.cols(); ++j)
      buf.set(i, j, patternContains(pattern, i, j) ? scalar : 0.0);
}

Cost runMatmul(const DenseBuffer &a, const DenseBuffer &b, DenseBuffer &out,
               PropertySet propsA, PropertySet propsB, ExecMode mode) {
  requireSameElem(a, b);
  requireSameElem(a, out);
  if (a.cols() != b.rows() || out.rows() != a.rows() || out.cols() != b.cols())
    throw CompileError(ErrorKind::DimMismatch,
                       "matmul " + dimsStr(a.dims()) + " * " +
                           dimsStr(b.dims()) + " -> " + dimsStr(out.dims()));
  const std::int64_t m = a.rows(), p = a.cols(), n = b.cols();
  auto run = [&]<class T>(T) {
    if (mode == ExecMode::Dense)
      return matmulDense<T>(a.data<T>(), b.data<T>(), out.data<T>(), m, p, n);
    return matmulSpecialized<T>(a.data<T>(), b.data<T>(), out.data<T>(), m, p,
                                n, storedPattern(propsA), storedPattern(propsB));
  };
  return a.elem() == ElemKind::F32 ? run(float{}) : run(double{});
}

void runTranspose(const DenseBuffer &a, DenseBuffer &out) {
  requireSameElem(a, out);
  if (out.rows() != a.cols() || out.cols() != a.rows())
    throw CompileError(ErrorKind::DimMismatch,
                       "transpose " + dimsStr(a.dims()) + " -> " +
                           dimsStr(out.dims()));
  auto run = [&]<class T>(T) {
    auto in = a.data<T>();
    auto dst = out.data<T>();
    const std::int64_t r = a.rows(), c = a.cols();
    for (std::int64_t i = 0; i < r; ++i)
      for (std::int64_t j = 0; j < c; ++j)
        dst[static_cast<std::size_t>(j * r + i)] =
            in[static_cast<std::size_t>(i * c + j)];
  };
  a.elem() == ElemKind::F32 ? run(float{}) : run(double{});
}

void runAdd(const DenseBuffer &a, const DenseBuffer &b, DenseBuffer &out) {
  requireSameElem(a, b);
  requireSameElem(a, out);
  if (!(a.dims() == b.dims()) || !(a.dims() == out.dims()))
    throw CompileError(ErrorKind::DimMismatch,
                       "add " + dimsStr(a.dims()) + " + " + dimsStr(b.dims()) +
                           " -> " + dimsStr(out.dims()));
  auto run = [&]<class T>(T) {
    auto x = a.data<T>();
    auto y = b.data<T>();
    auto dst = out.data<T>();
    for (std::size_t i = 0; i < dst.size(); ++i)
      dst[i] = x[i] + y[i];
  };
  a.elem() == ElemKind::F32 ? run(float{}) : run(double{});
}

bool offPatternZero(const DenseBuffer &buf, StoredPattern pattern) {
  for (std::int64_t i = 0; i < buf.rows(); ++i)
    for (std::int64_t j = 0; j < buf.cols(); ++j)
      if (!patternContains(pattern, i, j) && buf.at(i, j) != 0.0)
        return false;
  return true;
}

std::string formatPrint(const DenseBuffer &buf) {
  std::string out = std::to_string(buf.rows()) + "x" +
                    std::to_string(buf.cols()) + " " +
                    std::string(toString(buf.elem()));
  for (std::int64_t i = 0; i < buf.rows(); ++i) {
    out += "\n";
    for (std::int64_t j = 0; j < buf.cols(); ++j) {
      if (j)
        out += " ";
      out += formatEntry(buf.at(i, j));
    }
  }
  return out;
}

namespace {

std::string_view opName(LoopOpKind kind) {
  switch (kind) {
  case LoopOpKind::AllocTensor:
    return "alloc_tensor";
  case LoopOpKind::Fill:
    return "fill";
  case LoopOpKind::MatMul:
    return "matmul";
  case LoopOpKind::Transpose:
    return "transpose";
  case LoopOpKind::Add:
    return "add";
  case LoopOpKind::Print:
    return "print";
  }
  return "?";
}

} // namespace

std::string ExecutionReport::printedText() const {
  std::string out;
  for (const DenseBuffer &b : printed)
    out += formatPrint(b) + "\n";
  return out;
}

std::string ExecutionReport::summary() const {
  std::string out;
  for (const OpStat &s : computeOps) {
    out += "op " + std::to_string(s.op) + " " + std::string(opName(s.kind)) +
           ":";
    if (s.kind == LoopOpKind::MatMul)
      out += " mults=" + std::to_string(s.mults);
    out += " min_ns=" + std::to_string(s.minNs) + "\n";
  }
  out += "total: mults=" + std::to_string(totalMults) +
         " min_ns=" + std::to_string(totalMinNs) + "\n";
  return out;
}

std::string ExecutionReport::keyValues(const std::string &prefix) const {
  std::string out;
  for (const OpStat &s : computeOps) {
    std::string key = prefix + "op" + std::to_string(s.op);
    if (s.kind == LoopOpKind::MatMul)
      out += key + ".mults=" + std::to_string(s.mults) + "\n";
    out += key + ".min_ns=" + std::to_string(s.minNs) + "\n";
  }
  out += prefix + "total.mults=" + std::to_string(totalMults) + "\n";
  out += prefix + "total.min_ns=" + std::to_string(totalMinNs) + "\n";
  return out;
}

ExecutionReport execute(const LoopModule &lm, const ExecOptions &opts) {
  using Clock = std::chrono::steady_clock;
  auto nanos = [](Clock::duration d) {
    return static_cast<std::int64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(d).count());
  };

  ExecutionReport report;
  const int repeats = std::max(1, opts.repeats);
  for (std::size_t i = 0; i < lm.ops.size(); ++i)
    if (lm.ops[i].isCompute())
      report.computeOps.push_back(
          {i, lm.ops[i].kind, 0, std::numeric_limits<std::int64_t>::max()});
  report.totalMinNs = std::numeric_limits<std::int64_t>::max();

  for (int run = 0; run < repeats; ++run) {
    const bool first = run == 0;
    std::vector<std::optional<DenseBuffer>> buffers(lm.tensors.size());
    auto buf = [&](TensorId t) -> DenseBuffer & {
      if (!buffers[t])
        throw CompileError(ErrorKind::Verify,
                           "tensor %" + std::to_string(t) +
                               " used before allocation");
      return *buffers[t];
    };

    std::size_t stat = 0;
    auto runStart = Clock::now();
    for (const LoopOp &op : lm.ops) {
      auto start = Clock::now();
      Cost mults = 0;
      switch (op.kind) {
      case LoopOpKind::AllocTensor:
        buffers[op.out].emplace(lm.tensors[op.out].dims,
                                lm.tensors[op.out].elem);
        break;
      case LoopOpKind::Fill:
        runFill(buf(op.out), op.scalar, op.pattern);
        break;
      case LoopOpKind::MatMul:
        mults = runMatmul(buf(op.lhs), buf(op.rhs), buf(op.out), op.lhsProps,
                          op.rhsProps, opts.mode);
        break;
      case LoopOpKind::Transpose:
        runTranspose(buf(op.lhs), buf(op.out));
        break;
      case LoopOpKind::Add:
        runAdd(buf(op.lhs), buf(op.rhs), buf(op.out));
        break;
      case LoopOpKind::Print:
        if (first)
          report.printed.push_back(buf(op.out));
        break;
      }
      if (op.isCompute()) {
        auto &s = report.computeOps[stat++];
        s.minNs = std::min(s.minNs, nanos(Clock::now() - start));
        if (first) {
          s.mults = mults;
          report.totalMults += mults;
        }
      }
    }
    report.totalMinNs =
        std::min(report.totalMinNs, nanos(Clock::now() - runStart));

    if (run + 1 == repeats && opts.keepTensors)
      for (auto &b : buffers)
        if (b)
          report.tensors.push_back(std::move(*b));
  }
  return report;
}

ExecutionReport execute(const LoopModule &lm, ExecMode mode, int repeats) {
  return execute(lm, ExecOptions{mode, repeats, false});
}

} // namespace mom
