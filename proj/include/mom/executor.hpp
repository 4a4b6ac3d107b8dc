// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
//
// Row-major buffers and instrumented reference kernels for LoopModules.

#pragma once

#include "mom/chain.hpp"
#include "mom/loops.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace mom {

/// Dense: full rectangular loop nests. Specialized: loop bounds restricted to
/// the operands' stored patterns.
enum class ExecMode { Dense, Specialized };

std::string_view toString(ExecMode mode);

class DenseBuffer {
public:
  DenseBuffer(Dims dims, ElemKind elem); // zero-initialized

  Dims dims() const { return dims_; }
  std::int64_t rows() const { return dims_.rows; }
  std::int64_t cols() const { return dims_.cols; }
  ElemKind elem() const { return elem_; }

  double at(std::int64_t i, std::int64_t j) const;
  void set(std::int64_t i, std::int64_t j, double v);

  template <class T> std::span<T> data() { return std::get<std::vector<T>>(data_); }
  template <class T> std::span<const T> data() const {
    return std::get<std::vector<T>>(data_);
  }

  friend bool operator==(const DenseBuffer &, const DenseBuffer &) = default;

private:
  Dims dims_;
  ElemKind elem_;
  std::variant<std::vector<float>, std::vector<double>> data_;
};

/// Entries inside `pattern` become `scalar`, all others 0.
void runFill(DenseBuffer &buf, double scalar, StoredPattern pattern);

/// out += a * b, accumulating over k in ascending order. Returns the number
/// of scalar multiplications performed. `out` must be zero on entry.
Cost runMatmul(const DenseBuffer &a, const DenseBuffer &b, DenseBuffer &out,
               PropertySet propsA, PropertySet propsB, ExecMode mode);

void runTranspose(const DenseBuffer &a, DenseBuffer &out);
void runAdd(const DenseBuffer &a, const DenseBuffer &b, DenseBuffer &out);

/// True when every entry outside `pattern` is exactly zero.
bool offPatternZero(const DenseBuffer &buf, StoredPattern pattern);

/// `RxC ELEM` header followed by one space-separated line per row.
std::string formatPrint(const DenseBuffer &buf);

struct ExecOptions {
  ExecMode mode = ExecMode::Dense;
  int repeats = 5;
  bool keepTensors = false; // return every tensor of the last run
};

struct ExecutionReport {
  struct OpStat {
    std::size_t op = 0; // index into LoopModule::ops
    LoopOpKind kind = LoopOpKind::MatMul;
    Cost mults = 0;     // MatMul only
    std::int64_t minNs = 0;
  };

  std::vector<DenseBuffer> printed;
  std::vector<OpStat> computeOps;
  Cost totalMults = 0;
  std::int64_t totalMinNs = 0;
  std::vector<DenseBuffer> tensors; // filled when keepTensors is set

  std::string printedText() const;
  std::string summary() const;
  /// `op<k>.mults`, `op<k>.min_ns`, `total.mults`, `total.min_ns`, one
  /// `key=value` per line, keys optionally prefixed.
  std::string keyValues(const std::string &prefix = "") const;
};

ExecutionReport execute(const LoopModule &lm, const ExecOptions &opts);
ExecutionReport execute(const LoopModule &lm, ExecMode mode, int repeats);

} // namespace mom
