# SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
"""Compile, inspect, run and benchmark dense linear-algebra programs."""

from ._mom import CompileError, Program, bench, compile, mul_cost, optimal_chain

__all__ = ["CompileError", "Program", "bench", "compile", "mul_cost", "optimal_chain"]
