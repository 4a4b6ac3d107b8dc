// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mom {

struct SourceLoc {
  std::uint32_t line = 0; // 1-based; 0 means "no location"
  std::uint32_t col = 0;

  bool valid() const { return line != 0; }
  friend bool operator==(const SourceLoc &, const SourceLoc &) = default;
};

enum class ErrorKind {
  Io,
  Lex,
  Parse,
  UndeclaredIdentifier,
  DuplicateDeclaration,
  UnknownProperty,
  InvalidAssignment,
  UnboundConstant,
  NonPositiveDimension,
  NonSquareStructuralProperty,
  DimMismatch,
  Verify,
  UnresolvedTerm,
  ChainTooLong,
};

std::string_view toString(ErrorKind kind);

/// Every diagnostic raised by the pipeline. Frontend errors always carry a
/// location; later stages may not.
class CompileError : public std::runtime_error {
public:
  CompileError(ErrorKind kind, std::string message, SourceLoc loc = {});

  ErrorKind kind() const { return kind_; }
  const SourceLoc &loc() const { return loc_; }
  const std::string &message() const { return message_; }

private:
  ErrorKind kind_;
  SourceLoc loc_;
  std::string message_;
};

} // namespace mom
