// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "mom/error.hpp"

namespace mom {

std::string_view toString(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::Io:
    return "IoError";
  case ErrorKind::Lex:
    return "LexError";
  case ErrorKind::Parse:
    return "ParseError";
  case ErrorKind::UndeclaredIdentifier:
    return "UndeclaredIdentifier";
  case ErrorKind::DuplicateDeclaration:
    return "DuplicateDeclaration";
  case ErrorKind::UnknownProperty:
    return "UnknownProperty";
  case ErrorKind::InvalidAssignment:
    return "InvalidAssignment";
  case ErrorKind::UnboundConstant:
    return "UnboundConstant";
  case ErrorKind::NonPositiveDimension:
    return "NonPositiveDimension";
  case ErrorKind::NonSquareStructuralProperty:
    return "NonSquareStructuralProperty";
  case ErrorKind::DimMismatch:
    return "DimMismatch";
  case ErrorKind::Verify:
    return "VerifyError";
  case ErrorKind::UnresolvedTerm:
    return "UnresolvedTerm";
  case ErrorKind::ChainTooLong:
    return "ChainTooLong";
  }
  return "Error";
}

static std::string render(ErrorKind kind, const std::string &message,
                          SourceLoc loc) {
  std::string out;
  if (loc.valid())
    out = std::to_string(loc.line) + ":" + std::to_string(loc.col) + ": ";
  out += toString(kind);
  out += ": ";
  out += message;
  return out;
}

CompileError::CompileError(ErrorKind kind, std::string message, SourceLoc loc)
    : std::runtime_error(render(kind, message, loc)), kind_(kind), loc_(loc),
      message_(std::move(message)) {}

} // namespace mom
