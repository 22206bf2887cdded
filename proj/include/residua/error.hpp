#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace residua {

enum class ErrorCode {
  ParseError,
  DegreeTooHigh,
  NonPolynomial,
  Unclassifiable,
  InvalidParams,
  PoleOnContour,
  BranchPoleConflict,
  NonConvergence,
  IllConditioned,
  NotSimple,
  OrderMismatch,
  NoConvergence,
  MaxSubdivisions,
  TailDivergence,
  DomainError,
  InternalInconsistency,
};

std::string_view to_string(ErrorCode code);

/// Base of every error raised by the engine. The code drives CLI exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Syntax error at a byte offset of the input text.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected, std::string found,
             ErrorCode code = ErrorCode::ParseError, std::string detail = {});

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
  std::string found_;
};

}  // namespace residua
