#include "residua/error.hpp"

namespace residua {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DegreeTooHigh: return "DegreeTooHigh";
    case ErrorCode::NonPolynomial: return "NonPolynomial";
    case ErrorCode::Unclassifiable: return "Unclassifiable";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::PoleOnContour: return "PoleOnContour";
    case ErrorCode::BranchPoleConflict: return "BranchPoleConflict";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::NotSimple: return "NotSimple";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::MaxSubdivisions: return "MaxSubdivisions";
    case ErrorCode::TailDivergence: return "TailDivergence";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
  }
  return "Unknown";
}

namespace {

std::string describe(std::size_t offset, const std::vector<std::string>& expected,
                     const std::string& found, const std::string& detail) {
  std::string msg = "at offset " + std::to_string(offset) + ": ";
  if (!detail.empty()) {
    msg += detail;
  } else {
    msg += "expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
  }
  msg += found.empty() ? " (found end of input)" : " (found '" + found + "')";
  return msg;
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected, std::string found,
                       ErrorCode code, std::string detail)
    : Error(code, describe(offset, expected, found, detail)),
      offset_(offset),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

}  // namespace residua
