// Copyright 2026 The balanced-fano Authors
// Licensed under the Apache License, Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace balanced {

enum class ErrorCode {
  DimensionMismatch,
  NotMember,
  ArityMismatch,
  RankMismatch,
  InvalidLength,
  NotBig,
  EmptyCone,
  NotUniruled,
  NonpositiveDegree,
  NotPseudoEffective,
  NonNegativeDefinite,
  InvalidDimension,
  NonpositiveA,
  CorruptData,
  ParseError,
  SchemaVersionMismatch,
  InsufficientAnnotations,
  UnknownRecord,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
  case ErrorCode::DimensionMismatch: return "DimensionMismatch";
  case ErrorCode::NotMember: return "NotMember";
  case ErrorCode::ArityMismatch: return "ArityMismatch";
  case ErrorCode::RankMismatch: return "RankMismatch";
  case ErrorCode::InvalidLength: return "InvalidLength";
  case ErrorCode::NotBig: return "NotBig";
  case ErrorCode::EmptyCone: return "EmptyCone";
  case ErrorCode::NotUniruled: return "NotUniruled";
  case ErrorCode::NonpositiveDegree: return "NonpositiveDegree";
  case ErrorCode::NotPseudoEffective: return "NotPseudoEffective";
  case ErrorCode::NonNegativeDefinite: return "NonNegativeDefinite";
  case ErrorCode::InvalidDimension: return "InvalidDimension";
  case ErrorCode::NonpositiveA: return "NonpositiveA";
  case ErrorCode::CorruptData: return "CorruptData";
  case ErrorCode::ParseError: return "ParseError";
  case ErrorCode::SchemaVersionMismatch: return "SchemaVersionMismatch";
  case ErrorCode::InsufficientAnnotations: return "InsufficientAnnotations";
  case ErrorCode::UnknownRecord: return "UnknownRecord";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

} // namespace balanced
