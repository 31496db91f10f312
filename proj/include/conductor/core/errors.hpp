// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace conductor {

enum class ErrorKind {
  InvalidArgument,
  MissingSection,
  ParseError,
  DanglingReference,
  UnboundVariable,
  UnknownTool,
  EmptyCorpus,
  UnknownDoc,
  EmptyQuery,
  EmptyPlan,
  EmptyCandidate,
  LengthMismatch,
  BackendUnavailable,
  RateLimited,
  ReplayMiss,
  AuthMissing,
  UnpricedModel,
  SchemaViolation,
  IoError,
  MissingDemoBank,
  PlanParseFailure,
  FallbackExhausted,
  MethodNotApplicable,
};

std::string_view to_string(ErrorKind kind);
std::optional<ErrorKind> error_kind_from_string(std::string_view name);

/// Base exception for every failure the library reports. The kind is stable
/// and is what records and exit codes are derived from; the message is for
/// humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by the plan parsers. `position` is a byte offset into the parsed
/// text, pointing at the start of the offending line.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& reason);

  std::size_t position() const noexcept { return position_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t position_;
  std::string reason_;
};

}  // namespace conductor
