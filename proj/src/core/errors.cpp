// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#include "conductor/core/errors.hpp"

#include <array>
#include <utility>

namespace conductor {
namespace {

constexpr std::array<std::pair<ErrorKind, std::string_view>, 23> kNames = {{
    {ErrorKind::InvalidArgument, "InvalidArgument"},
    {ErrorKind::MissingSection, "MissingSection"},
    {ErrorKind::ParseError, "ParseError"},
    {ErrorKind::DanglingReference, "DanglingReference"},
    {ErrorKind::UnboundVariable, "UnboundVariable"},
    {ErrorKind::UnknownTool, "UnknownTool"},
    {ErrorKind::EmptyCorpus, "EmptyCorpus"},
    {ErrorKind::UnknownDoc, "UnknownDoc"},
    {ErrorKind::EmptyQuery, "EmptyQuery"},
    {ErrorKind::EmptyPlan, "EmptyPlan"},
    {ErrorKind::EmptyCandidate, "EmptyCandidate"},
    {ErrorKind::LengthMismatch, "LengthMismatch"},
    {ErrorKind::BackendUnavailable, "BackendUnavailable"},
    {ErrorKind::RateLimited, "RateLimited"},
    {ErrorKind::ReplayMiss, "ReplayMiss"},
    {ErrorKind::AuthMissing, "AuthMissing"},
    {ErrorKind::UnpricedModel, "UnpricedModel"},
    {ErrorKind::SchemaViolation, "SchemaViolation"},
    {ErrorKind::IoError, "IoError"},
    {ErrorKind::MissingDemoBank, "MissingDemoBank"},
    {ErrorKind::PlanParseFailure, "PlanParseFailure"},
    {ErrorKind::FallbackExhausted, "FallbackExhausted"},
    {ErrorKind::MethodNotApplicable, "MethodNotApplicable"},
}};

}  // namespace

std::string_view to_string(ErrorKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "Unknown";
}

std::optional<ErrorKind> error_kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

ParseError::ParseError(std::size_t position, const std::string& reason)
    : Error(ErrorKind::ParseError, "at offset " + std::to_string(position) + ": " + reason),
      position_(position),
      reason_(reason) {}

}  // namespace conductor
