// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#pragma once

#include <iosfwd>

namespace conductor::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPartialFailure = 1;
inline constexpr int kExitUsage = 2;

/// The `conductor` command line: run, eval, analyze, schema-check, chat.
/// Streams are injectable so tests can drive the chat loop and capture
/// output.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace conductor::cli
