// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace conductor::text {

std::string_view trim(std::string_view s);
std::string to_lower_ascii(std::string_view s);

/// A line of `s` together with the byte offset it starts at.
struct Line {
  std::string_view text;
  std::size_t offset;
};

/// Splits on '\n' (a trailing '\r' is stripped). An empty input yields no lines.
std::vector<Line> split_lines(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// Decodes one UTF-8 code point starting at `pos`, advancing `pos`. Invalid
/// sequences decode as the single byte value.
char32_t next_codepoint(std::string_view s, std::size_t& pos);

}  // namespace conductor::text
