// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Conductor Contributors

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace conductor::retrieval {

/// ASCII punctuation plus the Latin-1, general, CJK and fullwidth
/// punctuation blocks.
bool is_punctuation(char32_t cp);
bool is_space(char32_t cp);
/// Han ideographs and kana: each becomes its own term.
bool is_cjk(char32_t cp);

/// Lowercases ASCII, splits on whitespace and punctuation and emits every CJK
/// codepoint as a separate term. Never yields empty terms.
std::vector<std::string> tokenize(std::string_view text);

std::size_t count_punctuation(std::string_view text);

}  // namespace conductor::retrieval
