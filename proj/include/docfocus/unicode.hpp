// Copyright 2026 The docfocus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace docfocus::unicode {

/// Decodes UTF-8 into scalar values. Ill-formed sequences become U+FFFD.
std::u32string decode(std::string_view utf8);

std::string encode(std::u32string_view scalars);
std::string encode(char32_t scalar);

/// Canonical composition (NFC).
std::string nfc(std::string_view utf8);

bool is_whitespace(char32_t c) noexcept;

/// Han, kana, hangul and CJK punctuation/fullwidth blocks.
bool is_cjk(char32_t c) noexcept;

/// Count of non-whitespace scalar values.
std::size_t char_count(std::string_view utf8);

/// Number of scalar values.
std::size_t length(std::string_view utf8);

/// First n scalar values.
std::string prefix(std::string_view utf8, std::size_t n);

std::string trim(std::string_view utf8);

}  // namespace docfocus::unicode
