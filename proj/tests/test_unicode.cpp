// Copyright 2026 The docfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "docfocus/corpus.hpp"
#include "docfocus/unicode.hpp"

using namespace docfocus;

TEST_CASE("decode and encode round trip") {
  const std::string s = "a\xC3\xA9\xE4\xBD\xA0\xF0\x9F\x98\x80";
  const std::u32string d = unicode::decode(s);
  CHECK(d == std::u32string{U'a', U'é', U'你', U'\U0001F600'});
  CHECK(unicode::encode(d) == s);
}

TEST_CASE("ill-formed bytes decode to the replacement character") {
  CHECK(unicode::decode("a\xFF" "b") == std::u32string{U'a', U'�', U'b'});
}

TEST_CASE("nfc composes") {
  CHECK(unicode::nfc("e\xCC\x81") == "\xC3\xA9");
  CHECK(unicode::nfc("plain") == "plain");
}

TEST_CASE("character counts skip whitespace") {
  CHECK(char_count("") == 0);
  CHECK(char_count("a b") == 2);
  CHECK(char_count("你好, world") == 8);
  CHECK(char_count("a　b\tc\n") == 3);
}

TEST_CASE("cjk classification") {
  CHECK(unicode::is_cjk(U'你'));
  CHECK(unicode::is_cjk(U'。'));
  CHECK(unicode::is_cjk(U'한'));
  CHECK_FALSE(unicode::is_cjk(U'a'));
  CHECK_FALSE(unicode::is_cjk(U'é'));
}

TEST_CASE("prefix and trim count scalars") {
  CHECK(unicode::prefix("你好世界", 2) == "你好");
  CHECK(unicode::prefix("ab", 5) == "ab");
  CHECK(unicode::length("你好ab") == 4);
  CHECK(unicode::trim("  x y \n") == "x y");
  CHECK(unicode::trim("　") == "");
}
