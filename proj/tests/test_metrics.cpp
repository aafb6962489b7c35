// Copyright 2026 The docfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "docfocus/error.hpp"
#include "docfocus/metrics.hpp"
#include "metric_oracles.hpp"

using namespace docfocus;
using namespace docfocus::metrics;
namespace oracle = docfocus::testing::oracle;

TEST_CASE("edit distance examples") {
  CHECK(norm_edit_distance({"abc", "abc"}) == 0.0);
  CHECK(norm_edit_distance({"", "abc"}) == 1.0);
  CHECK(norm_edit_distance({"", ""}) == 0.0);
  CHECK(norm_edit_distance({"kitten", "sitting"}) == 3.0 / 7.0);
  CHECK(norm_edit_distance({"你好", "你们好"}) == 1.0 / 3.0);
}

TEST_CASE("token f1 examples") {
  const PrecisionRecall same = token_f1({"a b c", "a b c"});
  CHECK(same.f1 == 1.0);
  const PrecisionRecall part = token_f1({"a b c", "a b d"});
  CHECK(part.precision == doctest::Approx(2.0 / 3.0));
  CHECK(part.recall == doctest::Approx(2.0 / 3.0));
  CHECK(part.f1 == doctest::Approx(2.0 / 3.0));
  const PrecisionRecall none = token_f1({"", "x"});
  CHECK(none.f1 == 0.0);
  CHECK(token_f1({"", ""}).f1 == 1.0);
  CHECK(token_f1({"你好世界", "你好"}).precision == 0.5);
}

TEST_CASE("token mode is decided over the pair") {
  CHECK(token_mode("你好世界", "") == TokenMode::per_scalar);
  CHECK(token_mode("ab", "你") == TokenMode::whitespace);
  CHECK(tokenize("ab 你好", TokenMode::per_scalar).size() == 4);
  CHECK(tokenize("  ab\tcd\n", TokenMode::whitespace) == std::vector<std::u32string>{U"ab", U"cd"});
}

TEST_CASE("bleu examples") {
  const std::vector<ScorePair> same{{"the cat sat on the mat", "the cat sat on the mat"}};
  CHECK(bleu(same) == doctest::Approx(1.0));
  const std::vector<ScorePair> disjoint{{"x y z", "a b c"}};
  CHECK(bleu(disjoint) == 0.0);
  const std::vector<ScorePair> short_pred{{"the cat sat", "the cat sat down"}};
  // p1 = 3/3, p2 = (2+1)/(2+1), p3 = (1+1)/(1+1), p4 = (0+1)/(0+1).
  CHECK(bleu(short_pred) == doctest::Approx(std::exp(1.0 - 4.0 / 3.0)).epsilon(1e-12));
  CHECK_THROWS_AS(bleu({}), Error);
}

TEST_CASE("meteor examples") {
  CHECK(meteor_lite({"a b", "c d"}) == 0.0);
  CHECK(meteor_lite({"w x y z", "w x y z"}) == 0.9921875);
  CHECK(meteor_lite({"w", "w"}) == 0.5);
}

TEST_CASE("rouge-l examples") {
  const RougeL same = rouge_l({"a b", "a b"});
  CHECK(same.f == 1.0);
  const RougeL disjoint = rouge_l({"a b", "c d"});
  CHECK(disjoint.f == 0.0);
  const RougeL r = rouge_l({"a b c d", "a c e"});
  CHECK(r.recall == doctest::Approx(2.0 / 3.0));
  CHECK(r.precision == doctest::Approx(0.5));
  CHECK(r.f == doctest::Approx(4.0 / 7.0));
}

TEST_CASE("vqa accuracy") {
  const std::vector<ScorePair> one{{"Page 2", "page  2"}};
  CHECK(vqa_accuracy(one) == 1.0);
  std::vector<ScorePair> eight;
  for (int i = 0; i < 8; ++i) eight.push_back({i < 5 ? "Page 1" : "Page 3", "Page 1"});
  CHECK(vqa_accuracy(eight) == 0.625);
  CHECK(canonical_label(" Page\t7 ") == "page7");
  CHECK_THROWS_AS(vqa_accuracy({}), Error);
}

TEST_CASE("nfc applies before scoring") {
  CHECK(norm_edit_distance({"e\xCC\x81", "\xC3\xA9"}) == 0.0);
  CHECK(token_f1({"cafe\xCC\x81", "caf\xC3\xA9"}).f1 == 1.0);
}

TEST_CASE("metrics agree with brute-force oracles") {
  std::mt19937_64 gen(2024);
  std::vector<ScorePair> pairs;
  oracle::NgramCounts corpus;
  for (int i = 0; i < 1000; ++i) {
    const std::string pred = oracle::random_text(gen, 9);
    const std::string ref = std::uniform_int_distribution<int>(0, 4)(gen) == 0 ? pred : oracle::random_text(gen, 9);
    const ScorePair pair{pred, ref};
    CHECK(norm_edit_distance(pair) == oracle::norm_edit(pred, ref));
    CHECK(levenshtein(unicode::decode(pred), unicode::decode(ref)) ==
          oracle::edit_distance(unicode::decode(pred), unicode::decode(ref)));

    const PrecisionRecall f = token_f1(pair);
    const oracle::Prf of = oracle::f1(pred, ref);
    CHECK(f.precision == of.p);
    CHECK(f.recall == of.r);
    CHECK(f.f1 == doctest::Approx(of.f).epsilon(1e-12));

    const RougeL r = rouge_l(pair);
    const oracle::Prf orr = oracle::rouge(pred, ref);
    CHECK(r.recall == orr.r);
    CHECK(r.precision == orr.p);
    CHECK(std::abs(r.f - orr.f) <= 1e-12);

    CHECK(std::abs(meteor_lite(pair) - oracle::meteor(pred, ref)) <= 1e-9);

    oracle::NgramCounts one;
    oracle::add_ngrams(one, pred, ref);
    oracle::add_ngrams(corpus, pred, ref);
    const std::vector<ScorePair> single{pair};
    CHECK(std::abs(bleu(single) - oracle::bleu(one)) <= 1e-9);
    pairs.push_back(pair);
  }
  CHECK(std::abs(bleu(pairs) - oracle::bleu(corpus)) <= 1e-9);
}
