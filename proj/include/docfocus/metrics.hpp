// Copyright 2026 The docfocus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace docfocus::metrics {

/// Both sides are NFC-normalized by every metric before scoring.
struct ScorePair {
  std::string prediction;
  std::string reference;
};

enum class TokenMode { whitespace, per_scalar };

/// Per-scalar tokens when CJK scalars are a strict majority of the
/// non-whitespace scalars of both texts together, whitespace split otherwise.
/// Deciding on the pair keeps both sides tokenized the same way.
TokenMode token_mode(std::string_view a, std::string_view b);

std::vector<std::u32string> tokenize(std::string_view text, TokenMode mode);

/// Levenshtein distance over scalar values.
std::size_t levenshtein(std::u32string_view a, std::u32string_view b);

/// levenshtein / max(len); 0 when both are empty.
double norm_edit_distance(const ScorePair& pair);

struct PrecisionRecall {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

/// Multiset token overlap. Empty/empty scores 1, one side empty scores 0.
PrecisionRecall token_f1(const ScorePair& pair);

/// Clipped n-gram counts of one pair, summed into a corpus.
struct BleuStats {
  std::array<std::size_t, 4> matches{};
  std::array<std::size_t, 4> totals{};
  std::size_t candidate_length = 0;
  std::size_t reference_length = 0;

  BleuStats& operator+=(const BleuStats& o);
};

BleuStats bleu_stats(const ScorePair& pair);

/// Corpus BLEU-4 from summed statistics: add-one smoothing on the 2..4-gram
/// precisions, standard brevity penalty.
double bleu_from_stats(const BleuStats& stats);

double bleu(std::span<const ScorePair> pairs);

/// Unigram exact-match METEOR: leftmost-greedy alignment,
/// Fmean = 10PR / (R + 9P), penalty = 0.5 (chunks / matches)^3.
double meteor_lite(const ScorePair& pair);

struct RougeL {
  double recall = 0;
  double precision = 0;
  double f = 0;
};

RougeL rouge_l(const ScorePair& pair);

/// Lowercased with all whitespace removed: "Page  2" -> "page2".
std::string canonical_label(std::string_view label);

double vqa_accuracy(std::span<const ScorePair> pairs);

}  // namespace docfocus::metrics
