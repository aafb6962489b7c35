// Copyright 2026 The docfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include "docfocus/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "docfocus/error.hpp"
#include "docfocus/unicode.hpp"

namespace docfocus::metrics {

namespace {

struct Prepared {
  std::vector<std::u32string> pred;
  std::vector<std::u32string> ref;
};

Prepared prepare_tokens(const ScorePair& pair) {
  const std::string p = unicode::nfc(pair.prediction);
  const std::string r = unicode::nfc(pair.reference);
  const TokenMode mode = token_mode(p, r);
  return {tokenize(p, mode), tokenize(r, mode)};
}

std::size_t lcs_length(const std::vector<std::u32string>& a, const std::vector<std::u32string>& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double harmonic(double p, double r) { return p + r > 0 ? 2 * p * r / (p + r) : 0.0; }

}  // namespace

TokenMode token_mode(std::string_view a, std::string_view b) {
  std::size_t cjk = 0;
  std::size_t total = 0;
  for (std::string_view text : {a, b}) {
    for (char32_t c : unicode::decode(text)) {
      if (unicode::is_whitespace(c)) continue;
      ++total;
      if (unicode::is_cjk(c)) ++cjk;
    }
  }
  return 2 * cjk > total ? TokenMode::per_scalar : TokenMode::whitespace;
}

std::vector<std::u32string> tokenize(std::string_view text, TokenMode mode) {
  std::vector<std::u32string> out;
  std::u32string cur;
  for (char32_t c : unicode::decode(text)) {
    if (unicode::is_whitespace(c)) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else if (mode == TokenMode::per_scalar) {
      out.emplace_back(1, c);
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
  while (!a.empty() && !b.empty() && a.front() == b.front()) {
    a.remove_prefix(1);
    b.remove_prefix(1);
  }
  while (!a.empty() && !b.empty() && a.back() == b.back()) {
    a.remove_suffix(1);
    b.remove_suffix(1);
  }
  if (a.size() < b.size()) std::swap(a, b);
  if (b.empty()) return a.size();
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

double norm_edit_distance(const ScorePair& pair) {
  const std::u32string p = unicode::decode(unicode::nfc(pair.prediction));
  const std::u32string r = unicode::decode(unicode::nfc(pair.reference));
  const std::size_t longest = std::max(p.size(), r.size());
  if (longest == 0) return 0.0;
  return static_cast<double>(levenshtein(p, r)) / static_cast<double>(longest);
}

PrecisionRecall token_f1(const ScorePair& pair) {
  const Prepared t = prepare_tokens(pair);
  if (t.pred.empty() && t.ref.empty()) return {1, 1, 1};
  if (t.pred.empty() || t.ref.empty()) return {0, 0, 0};
  std::map<std::u32string, std::size_t> ref_counts;
  for (const auto& tok : t.ref) ++ref_counts[tok];
  std::size_t common = 0;
  for (const auto& tok : t.pred) {
    auto it = ref_counts.find(tok);
    if (it != ref_counts.end() && it->second > 0) {
      --it->second;
      ++common;
    }
  }
  PrecisionRecall out;
  out.precision = static_cast<double>(common) / static_cast<double>(t.pred.size());
  out.recall = static_cast<double>(common) / static_cast<double>(t.ref.size());
  out.f1 = harmonic(out.precision, out.recall);
  return out;
}

BleuStats& BleuStats::operator+=(const BleuStats& o) {
  for (std::size_t n = 0; n < 4; ++n) {
    matches[n] += o.matches[n];
    totals[n] += o.totals[n];
  }
  candidate_length += o.candidate_length;
  reference_length += o.reference_length;
  return *this;
}

BleuStats bleu_stats(const ScorePair& pair) {
  const Prepared t = prepare_tokens(pair);
  BleuStats s;
  s.candidate_length = t.pred.size();
  s.reference_length = t.ref.size();
  for (std::size_t n = 1; n <= 4; ++n) {
    std::map<std::vector<std::u32string>, std::size_t> ref_grams;
    for (std::size_t i = 0; i + n <= t.ref.size(); ++i) {
      ++ref_grams[{t.ref.begin() + static_cast<std::ptrdiff_t>(i),
                   t.ref.begin() + static_cast<std::ptrdiff_t>(i + n)}];
    }
    for (std::size_t i = 0; i + n <= t.pred.size(); ++i) {
      ++s.totals[n - 1];
      auto it = ref_grams.find({t.pred.begin() + static_cast<std::ptrdiff_t>(i),
                                t.pred.begin() + static_cast<std::ptrdiff_t>(i + n)});
      if (it != ref_grams.end() && it->second > 0) {
        --it->second;
        ++s.matches[n - 1];
      }
    }
  }
  return s;
}

double bleu_from_stats(const BleuStats& stats) {
  if (stats.candidate_length == 0 || stats.matches[0] == 0) return 0.0;
  double log_sum = std::log(static_cast<double>(stats.matches[0]) / static_cast<double>(stats.totals[0]));
  for (std::size_t n = 1; n < 4; ++n) {
    log_sum += std::log(static_cast<double>(stats.matches[n] + 1) / static_cast<double>(stats.totals[n] + 1));
  }
  const double c = static_cast<double>(stats.candidate_length);
  const double r = static_cast<double>(stats.reference_length);
  const double bp = c > r ? 1.0 : std::exp(1.0 - r / c);
  return std::clamp(bp * std::exp(log_sum / 4.0), 0.0, 1.0);
}

double bleu(std::span<const ScorePair> pairs) {
  if (pairs.empty()) fail(ErrorCode::invalid_argument, "bleu needs at least one pair");
  BleuStats total;
  for (const ScorePair& p : pairs) total += bleu_stats(p);
  return bleu_from_stats(total);
}

double meteor_lite(const ScorePair& pair) {
  const Prepared t = prepare_tokens(pair);
  if (t.pred.empty() || t.ref.empty()) return 0.0;
  std::vector<bool> used(t.ref.size(), false);
  std::vector<std::ptrdiff_t> align(t.pred.size(), -1);
  std::size_t matches = 0;
  for (std::size_t i = 0; i < t.pred.size(); ++i) {
    for (std::size_t j = 0; j < t.ref.size(); ++j) {
      if (!used[j] && t.ref[j] == t.pred[i]) {
        used[j] = true;
        align[i] = static_cast<std::ptrdiff_t>(j);
        ++matches;
        break;
      }
    }
  }
  if (matches == 0) return 0.0;
  std::size_t chunks = 0;
  std::ptrdiff_t prev_i = -2;
  std::ptrdiff_t prev_j = -2;
  for (std::size_t i = 0; i < align.size(); ++i) {
    if (align[i] < 0) continue;
    const auto ii = static_cast<std::ptrdiff_t>(i);
    if (!(ii == prev_i + 1 && align[i] == prev_j + 1)) ++chunks;
    prev_i = ii;
    prev_j = align[i];
  }
  const double p = static_cast<double>(matches) / static_cast<double>(t.pred.size());
  const double r = static_cast<double>(matches) / static_cast<double>(t.ref.size());
  const double fmean = 10 * p * r / (r + 9 * p);
  const double frag = static_cast<double>(chunks) / static_cast<double>(matches);
  const double penalty = 0.5 * frag * frag * frag;
  return fmean * (1 - penalty);
}

RougeL rouge_l(const ScorePair& pair) {
  const Prepared t = prepare_tokens(pair);
  if (t.pred.empty() || t.ref.empty()) return {};
  const double lcs = static_cast<double>(lcs_length(t.pred, t.ref));
  RougeL out;
  out.recall = lcs / static_cast<double>(t.ref.size());
  out.precision = lcs / static_cast<double>(t.pred.size());
  out.f = harmonic(out.precision, out.recall);
  return out;
}

std::string canonical_label(std::string_view label) {
  std::u32string out;
  for (char32_t c : unicode::decode(unicode::nfc(label))) {
    if (unicode::is_whitespace(c)) continue;
    out.push_back(c < 0x80 ? static_cast<char32_t>(std::tolower(static_cast<int>(c))) : c);
  }
  return unicode::encode(out);
}

double vqa_accuracy(std::span<const ScorePair> pairs) {
  if (pairs.empty()) fail(ErrorCode::invalid_argument, "vqa_accuracy needs at least one pair");
  std::size_t correct = 0;
  for (const ScorePair& p : pairs) {
    if (canonical_label(p.prediction) == canonical_label(p.reference)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(pairs.size());
}

}  // namespace docfocus::metrics
