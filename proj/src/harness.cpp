// Copyright 2026 The docfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include "docfocus/harness.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include <fmt/format.h>

#include "docfocus/digest.hpp"
#include "docfocus/error.hpp"
#include "docfocus/metrics.hpp"
#include "docfocus/mixer.hpp"
#include "docfocus/parallel.hpp"
#include "docfocus/rng.hpp"
#include "docfocus/taskgen.hpp"

namespace docfocus {

namespace fs = std::filesystem;
using nlohmann::json;

std::size_t page_word_count(const PageRecord& page) {
  std::string text;
  const std::vector<TextBox>& units = page.paragraphs.empty() ? page.lines : page.paragraphs;
  for (const TextBox& b : units) {
    text += b.content;
    text += '\n';
  }
  return metrics::tokenize(text, metrics::token_mode(text, "")).size();
}

namespace {

std::vector<const PageRecord*> shuffled(std::vector<const PageRecord*> pages, std::uint64_t seed,
                                        std::string_view stream) {
  Rng rng(derive_seed(seed, stream));
  rng.shuffle(pages);
  return pages;
}

std::vector<const PageRecord*> take(const std::vector<const PageRecord*>& pool, std::size_t n,
                                    std::string_view what) {
  if (pool.size() < n) {
    fail(ErrorCode::insufficient_corpus,
         fmt::format("{} needs {} pages, corpus offers {}", what, n, pool.size()));
  }
  return {pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n)};
}

// Runs one generator per item in parallel and keeps the successes in item
// order. Only data-shaped failures are skipped.
template <typename Item, typename Gen>
std::vector<ConversationSample> generate_each(const std::vector<Item>& items, std::size_t workers,
                                              Gen&& gen) {
  std::vector<std::optional<ConversationSample>> slots(items.size());
  parallel_for(items.size(), workers, [&](std::size_t i) {
    try {
      ConversationSample s = gen(items[i], i);
      serialize_conversation(s);
      slots[i] = std::move(s);
    } catch (const Error& e) {
      if (!is_sample_skip(e.code())) throw;
    }
  });
  std::vector<ConversationSample> out;
  for (auto& s : slots) {
    if (s) out.push_back(std::move(*s));
  }
  return out;
}

void rename(std::vector<ConversationSample>& samples, std::string_view split) {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    samples[i].sample_id = fmt::format("{}-{:04d}", split, i);
  }
}

std::string nfc_line(const json& j) { return j.dump(-1, ' ', false, json::error_handler_t::strict); }

}  // namespace

std::vector<BenchmarkSplit> build_benchmark(const Corpus& corpus, const BenchmarkConfig& config,
                                            std::uint64_t seed, Annotator& annotator,
                                            const fs::path& image_dir,
                                            const std::string& image_prefix) {
  config.scale.validate();
  std::vector<const PageRecord*> en_pool;
  std::vector<const PageRecord*> zh_pool;
  std::vector<const PageRecord*> all;
  for (const PageRecord& p : corpus.pages()) {
    all.push_back(&p);
    if (page_word_count(p) <= config.min_words) continue;
    if (p.language == Language::en) en_pool.push_back(&p);
    if (p.language == Language::zh) zh_pool.push_back(&p);
  }
  const auto en = take(shuffled(en_pool, seed, "bench/en_page"), config.en_pages, "en_page");
  const auto zh = take(shuffled(zh_pool, seed, "bench/zh_page"), config.zh_pages, "zh_page");
  std::vector<const PageRecord*> dense = en;
  dense.insert(dense.end(), zh.begin(), zh.end());

  const std::size_t workers = config.workers;
  std::vector<BenchmarkSplit> splits;
  auto add = [&](std::string_view name, std::vector<ConversationSample> samples) {
    rename(samples, name);
    splits.push_back({std::string(name), std::move(samples)});
  };
  auto page_rng = [&](std::string_view split, const PageRecord& p) {
    return Rng(derive_seed(seed, fmt::format("bench/{}/{}", split, p.page_id)));
  };

  add("en_page", generate_each(en, workers, [](const PageRecord* p, std::size_t) {
        return gen_foreground_ocr(*p, ForegroundPrompt::full_page);
      }));
  add("zh_page", generate_each(zh, workers, [](const PageRecord* p, std::size_t) {
        return gen_foreground_ocr(*p, ForegroundPrompt::full_page);
      }));

  fs::create_directories(image_dir);
  add("color", generate_each(dense, workers, [&](const PageRecord* p, std::size_t) {
        Rng rng = page_rng("color", *p);
        HybridResult h = synthesize_hybrid(*p, read_png(p->image_path()), nullptr, nullptr, true, rng);
        const std::string file = "color_" + p->page_id + ".png";
        write_png(h.image, image_dir / file);
        h.page.composited_image_ref = image_prefix + file;
        return gen_color_ocr(h.page, rng);
      }));
  add("region", generate_each(dense, workers, [&](const PageRecord* p, std::size_t) {
        Rng rng = page_rng("region", *p);
        return gen_region_ocr(*p, rng, 1);
      }));
  add("line", generate_each(dense, workers, [&](const PageRecord* p, std::size_t) {
        Rng rng = page_rng("line", *p);
        return gen_line_ocr(*p, rng, 1);
      }));
  // Annotator calls run sequentially; external annotators need not be
  // thread-safe.
  add("translation", generate_each(dense, 1, [&](const PageRecord* p, std::size_t) {
        Rng rng = page_rng("translation", *p);
        return gen_region_annotation(*p, annotator, AnnotationTask::translate, rng);
      }));
  add("summary", generate_each(dense, 1, [&](const PageRecord* p, std::size_t) {
        Rng rng = page_rng("summary", *p);
        return gen_region_annotation(*p, annotator, AnnotationTask::summarize, rng);
      }));

  const auto caption_pages = take(shuffled(all, seed, "bench/caption"), config.caption_pages, "caption");
  std::vector<const NaturalImageRecord*> naturals;
  for (const NaturalImageRecord& n : corpus.naturals()) naturals.push_back(&n);
  Rng natural_rng(derive_seed(seed, "bench/caption/naturals"));
  natural_rng.shuffle(naturals);
  if (naturals.size() < config.caption_pages) {
    fail(ErrorCode::insufficient_corpus,
         fmt::format("caption needs {} natural images, corpus offers {}", config.caption_pages,
                     naturals.size()));
  }
  add("caption", generate_each(caption_pages, workers, [&](const PageRecord* p, std::size_t i) {
        Rng rng = page_rng("caption", *p);
        const NaturalImageRecord& n = *naturals[i];
        const Image natural_image = read_png(n.image_path());
        HybridResult h = synthesize_hybrid(*p, read_png(p->image_path()), &n, &natural_image, false,
                                           rng, config.scale);
        const std::string file = "caption_" + p->page_id + ".png";
        write_png(h.image, image_dir / file);
        h.page.composited_image_ref = image_prefix + file;
        return gen_figure_caption(h.page);
      }));

  std::vector<const PageRecord*> bundle_pool;
  for (const PageRecord* p : all) {
    if (!addressable_paragraphs(*p).empty()) bundle_pool.push_back(p);
  }
  if (bundle_pool.size() < config.bundle_pages) {
    fail(ErrorCode::insufficient_corpus,
         fmt::format("multi-page bundles need {} pages, corpus offers {}", config.bundle_pages,
                     bundle_pool.size()));
  }
  auto bundles = [&](std::string_view split, std::size_t count) {
    std::vector<std::vector<const PageRecord*>> out;
    Rng rng(derive_seed(seed, fmt::format("bench/{}/bundles", split)));
    for (std::size_t b = 0; b < count; ++b) {
      std::vector<const PageRecord*> bundle;
      for (std::size_t i : rng.sample_indices(bundle_pool.size(), config.bundle_pages)) {
        bundle.push_back(bundle_pool[i]);
      }
      out.push_back(std::move(bundle));
    }
    return out;
  };
  add("multipage_ocr",
      generate_each(bundles("multipage_ocr", config.multipage_bundles), workers,
                    [&](const std::vector<const PageRecord*>& b, std::size_t i) {
                      Rng rng(derive_seed(seed, fmt::format("bench/multipage_ocr/{}", i)));
                      return gen_multipage_region_ocr(b, rng);
                    }));
  add("crosspage_vqa",
      generate_each(bundles("crosspage_vqa", config.crosspage_bundles), workers,
                    [&](const std::vector<const PageRecord*>& b, std::size_t i) {
                      Rng rng(derive_seed(seed, fmt::format("bench/crosspage_vqa/{}", i)));
                      return gen_crosspage_vqa(b, rng);
                    }));
  return splits;
}

json write_benchmark(const std::vector<BenchmarkSplit>& splits, const fs::path& dir) {
  fs::create_directories(dir);
  json manifest = json::object();
  for (const BenchmarkSplit& split : splits) {
    std::string body;
    for (const ConversationSample& s : split.samples) body += nfc_line(to_json(s)) + "\n";
    std::ofstream out(dir / (split.name + ".jsonl"), std::ios::binary);
    out << body;
    if (!out) fail(ErrorCode::image_io, "cannot write split " + split.name);
    manifest[split.name] = {{"samples", split.samples.size()}, {"digest", sha256_hex(body)}};
  }
  std::ofstream out(dir / "manifest.json", std::ios::binary);
  out << manifest.dump(2) << "\n";
  return manifest;
}

std::vector<BenchmarkSplit> read_benchmark(const fs::path& dir) {
  std::vector<BenchmarkSplit> out;
  for (std::string_view name : kSplitNames) {
    const fs::path path = dir / (std::string(name) + ".jsonl");
    if (!fs::exists(path)) continue;
    BenchmarkSplit split{std::string(name), {}};
    for (const json& j : read_records(path)) split.samples.push_back(sample_from_json(j));
    out.push_back(std::move(split));
  }
  if (out.empty()) fail(ErrorCode::not_found, "no benchmark splits in " + dir.string());
  return out;
}

std::vector<json> gold_predictions(const std::vector<BenchmarkSplit>& splits) {
  std::vector<json> out;
  for (const BenchmarkSplit& split : splits) {
    for (const ConversationSample& s : split.samples) {
      out.push_back({{"id", s.sample_id}, {"prediction", s.ground_truth}});
    }
  }
  return out;
}

PredictionFile read_predictions(const fs::path& path) {
  PredictionFile out;
  for (const json& j : read_records(path)) {
    try {
      out[j.at("id").get<std::string>()] = j.at("prediction").get<std::string>();
    } catch (const json::exception& e) {
      fail(ErrorCode::schema_violation, std::string("prediction record: ") + e.what());
    }
  }
  return out;
}

namespace {

enum class Layout { ocr, translation, summary, caption, multipage, vqa };

Layout layout_of(std::string_view split) {
  if (split == "translation") return Layout::translation;
  if (split == "summary") return Layout::summary;
  if (split == "caption") return Layout::caption;
  if (split == "multipage_ocr") return Layout::multipage;
  if (split == "crosspage_vqa") return Layout::vqa;
  return Layout::ocr;
}

struct Column {
  std::string_view header;
  std::optional<double> MetricReport::*field;
};

std::vector<Column> columns(Layout layout) {
  using R = MetricReport;
  switch (layout) {
    case Layout::ocr:
      return {{"Edit Distance", &R::edit_distance}, {"F1-score", &R::f1},
              {"Precision", &R::precision},        {"Recall", &R::recall},
              {"BLEU", &R::bleu},                  {"METEOR", &R::meteor}};
    case Layout::translation: return {{"BLEU", &R::bleu}, {"METEOR", &R::meteor}};
    case Layout::summary:
      return {{"ROUGE-L R", &R::rouge_l_r}, {"ROUGE-L P", &R::rouge_l_p}, {"ROUGE-L F", &R::rouge_l_f}};
    case Layout::caption: return {{"METEOR", &R::meteor}, {"ROUGE-L F", &R::rouge_l_f}};
    case Layout::multipage:
      return {{"Edit Distance", &R::edit_distance}, {"F1-score", &R::f1}, {"BLEU", &R::bleu},
              {"METEOR", &R::meteor}};
    case Layout::vqa: return {{"Accuracy", &R::accuracy}};
  }
  return {};
}

constexpr Layout kLayoutOrder[] = {Layout::ocr,     Layout::translation, Layout::summary,
                                   Layout::caption, Layout::multipage,   Layout::vqa};

struct PairScores {
  double edit = 0, precision = 0, recall = 0, f1 = 0, meteor = 0, rr = 0, rp = 0, rf = 0;
  metrics::BleuStats bleu;
};

double mean(const std::vector<PairScores>& v, double PairScores::*f) {
  double sum = 0;
  for (const PairScores& s : v) sum += s.*f;
  return v.empty() ? 0.0 : sum / static_cast<double>(v.size());
}

}  // namespace

MetricReport evaluate(const BenchmarkSplit& split, const PredictionFile& predictions,
                      std::size_t workers) {
  MetricReport report;
  report.split = split.name;
  std::vector<const ConversationSample*> samples;
  for (const ConversationSample& s : split.samples) samples.push_back(&s);
  std::sort(samples.begin(), samples.end(), [](const auto* a, const auto* b) {
    return a->sample_id < b->sample_id;
  });
  std::vector<metrics::ScorePair> pairs;
  std::size_t overlap = 0;
  for (const ConversationSample* s : samples) {
    auto it = predictions.find(s->sample_id);
    if (it == predictions.end()) {
      ++report.missing;
      pairs.push_back({"", s->ground_truth});
    } else {
      ++overlap;
      pairs.push_back({it->second, s->ground_truth});
    }
  }
  if (overlap == 0) fail(ErrorCode::no_overlap, "no prediction matches split " + split.name);
  report.samples = pairs.size();

  const Layout layout = layout_of(split.name);
  if (layout == Layout::vqa) {
    report.accuracy = metrics::vqa_accuracy(pairs);
    return report;
  }
  std::vector<PairScores> scores(pairs.size());
  parallel_for(pairs.size(), workers, [&](std::size_t i) {
    PairScores& s = scores[i];
    const metrics::ScorePair& p = pairs[i];
    switch (layout) {
      case Layout::ocr:
      case Layout::multipage: {
        s.edit = metrics::norm_edit_distance(p);
        const auto prf = metrics::token_f1(p);
        s.precision = prf.precision;
        s.recall = prf.recall;
        s.f1 = prf.f1;
        s.bleu = metrics::bleu_stats(p);
        s.meteor = metrics::meteor_lite(p);
        break;
      }
      case Layout::translation:
        s.bleu = metrics::bleu_stats(p);
        s.meteor = metrics::meteor_lite(p);
        break;
      case Layout::summary:
      case Layout::caption: {
        const auto r = metrics::rouge_l(p);
        s.rr = r.recall;
        s.rp = r.precision;
        s.rf = r.f;
        if (layout == Layout::caption) s.meteor = metrics::meteor_lite(p);
        break;
      }
      case Layout::vqa: break;
    }
  });
  metrics::BleuStats bleu_total;
  for (const PairScores& s : scores) bleu_total += s.bleu;
  switch (layout) {
    case Layout::ocr:
    case Layout::multipage:
      report.edit_distance = mean(scores, &PairScores::edit);
      report.f1 = mean(scores, &PairScores::f1);
      report.precision = mean(scores, &PairScores::precision);
      report.recall = mean(scores, &PairScores::recall);
      report.bleu = metrics::bleu_from_stats(bleu_total);
      report.meteor = mean(scores, &PairScores::meteor);
      break;
    case Layout::translation:
      report.bleu = metrics::bleu_from_stats(bleu_total);
      report.meteor = mean(scores, &PairScores::meteor);
      break;
    case Layout::summary:
      report.rouge_l_r = mean(scores, &PairScores::rr);
      report.rouge_l_p = mean(scores, &PairScores::rp);
      report.rouge_l_f = mean(scores, &PairScores::rf);
      break;
    case Layout::caption:
      report.meteor = mean(scores, &PairScores::meteor);
      report.rouge_l_f = mean(scores, &PairScores::rf);
      break;
    case Layout::vqa: break;
  }
  return report;
}

namespace {

const std::vector<std::pair<std::string_view, std::optional<double> MetricReport::*>>& json_fields() {
  using R = MetricReport;
  static const std::vector<std::pair<std::string_view, std::optional<double> R::*>> kFields = {
      {"edit_distance", &R::edit_distance}, {"f1", &R::f1},
      {"precision", &R::precision},         {"recall", &R::recall},
      {"bleu", &R::bleu},                   {"meteor", &R::meteor},
      {"rouge_l_r", &R::rouge_l_r},         {"rouge_l_p", &R::rouge_l_p},
      {"rouge_l_f", &R::rouge_l_f},         {"accuracy", &R::accuracy}};
  return kFields;
}

std::string table(Layout layout, const std::vector<const MetricReport*>& rows) {
  const std::vector<Column> cols = columns(layout);
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header{"Split"};
  for (const Column& c : cols) header.emplace_back(c.header);
  cells.push_back(header);
  for (const MetricReport* r : rows) {
    std::vector<std::string> row{r->split};
    for (const Column& c : cols) {
      const auto& v = r->*(c.field);
      row.push_back(v ? fmt::format("{:.3f}", *v) : "-");
    }
    cells.push_back(std::move(row));
  }
  std::vector<std::size_t> width(header.size(), 3);
  for (const auto& row : cells) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::string out;
  auto emit = [&](const std::vector<std::string>& row) {
    out += '|';
    for (std::size_t i = 0; i < row.size(); ++i) out += fmt::format(" {:<{}} |", row[i], width[i]);
    out += '\n';
  };
  emit(cells.front());
  out += '|';
  for (std::size_t w : width) out += std::string(w + 2, '-') + '|';
  out += '\n';
  for (std::size_t r = 1; r < cells.size(); ++r) emit(cells[r]);
  return out;
}

}  // namespace

std::string render_markdown(const std::vector<MetricReport>& reports) {
  if (reports.empty()) fail(ErrorCode::invalid_argument, "render_report needs at least one report");
  std::string out;
  for (Layout layout : kLayoutOrder) {
    std::vector<const MetricReport*> rows;
    for (const MetricReport& r : reports) {
      if (layout_of(r.split) == layout) rows.push_back(&r);
    }
    if (rows.empty()) continue;
    if (!out.empty()) out += '\n';
    out += table(layout, rows);
  }
  return out;
}

RenderedReport render_report(const std::vector<MetricReport>& reports) {
  RenderedReport out;
  out.markdown = render_markdown(reports);
  json arr = json::array();
  for (const MetricReport& r : reports) {
    json m = json::object();
    for (const auto& [name, field] : json_fields()) {
      const auto& v = r.*field;
      m[std::string(name)] = v ? json(*v) : json(nullptr);
    }
    arr.push_back({{"split", r.split}, {"samples", r.samples}, {"missing", r.missing}, {"metrics", m}});
  }
  out.json = {{"reports", arr}};
  return out;
}

std::vector<MetricReport> reports_from_json(const json& j) {
  try {
    std::vector<MetricReport> out;
    for (const json& r : j.at("reports")) {
      MetricReport m;
      m.split = r.at("split").get<std::string>();
      m.samples = r.at("samples").get<std::size_t>();
      m.missing = r.at("missing").get<std::size_t>();
      const json& metrics = r.at("metrics");
      for (const auto& [name, field] : json_fields()) {
        auto it = metrics.find(std::string(name));
        if (it != metrics.end() && !it->is_null()) m.*field = it->get<double>();
      }
      out.push_back(std::move(m));
    }
    return out;
  } catch (const json::exception& e) {
    fail(ErrorCode::schema_violation, std::string("report: ") + e.what());
  }
}

}  // namespace docfocus
