// Copyright 2026 The docfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include "docfocus/pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>

#include <fmt/format.h>

#include "docfocus/digest.hpp"
#include "docfocus/error.hpp"
#include "docfocus/image.hpp"
#include "docfocus/mixer.hpp"
#include "docfocus/parallel.hpp"
#include "docfocus/rng.hpp"
#include "docfocus/taskgen.hpp"

namespace docfocus {

namespace fs = std::filesystem;
using nlohmann::json;

EnvLookup process_env() {
  return [](const std::string& name) -> std::optional<std::string> {
    const char* v = std::getenv(name.c_str());
    if (v == nullptr) return std::nullopt;
    return std::string(v);
  };
}

namespace {

fs::path resolve(const fs::path& base, const fs::path& p) {
  return p.is_absolute() ? p : base / p;
}

std::uint64_t parse_u64(const std::string& s, std::string_view what) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(s, &used, 10);
    if (used != s.size() || s.starts_with('-')) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::invalid_config, fmt::format("{} must be a non-negative integer, got '{}'", what, s));
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    fail(ErrorCode::invalid_config, fmt::format("config field '{}' has the wrong type", key));
  }
}

void write_text(const fs::path& path, std::string_view body) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << body;
  if (!out) fail(ErrorCode::image_io, "cannot write " + path.string());
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

void check_tolerance(std::size_t skipped, std::size_t attempted, double tolerance,
                     ErrorCode code, std::string_view what) {
  if (attempted == 0) return;
  if (static_cast<double>(skipped) > tolerance * static_cast<double>(attempted)) {
    fail(code, fmt::format("{}: {} of {} items failed, above the skip tolerance of {}", what, skipped,
                           attempted, tolerance));
  }
}

std::string rejection_source(const RejectedRecord& r) {
  return fs::path(r.source).filename().string();
}

}  // namespace

void validate(const PipelineConfig& c) {
  try {
    c.scale.validate();
  } catch (const Error& e) {
    fail(ErrorCode::invalid_config, e.what());
  }
  if (c.workers == 0) fail(ErrorCode::invalid_config, "workers must be at least 1");
  if (!(c.skip_tolerance >= 0.0 && c.skip_tolerance <= 1.0)) {
    fail(ErrorCode::invalid_config, "skip_tolerance must lie in [0,1]");
  }
  if (!(c.recipe_scale > 0.0)) fail(ErrorCode::invalid_config, "recipe_scale must be positive");
  if (c.gen_turns == 0) fail(ErrorCode::invalid_config, "gen.turns must be at least 1");
  if (c.bench.bundle_pages == 0 || c.bench.bundle_pages > kMaxBundlePages) {
    fail(ErrorCode::invalid_config, fmt::format("bench.bundle_pages must lie in [1,{}]", kMaxBundlePages));
  }
  if (c.annotator && c.annotator->command.empty()) {
    fail(ErrorCode::invalid_config, "annotator.command is empty");
  }
}

PipelineConfig parse_config(const json& j, const fs::path& base_dir, const EnvLookup& env) {
  if (!j.is_object()) fail(ErrorCode::invalid_config, "config must be a JSON object");
  PipelineConfig c;
  const json corpus = j.value("corpus", json::object());
  c.pages = resolve(base_dir, get_or<std::string>(corpus, "pages", c.pages.string()));
  c.naturals = resolve(base_dir, get_or<std::string>(corpus, "naturals", c.naturals.string()));
  c.layouts = resolve(base_dir, get_or<std::string>(corpus, "layouts", c.layouts.string()));
  c.out = resolve(base_dir, get_or<std::string>(j, "out", c.out.string()));
  c.seed = get_or<std::uint64_t>(j, "seed", c.seed);
  c.workers = get_or<std::size_t>(j, "workers", c.workers);
  c.skip_tolerance = get_or<double>(j, "skip_tolerance", c.skip_tolerance);
  if (auto it = j.find("scale"); it != j.end()) {
    c.scale.alpha = get_or<double>(*it, "alpha", c.scale.alpha);
    c.scale.beta = get_or<double>(*it, "beta", c.scale.beta);
    c.scale.eta = get_or<double>(*it, "eta", c.scale.eta);
    c.scale.gamma = get_or<double>(*it, "gamma", c.scale.gamma);
  }
  if (auto it = j.find("recipe"); it != j.end() && !it->is_null()) {
    c.recipe = resolve(base_dir, get_or<std::string>(j, "recipe", ""));
  }
  c.recipe_scale = get_or<double>(j, "recipe_scale", c.recipe_scale);
  c.sft_per_stream = get_or<std::size_t>(j, "sft_per_stream", c.sft_per_stream);
  if (auto it = j.find("gen"); it != j.end()) {
    c.gen_turns = get_or<std::size_t>(*it, "turns", c.gen_turns);
    c.gen_bundles = get_or<std::size_t>(*it, "bundles", c.gen_bundles);
  }
  if (auto it = j.find("annotator"); it != j.end() && !it->is_null()) {
    CommandAnnotatorOptions a;
    a.command = get_or<std::string>(*it, "command", "");
    a.timeout = std::chrono::milliseconds(get_or<long long>(*it, "timeout_ms", a.timeout.count()));
    a.retries = get_or<int>(*it, "retries", a.retries);
    c.annotator = a;
  }
  if (auto it = j.find("bench"); it != j.end()) {
    BenchmarkConfig& b = c.bench;
    b.en_pages = get_or<std::size_t>(*it, "en_pages", b.en_pages);
    b.zh_pages = get_or<std::size_t>(*it, "zh_pages", b.zh_pages);
    b.caption_pages = get_or<std::size_t>(*it, "caption_pages", b.caption_pages);
    b.multipage_bundles = get_or<std::size_t>(*it, "multipage_bundles", b.multipage_bundles);
    b.crosspage_bundles = get_or<std::size_t>(*it, "crosspage_bundles", b.crosspage_bundles);
    b.bundle_pages = get_or<std::size_t>(*it, "bundle_pages", b.bundle_pages);
    b.min_words = get_or<std::size_t>(*it, "min_words", b.min_words);
  }

  if (auto v = env("DOCFOCUS_SEED")) c.seed = parse_u64(*v, "DOCFOCUS_SEED");
  if (auto v = env("DOCFOCUS_WORKERS")) c.workers = parse_u64(*v, "DOCFOCUS_WORKERS");
  if (auto v = env("DOCFOCUS_OUT")) c.out = *v;
  if (auto v = env("DOCFOCUS_ANNOTATOR")) {
    if (v->empty()) {
      c.annotator.reset();
    } else {
      CommandAnnotatorOptions a = c.annotator.value_or(CommandAnnotatorOptions{});
      a.command = *v;
      c.annotator = a;
    }
  }
  c.bench.scale = c.scale;
  c.bench.workers = c.workers;
  validate(c);
  return c;
}

PipelineConfig load_config(const std::optional<fs::path>& path, const EnvLookup& env) {
  if (!path) return parse_config(json::object(), fs::path("."), env);
  std::ifstream in(*path, std::ios::binary);
  if (!in) fail(ErrorCode::invalid_config, "cannot open config " + path->string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorCode::invalid_config, fmt::format("{}: {}", path->string(), e.what()));
  }
  return parse_config(j, path->has_parent_path() ? path->parent_path() : fs::path("."), env);
}

Corpus load_corpus(const PipelineConfig& config, std::vector<RejectedRecord>* rejected) {
  if (!fs::exists(config.pages)) fail(ErrorCode::not_found, "page records missing: " + config.pages.string());
  Corpus corpus;
  std::vector<RejectedRecord> pages_rejected = corpus.load_pages(config.pages);
  check_tolerance(pages_rejected.size(), pages_rejected.size() + corpus.pages().size(),
                  config.skip_tolerance, ErrorCode::insufficient_data, "page ingestion");
  std::vector<RejectedRecord> all = pages_rejected;
  if (fs::exists(config.naturals)) {
    auto r = corpus.load_naturals(config.naturals);
    all.insert(all.end(), r.begin(), r.end());
  }
  if (fs::exists(config.layouts)) {
    auto r = corpus.load_layouts(config.layouts);
    all.insert(all.end(), r.begin(), r.end());
  }
  if (rejected) *rejected = std::move(all);
  return corpus;
}

std::unique_ptr<Annotator> make_annotator(const PipelineConfig& config) {
  if (config.annotator) return std::make_unique<CommandAnnotator>(*config.annotator);
  return std::make_unique<OfflineAnnotator>();
}

json run_ingest(const PipelineConfig& config) {
  std::vector<RejectedRecord> rejected;
  const Corpus corpus = load_corpus(config, &rejected);
  json langs = json::object();
  std::size_t paragraphs = 0;
  std::size_t lines = 0;
  for (const PageRecord& p : corpus.pages()) {
    const std::string lang(to_string(p.language));
    langs[lang] = langs.value(lang, 0) + 1;
    paragraphs += p.paragraphs.size();
    lines += p.lines.size();
  }
  json rejects = json::array();
  for (const RejectedRecord& r : rejected) {
    rejects.push_back({{"source", rejection_source(r)}, {"reason", r.reason}});
  }
  json report = {{"pages", corpus.pages().size()},
                 {"languages", langs},
                 {"paragraphs", paragraphs},
                 {"lines", lines},
                 {"naturals", corpus.naturals().size()},
                 {"layouts", corpus.layouts().size()},
                 {"rejected", rejects}};
  write_json(config.out / "ingest" / "report.json", report);
  return report;
}

namespace {

struct SynthOutcome {
  std::optional<json> figure;
  std::optional<json> color;
  std::string figure_error;
  std::string color_error;
};

std::string file_digest_entry(const fs::path& root, const std::string& rel) {
  return sha256_file(root / rel);
}

}  // namespace

json run_synth(const PipelineConfig& config, std::optional<std::size_t> limit) {
  const Corpus corpus = load_corpus(config);
  const auto& pages = corpus.pages();
  const std::size_t n = std::min(pages.size(), limit.value_or(pages.size()));
  const auto& naturals = corpus.naturals();
  const fs::path dir = config.out / "hybrid";
  fs::create_directories(dir);

  std::vector<SynthOutcome> outcomes(n);
  parallel_for(n, config.workers, [&](std::size_t i) {
    const PageRecord& page = pages[i];
    const Image page_image = read_png(page.image_path());
    SynthOutcome& o = outcomes[i];
    if (!naturals.empty()) {
      Rng rng(derive_seed(config.seed, "synth/figure/" + page.page_id));
      const NaturalImageRecord& nat = naturals[rng.index(naturals.size())];
      try {
        const Image nat_image = read_png(nat.image_path());
        HybridResult h = synthesize_hybrid(page, page_image, &nat, &nat_image, false, rng, config.scale);
        h.page.composited_image_ref = "hybrid/" + page.page_id + ".figure.png";
        write_png(h.image, config.out / h.page.composited_image_ref);
        o.figure = to_json(h.page);
      } catch (const Error& e) {
        if (!is_sample_skip(e.code())) throw;
        o.figure_error = e.what();
      }
    }
    Rng rng(derive_seed(config.seed, "synth/color/" + page.page_id));
    try {
      HybridResult h = synthesize_hybrid(page, page_image, nullptr, nullptr, true, rng, config.scale);
      h.page.composited_image_ref = "hybrid/" + page.page_id + ".color.png";
      write_png(h.image, config.out / h.page.composited_image_ref);
      o.color = to_json(h.page);
    } catch (const Error& e) {
      if (!is_sample_skip(e.code())) throw;
      o.color_error = e.what();
    }
  });

  json figure_sidecars = json::array();
  json color_sidecars = json::array();
  json skipped = json::array();
  std::size_t figure_skips = 0;
  std::size_t color_skips = 0;
  json files = json::object();
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& id = pages[i].page_id;
    SynthOutcome& o = outcomes[i];
    if (o.figure) {
      const std::string rel = "hybrid/" + id + ".figure.json";
      write_json(config.out / rel, *o.figure);
      figure_sidecars.push_back(rel);
      files[(*o.figure)["image"].get<std::string>()] =
          file_digest_entry(config.out, (*o.figure)["image"].get<std::string>());
    } else if (!naturals.empty()) {
      ++figure_skips;
      skipped.push_back({{"page_id", id}, {"kind", "figure"}, {"reason", o.figure_error}});
    }
    if (o.color) {
      const std::string rel = "hybrid/" + id + ".color.json";
      write_json(config.out / rel, *o.color);
      color_sidecars.push_back(rel);
      files[(*o.color)["image"].get<std::string>()] =
          file_digest_entry(config.out, (*o.color)["image"].get<std::string>());
    } else {
      ++color_skips;
      skipped.push_back({{"page_id", id}, {"kind", "color"}, {"reason", o.color_error}});
    }
  }
  json manifest = {{"seed", config.seed},
                   {"pages", n},
                   {"figure", figure_sidecars},
                   {"color", color_sidecars},
                   {"skipped", skipped},
                   {"images", files}};
  write_json(dir / "manifest.json", manifest);
  if (!naturals.empty()) {
    check_tolerance(figure_skips, n, config.skip_tolerance, ErrorCode::placement_infeasible,
                    "figure synthesis");
  }
  check_tolerance(color_skips, n, config.skip_tolerance, ErrorCode::color_hybrid_infeasible,
                  "color synthesis");
  return manifest;
}

namespace {

struct Generated {
  std::vector<ConversationSample> samples;
  std::size_t attempted = 0;
  std::size_t skipped = 0;
};

// Runs gen(i) over [0, count) in blocks so that a limit stops early; output
// order is item order regardless of worker count.
template <typename Gen>
Generated collect(std::size_t count, std::size_t workers, std::optional<std::size_t> limit, Gen&& gen) {
  Generated out;
  const std::size_t want = limit.value_or(count);
  const std::size_t block = std::max<std::size_t>(64, workers * 8);
  for (std::size_t start = 0; start < count && out.samples.size() < want; start += block) {
    const std::size_t end = std::min(count, start + block);
    std::vector<std::optional<ConversationSample>> slots(end - start);
    parallel_for(end - start, workers, [&](std::size_t k) {
      try {
        ConversationSample s = gen(start + k);
        serialize_conversation(s);
        slots[k] = std::move(s);
      } catch (const Error& e) {
        if (!is_sample_skip(e.code())) throw;
      }
    });
    for (auto& s : slots) {
      if (out.samples.size() == want) break;
      ++out.attempted;
      if (s) {
        out.samples.push_back(std::move(*s));
      } else {
        ++out.skipped;
      }
    }
  }
  return out;
}

std::vector<HybridPage> load_hybrids(const PipelineConfig& config, const Corpus& corpus,
                                     const char* kind) {
  const fs::path manifest_path = config.out / "hybrid" / "manifest.json";
  if (!fs::exists(manifest_path)) {
    fail(ErrorCode::missing_source, "no hybrid pages; run synth first");
  }
  const json manifest = read_records(manifest_path).at(0);
  std::vector<HybridPage> out;
  for (const json& rel : manifest.at(kind)) {
    out.push_back(hybrid_from_json(read_records(config.out / rel.get<std::string>()).at(0), corpus));
  }
  return out;
}

std::vector<std::vector<const PageRecord*>> draw_bundles(const Corpus& corpus, std::size_t count,
                                                         std::size_t size, std::uint64_t seed,
                                                         std::string_view task) {
  std::vector<const PageRecord*> pool;
  for (const PageRecord& p : corpus.pages()) {
    if (!addressable_paragraphs(p).empty()) pool.push_back(&p);
  }
  const std::size_t k = std::min(size, pool.size());
  std::vector<std::vector<const PageRecord*>> out;
  if (k == 0) return out;
  Rng rng(derive_seed(seed, fmt::format("gen/{}/bundles", task)));
  for (std::size_t b = 0; b < count; ++b) {
    std::vector<const PageRecord*> bundle;
    for (std::size_t i : rng.sample_indices(pool.size(), k)) bundle.push_back(pool[i]);
    out.push_back(std::move(bundle));
  }
  return out;
}

Generated generate_task(const PipelineConfig& config, const Corpus& corpus, Task task,
                        std::optional<std::size_t> limit, Annotator& annotator) {
  const auto& pages = corpus.pages();
  const std::string name(to_string(task));
  auto page_rng = [&](const std::string& id) {
    return Rng(derive_seed(config.seed, fmt::format("gen/{}/{}", name, id)));
  };
  const std::size_t w = config.workers;
  switch (task) {
    case Task::foreground_ocr:
      return collect(pages.size(), w, limit, [&](std::size_t i) { return gen_foreground_ocr(pages[i]); });
    case Task::page_ocr:
      return collect(pages.size(), w, limit, [&](std::size_t i) { return gen_page_ocr(pages[i]); });
    case Task::page_markdown:
      return collect(pages.size(), w, limit, [&](std::size_t i) { return gen_page_markdown(pages[i]); });
    case Task::region_ocr:
      return collect(pages.size(), w, limit, [&](std::size_t i) {
        Rng rng = page_rng(pages[i].page_id);
        return gen_region_ocr(pages[i], rng, config.gen_turns);
      });
    case Task::line_ocr:
      return collect(pages.size(), w, limit, [&](std::size_t i) {
        Rng rng = page_rng(pages[i].page_id);
        return gen_line_ocr(pages[i], rng, config.gen_turns);
      });
    case Task::region_translation:
    case Task::region_summary: {
      const AnnotationTask kind =
          task == Task::region_translation ? AnnotationTask::translate : AnnotationTask::summarize;
      return collect(pages.size(), 1, limit, [&](std::size_t i) {
        Rng rng = page_rng(pages[i].page_id);
        return gen_region_annotation(pages[i], annotator, kind, rng);
      });
    }
    case Task::layout: {
      std::vector<std::pair<const PageRecord*, const LayoutRecord*>> items;
      for (const PageRecord& p : pages) {
        if (const LayoutRecord* l = corpus.find_layout(p.page_id)) items.emplace_back(&p, l);
      }
      return collect(items.size(), w, limit,
                     [&](std::size_t i) { return gen_layout(*items[i].first, *items[i].second); });
    }
    case Task::color_ocr: {
      const auto hybrids = load_hybrids(config, corpus, "color");
      return collect(hybrids.size(), w, limit, [&](std::size_t i) {
        Rng rng = page_rng(hybrids[i].base.page_id);
        return gen_color_ocr(hybrids[i], rng);
      });
    }
    case Task::figure_caption: {
      const auto hybrids = load_hybrids(config, corpus, "figure");
      return collect(hybrids.size(), w, limit, [&](std::size_t i) { return gen_figure_caption(hybrids[i]); });
    }
    case Task::infigure_chat: {
      const auto hybrids = load_hybrids(config, corpus, "figure");
      return collect(hybrids.size(), w, limit, [&](std::size_t i) {
        Rng rng = page_rng(hybrids[i].base.page_id);
        return gen_infigure_chat(hybrids[i], rng);
      });
    }
    case Task::multipage_region_ocr:
    case Task::crosspage_vqa: {
      const std::size_t count = config.gen_bundles > 0 ? config.gen_bundles : pages.size();
      const auto bundles = draw_bundles(corpus, count, config.bench.bundle_pages, config.seed, name);
      return collect(bundles.size(), w, limit, [&](std::size_t i) {
        Rng rng(derive_seed(config.seed, fmt::format("gen/{}/bundle/{}", name, i)));
        return task == Task::multipage_region_ocr ? gen_multipage_region_ocr(bundles[i], rng)
                                                  : gen_crosspage_vqa(bundles[i], rng);
      });
    }
  }
  fail(ErrorCode::invalid_argument, "unknown task");
}

// Bundles can repeat; later duplicates of an id are dropped.
void dedupe(std::vector<ConversationSample>& samples) {
  std::set<std::string> seen;
  std::erase_if(samples, [&](const ConversationSample& s) { return !seen.insert(s.sample_id).second; });
}

}  // namespace

json run_gen(const PipelineConfig& config, const std::vector<Task>& tasks,
             std::optional<std::size_t> limit) {
  const Corpus corpus = load_corpus(config);
  auto annotator = make_annotator(config);
  const fs::path dir = config.out / "gen";
  fs::create_directories(dir);
  const fs::path manifest_path = dir / "manifest.json";
  json manifest = fs::exists(manifest_path) ? read_records(manifest_path).at(0)
                                            : json{{"tasks", json::object()}};
  manifest["seed"] = config.seed;
  for (Task task : tasks) {
    Generated g = generate_task(config, corpus, task, limit, *annotator);
    dedupe(g.samples);
    std::vector<json> records;
    for (const ConversationSample& s : g.samples) records.push_back(to_json(s));
    const std::string body = to_jsonl(records);
    const std::string name(to_string(task));
    write_text(dir / (name + ".jsonl"), body);
    manifest["tasks"][name] = {{"samples", g.samples.size()},
                               {"attempted", g.attempted},
                               {"skipped", g.skipped},
                               {"digest", sha256_hex(body)}};
  }
  write_json(manifest_path, manifest);
  return manifest;
}

namespace {

std::optional<fs::path> default_stream_file(const fs::path& gen_dir, const std::string& stream) {
  if (parse_task(stream)) return gen_dir / (stream + ".jsonl");
  if (stream == "figure_caption_laion_coco") return gen_dir / "figure_caption.jsonl";
  if (stream == "layout_pseudo") return gen_dir / "layout.jsonl";
  return std::nullopt;
}

}  // namespace

json run_mix(const PipelineConfig& config) {
  Recipe recipe = default_recipe();
  fs::path recipe_base = ".";
  if (config.recipe) {
    recipe = recipe_from_json(read_records(*config.recipe).at(0));
    recipe_base = config.recipe->has_parent_path() ? config.recipe->parent_path() : fs::path(".");
  }
  if (config.recipe_scale != 1.0) recipe = scale_recipe(recipe, config.recipe_scale);

  SourceMap sources;
  for (const auto& [stream, target] : recipe.counts) {
    if (target == 0) continue;
    std::optional<fs::path> file;
    if (auto it = recipe.sources.find(stream); it != recipe.sources.end()) {
      file = resolve(recipe_base, it->second);
    } else {
      file = default_stream_file(config.out / "gen", stream);
    }
    if (!file || !fs::exists(*file)) continue;
    sources[stream] = read_records(*file);
  }
  MixResult pre = mix(sources, recipe, config.seed);
  const fs::path dir = config.out / "mix";
  write_text(dir / "dataset.jsonl", to_jsonl(pre.records));
  write_json(dir / "manifest.json", to_json(pre.manifest));

  const auto variants = recipe.variants.empty() ? default_prompt_variants() : recipe.variants;
  MixResult sft = sft_sample(sources, config.sft_per_stream, variants,
                             derive_seed(config.seed, "mix/sft"));
  write_text(dir / "sft.jsonl", to_jsonl(sft.records));
  write_json(dir / "sft_manifest.json", to_json(sft.manifest));
  return {{"pretrain", to_json(pre.manifest)}, {"sft", to_json(sft.manifest)}};
}

json run_bench_build(const PipelineConfig& config, bool gold) {
  const Corpus corpus = load_corpus(config);
  auto annotator = make_annotator(config);
  const fs::path dir = config.out / "bench";
  const auto splits =
      build_benchmark(corpus, config.bench, config.seed, *annotator, dir / "images", "bench/images/");
  json manifest = write_benchmark(splits, dir);
  if (gold) {
    const std::string body = to_jsonl(gold_predictions(splits));
    write_text(dir / "gold.jsonl", body);
  }
  return manifest;
}

RenderedReport run_bench_eval(const PipelineConfig& config, const fs::path& predictions,
                              const std::optional<std::string>& split) {
  if (split && std::find(kSplitNames.begin(), kSplitNames.end(), *split) == kSplitNames.end()) {
    fail(ErrorCode::invalid_argument, "unknown split " + *split);
  }
  const auto splits = read_benchmark(config.out / "bench");
  const PredictionFile preds = read_predictions(predictions);
  std::vector<MetricReport> reports;
  for (const BenchmarkSplit& s : splits) {
    if (split && s.name != *split) continue;
    if (!split) {
      const bool any = std::any_of(s.samples.begin(), s.samples.end(),
                                   [&](const ConversationSample& c) { return preds.count(c.sample_id) > 0; });
      if (!any) continue;
    }
    reports.push_back(evaluate(s, preds, config.workers));
  }
  if (reports.empty()) fail(ErrorCode::no_overlap, "predictions match no benchmark split");
  RenderedReport r = render_report(reports);
  write_json(config.out / "bench" / "report.json", r.json);
  return r;
}

json run_stats(const PipelineConfig& config) {
  const Corpus corpus = load_corpus(config);
  json langs = json::object();
  std::size_t dense = 0;
  std::size_t words = 0;
  std::size_t paragraphs = 0;
  std::size_t lines = 0;
  for (const PageRecord& p : corpus.pages()) {
    const std::string lang(to_string(p.language));
    langs[lang] = langs.value(lang, 0) + 1;
    const std::size_t wc = page_word_count(p);
    words += wc;
    if (wc > config.bench.min_words) ++dense;
    paragraphs += p.paragraphs.size();
    lines += p.lines.size();
  }
  json stats = {{"corpus",
                 {{"pages", corpus.pages().size()},
                  {"languages", langs},
                  {"dense_pages", dense},
                  {"words", words},
                  {"paragraphs", paragraphs},
                  {"lines", lines},
                  {"naturals", corpus.naturals().size()},
                  {"layouts", corpus.layouts().size()}}}};
  for (const char* part : {"gen", "mix", "bench"}) {
    const fs::path m = config.out / part / "manifest.json";
    if (fs::exists(m)) stats[part] = read_records(m).at(0);
  }
  write_json(config.out / "stats.json", stats);
  return stats;
}

}  // namespace docfocus
