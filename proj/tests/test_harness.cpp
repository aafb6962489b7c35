// Copyright 2026 The docfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <regex>
#include <sstream>

#include "docfocus/democorpus.hpp"
#include "docfocus/error.hpp"
#include "docfocus/harness.hpp"
#include "docfocus/metrics.hpp"
#include "docfocus/taskgen.hpp"
#include "docfocus/unicode.hpp"
#include "metric_oracles.hpp"
#include "support.hpp"

using namespace docfocus;
using docfocus::testing::TempDir;
namespace oracle = docfocus::testing::oracle;

namespace {

BenchmarkSplit split_of(std::string name, const std::vector<std::string>& truths) {
  BenchmarkSplit s{std::move(name), {}};
  for (std::size_t i = 0; i < truths.size(); ++i) {
    ConversationSample c;
    c.sample_id = s.name + "-" + std::to_string(i);
    c.task = Task::region_ocr;
    c.image_refs = {"p.png"};
    c.turns = {{Role::user, "q"}, {Role::assistant, truths[i]}};
    c.ground_truth = truths[i];
    s.samples.push_back(c);
  }
  return s;
}

PredictionFile preds_of(const BenchmarkSplit& s, const std::vector<std::string>& texts) {
  PredictionFile p;
  for (std::size_t i = 0; i < texts.size(); ++i) p[s.samples[i].sample_id] = texts[i];
  return p;
}

PredictionFile gold_of(const BenchmarkSplit& s) {
  PredictionFile p;
  for (const ConversationSample& c : s.samples) p[c.sample_id] = c.ground_truth;
  return p;
}

std::vector<std::string> header_cells(const std::string& markdown) {
  const std::string first = markdown.substr(0, markdown.find('\n'));
  std::vector<std::string> cells;
  std::stringstream ss(first);
  std::string cell;
  std::getline(ss, cell, '|');
  while (std::getline(ss, cell, '|')) {
    const auto b = cell.find_first_not_of(' ');
    const auto e = cell.find_last_not_of(' ');
    if (b != std::string::npos) cells.push_back(cell.substr(b, e - b + 1));
  }
  return cells;
}

struct SmallBench {
  TempDir dir{"bench"};
  Corpus corpus;
  BenchmarkConfig config;

  SmallBench() {
    DemoCorpusConfig dc;
    dc.en_pages = 8;
    dc.zh_pages = 7;
    dc.mixed_pages = 1;
    dc.naturals = 8;
    dc.seed = 3;
    const DemoCorpusFiles f = write_demo_corpus(dc, dir.path() / "corpus");
    corpus.load_pages(f.pages);
    corpus.load_naturals(f.naturals);
    corpus.load_layouts(f.layouts);
    config.en_pages = 4;
    config.zh_pages = 3;
    config.caption_pages = 5;
    config.multipage_bundles = 4;
    config.crosspage_bundles = 6;
    config.bundle_pages = 4;
  }

  std::vector<BenchmarkSplit> build(const std::string& sub, std::uint64_t seed) {
    OfflineAnnotator annotator;
    return build_benchmark(corpus, config, seed, annotator, dir.path() / sub, sub + "/");
  }
};

}  // namespace

TEST_CASE("gold predictions score perfectly") {
  const BenchmarkSplit s = split_of("region", {"hello world", "你好世界", "a b c"});
  const MetricReport r = evaluate(s, gold_of(s));
  CHECK(*r.edit_distance == 0.0);
  CHECK(*r.f1 == 1.0);
  CHECK(*r.precision == 1.0);
  CHECK(*r.recall == 1.0);
  CHECK(*r.bleu == doctest::Approx(1.0));
  CHECK(r.missing == 0);
  CHECK_FALSE(r.accuracy.has_value());
  CHECK_FALSE(r.rouge_l_f.has_value());

  const BenchmarkSplit v = split_of("crosspage_vqa", {"Page 1", "Page 8"});
  const MetricReport vr = evaluate(v, gold_of(v));
  CHECK(*vr.accuracy == 1.0);
  CHECK_FALSE(vr.edit_distance.has_value());
}

TEST_CASE("empty and missing predictions") {
  const BenchmarkSplit s = split_of("en_page", {"abc", "defg", "h"});
  const MetricReport r = evaluate(s, preds_of(s, {"", "", ""}));
  CHECK(*r.edit_distance == 1.0);
  CHECK(*r.f1 == 0.0);

  PredictionFile partial{{s.samples[0].sample_id, "abc"}};
  const MetricReport m = evaluate(s, partial);
  CHECK(m.missing == 2);
  CHECK(m.samples == 3);
  CHECK(*m.edit_distance == doctest::Approx(2.0 / 3.0));

  try {
    evaluate(s, PredictionFile{{"other", "x"}});
    FAIL("expected no_overlap");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::no_overlap);
  }
}

TEST_CASE("report equals per-pair aggregation") {
  const std::vector<std::string> refs{"the cat sat on the mat", "a b c d", "你好世界文档"};
  const std::vector<std::string> hyps{"the cat sat", "a c e", "你好世"};
  oracle::NgramCounts counts;
  double edit = 0, f1 = 0, p = 0, r = 0, meteor = 0, rr = 0, rp = 0, rf = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    edit += oracle::norm_edit(hyps[i], refs[i]) / 3;
    const oracle::Prf f = oracle::f1(hyps[i], refs[i]);
    f1 += f.f / 3;
    p += f.p / 3;
    r += f.r / 3;
    meteor += oracle::meteor(hyps[i], refs[i]) / 3;
    const oracle::Prf g = oracle::rouge(hyps[i], refs[i]);
    rr += g.r / 3;
    rp += g.p / 3;
    rf += g.f / 3;
    oracle::add_ngrams(counts, hyps[i], refs[i]);
  }
  const BenchmarkSplit ocr = split_of("region", refs);
  const MetricReport o = evaluate(ocr, preds_of(ocr, hyps));
  CHECK(*o.edit_distance == doctest::Approx(edit).epsilon(1e-12));
  CHECK(*o.f1 == doctest::Approx(f1).epsilon(1e-12));
  CHECK(*o.precision == doctest::Approx(p).epsilon(1e-12));
  CHECK(*o.recall == doctest::Approx(r).epsilon(1e-12));
  CHECK(*o.bleu == doctest::Approx(oracle::bleu(counts)).epsilon(1e-12));
  CHECK(*o.meteor == doctest::Approx(meteor).epsilon(1e-12));

  const BenchmarkSplit tr = split_of("translation", refs);
  const MetricReport t = evaluate(tr, preds_of(tr, hyps));
  CHECK(*t.bleu == doctest::Approx(oracle::bleu(counts)).epsilon(1e-12));
  CHECK_FALSE(t.edit_distance.has_value());

  const BenchmarkSplit su = split_of("summary", refs);
  const MetricReport s = evaluate(su, preds_of(su, hyps));
  CHECK(*s.rouge_l_r == doctest::Approx(rr).epsilon(1e-12));
  CHECK(*s.rouge_l_p == doctest::Approx(rp).epsilon(1e-12));
  CHECK(*s.rouge_l_f == doctest::Approx(rf).epsilon(1e-12));

  const BenchmarkSplit ca = split_of("caption", refs);
  const MetricReport c = evaluate(ca, preds_of(ca, hyps));
  CHECK(*c.meteor == doctest::Approx(meteor).epsilon(1e-12));
  CHECK(*c.rouge_l_f == doctest::Approx(rf).epsilon(1e-12));
  CHECK_FALSE(c.rouge_l_r.has_value());
}

TEST_CASE("evaluate ignores sample order") {
  std::mt19937_64 gen(12);
  std::vector<std::string> refs, hyps;
  for (int i = 0; i < 60; ++i) {
    refs.push_back(oracle::random_text(gen, 8));
    hyps.push_back(oracle::random_text(gen, 8));
  }
  BenchmarkSplit s = split_of("line", refs);
  const PredictionFile p = preds_of(s, hyps);
  const RenderedReport before = render_report({evaluate(s, p)});
  std::shuffle(s.samples.begin(), s.samples.end(), gen);
  const RenderedReport after = render_report({evaluate(s, p, 3)});
  CHECK(before.json == after.json);
}

TEST_CASE("rendered tables") {
  const BenchmarkSplit s = split_of("en_page", {"abc"});
  const MetricReport r = evaluate(s, gold_of(s));
  const std::string md = render_markdown({r});
  CHECK(header_cells(md) ==
        std::vector<std::string>{"Split", "Edit Distance", "F1-score", "Precision", "Recall", "BLEU", "METEOR"});
  CHECK(md.find("| en_page ") != std::string::npos);

  MetricReport partial = r;
  partial.bleu.reset();
  const std::string dash = render_markdown({partial});
  const std::string row = dash.substr(dash.find("| en_page"));
  CHECK(row.find(" - ") != std::string::npos);

  const BenchmarkSplit v = split_of("crosspage_vqa", {"Page 1"});
  const BenchmarkSplit t = split_of("translation", {"x y"});
  const std::vector<MetricReport> all{evaluate(v, gold_of(v)), r, evaluate(t, gold_of(t))};
  const RenderedReport rr = render_report(all);
  CHECK(rr.markdown.find("Edit Distance") < rr.markdown.find("BLEU"));
  CHECK(rr.markdown.find("en_page") < rr.markdown.find("translation"));
  CHECK(rr.markdown.find("translation") < rr.markdown.find("crosspage_vqa"));
  CHECK(render_markdown(reports_from_json(rr.json)) == rr.markdown);
  CHECK(render_markdown(reports_from_json(Json::parse(rr.json.dump()))) == rr.markdown);
  CHECK_THROWS_AS(render_markdown({}), Error);
}

TEST_CASE("small benchmark build") {
  SmallBench b;
  const std::vector<BenchmarkSplit> first = b.build("a", 5);
  const std::vector<BenchmarkSplit> second = b.build("b", 5);
  REQUIRE(first.size() == kSplitNames.size());
  std::map<std::string, std::size_t> sizes;
  for (const BenchmarkSplit& s : first) sizes[s.name] = s.samples.size();
  CHECK(sizes.at("en_page") == 4);
  CHECK(sizes.at("zh_page") == 3);
  CHECK(sizes.at("caption") == 5);
  CHECK(sizes.at("multipage_ocr") == 4);
  CHECK(sizes.at("crosspage_vqa") == 6);

  TempDir out("bench-out");
  const Json m1 = write_benchmark(first, out.path() / "a");
  const Json m2 = write_benchmark(second, out.path() / "b");
  // Image refs carry the directory prefix, so compare the splits with it stripped.
  for (const auto& name : kSplitNames) {
    std::ifstream fa(out.path() / "a" / (std::string(name) + ".jsonl"));
    std::ifstream fb(out.path() / "b" / (std::string(name) + ".jsonl"));
    std::string ta((std::istreambuf_iterator<char>(fa)), {});
    std::string tb((std::istreambuf_iterator<char>(fb)), {});
    for (std::size_t p = ta.find("\"a/"); p != std::string::npos; p = ta.find("\"a/", p)) ta.replace(p, 3, "\"b/");
    CHECK(ta == tb);
  }
  const std::vector<BenchmarkSplit> back = read_benchmark(out.path() / "a");
  REQUIRE(back.size() == first.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].name == first[i].name);
    CHECK(back[i].samples == first[i].samples);
  }

  for (const BenchmarkSplit& s : first) {
    const MetricReport r = evaluate(s, gold_of(s));
    if (r.edit_distance) CHECK(*r.edit_distance == 0.0);
    if (r.f1) CHECK(*r.f1 == 1.0);
    if (r.accuracy) CHECK(*r.accuracy == 1.0);
    if (r.rouge_l_f) CHECK(*r.rouge_l_f == doctest::Approx(1.0));
  }
  CHECK(gold_predictions(first).size() == [&] {
    std::size_t n = 0;
    for (const BenchmarkSplit& s : first) n += s.samples.size();
    return n;
  }());
}

TEST_CASE("crosspage answers match the argmax oracle") {
  SmallBench b;
  const std::vector<BenchmarkSplit> splits = b.build("c", 11);
  const BenchmarkSplit& vqa = *std::find_if(splits.begin(), splits.end(),
                                            [](const BenchmarkSplit& s) { return s.name == "crosspage_vqa"; });
  const std::regex entry(R"(Page (\d+): \((\d+),(\d+),(\d+),(\d+)\))");
  for (const ConversationSample& s : vqa.samples) {
    REQUIRE(s.image_refs.size() == b.config.bundle_pages);
    const std::string slot = extract_slots(Task::crosspage_vqa, s.turns[0].text).at("PAGES");
    std::vector<std::size_t> counts;
    for (auto it = std::sregex_iterator(slot.begin(), slot.end(), entry); it != std::sregex_iterator(); ++it) {
      const PageRecord* page = nullptr;
      for (const PageRecord& p : b.corpus.pages())
        if (p.image_ref == s.image_refs[counts.size()] ||
            std::filesystem::path(p.image_ref).filename() == std::filesystem::path(s.image_refs[counts.size()]).filename())
          page = &p;
      REQUIRE(page != nullptr);
      const NormBox box{std::stoi((*it)[2]), std::stoi((*it)[3]), std::stoi((*it)[4]), std::stoi((*it)[5])};
      std::size_t chars = 0, hits = 0;
      for (const TextBox& p : page->paragraphs)
        if (normalize(p.box, page->size) == box) {
          chars = unicode::char_count(p.content);
          ++hits;
        }
      REQUIRE(hits == 1);
      counts.push_back(chars);
    }
    REQUIRE(counts.size() == b.config.bundle_pages);
    const auto best = std::max_element(counts.begin(), counts.end());
    CHECK(std::count(counts.begin(), counts.end(), *best) == 1);
    CHECK(s.ground_truth == "Page " + std::to_string(best - counts.begin() + 1));
  }
}
